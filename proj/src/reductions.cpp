#include "polysync/reductions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "polysync/io.hpp"

namespace polysync {

namespace {

std::vector<std::string> split_names(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

StateSet names_to_set(const Automaton& a, const std::vector<std::string>& names) {
  StateSet s(a.n_states);
  for (const auto& n : names) {
    int q = a.state_index(n);
    if (q < 0) fail(Errc::parse, "dangling state name '" + n + "'");
    s.set(q);
  }
  return s;
}

void require_instance(const SetTransporterInstance& inst) {
  if (!inst.aut.is_deterministic() || !inst.aut.is_complete())
    fail(Errc::kind_violation, "instance automaton must be a complete deterministic semi-automaton");
  if (inst.source.none() || inst.target.none())
    fail(Errc::invalid_argument, "source and target sets must be nonempty");
}

}  // namespace

SetTransporterInstance parse_instance(std::string_view text) {
  std::string automaton_text;
  std::vector<std::string> source_names, target_names;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::string_view body = line.substr(i);
    if (body.starts_with("S:")) {
      for (auto& n : split_names(body.substr(2))) source_names.push_back(n);
    } else if (body.starts_with("T:")) {
      for (auto& n : split_names(body.substr(2))) target_names.push_back(n);
    } else {
      automaton_text += std::string(line);
      automaton_text += "\n";
    }
  }
  Automaton a = parse_automaton(automaton_text);
  SetTransporterInstance inst{a, names_to_set(a, source_names), names_to_set(a, target_names)};
  require_instance(inst);
  return inst;
}

std::string format_instance(const SetTransporterInstance& inst) {
  std::string out = format_automaton(inst.aut);
  out += "S:";
  for (auto q = inst.source.find_first(); q != StateSet::npos; q = inst.source.find_next(q))
    out += " " + inst.aut.state_names[q];
  out += "\nT:";
  for (auto q = inst.target.find_first(); q != StateSet::npos; q = inst.target.find_next(q))
    out += " " + inst.aut.state_names[q];
  out += "\n";
  return out;
}

SetTransporterInstance make_instance(Automaton aut, const std::vector<std::string>& source_names,
                                     const std::vector<std::string>& target_names) {
  SetTransporterInstance inst{std::move(aut), {}, {}};
  inst.source = names_to_set(inst.aut, source_names);
  inst.target = names_to_set(inst.aut, target_names);
  require_instance(inst);
  return inst;
}

std::optional<Word> set_transporter_bruteforce(const SetTransporterInstance& inst) {
  const Automaton& a = inst.aut;
  auto inside = [&](const StateSet& s) { return (s & ~inst.target).none(); };
  if (inside(inst.source)) return Word{};

  std::map<StateSet, std::pair<StateSet, int>> parent;
  std::set<StateSet> seen{inst.source};
  std::deque<StateSet> queue{inst.source};
  while (!queue.empty()) {
    StateSet cur = queue.front();
    queue.pop_front();
    for (int x = 0; x < a.alphabet.size(); ++x) {
      StateSet next = step_symbol(a, cur, x);
      if (seen.count(next)) continue;
      seen.insert(next);
      parent.emplace(next, std::make_pair(cur, x));
      if (inside(next)) {
        Word w;
        for (StateSet s = next; !(s == inst.source); s = parent.at(s).first)
          w.push_back(parent.at(s).second);
        std::reverse(w.begin(), w.end());
        return w;
      }
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

SetTransporterInstance disjointify(const SetTransporterInstance& inst) {
  require_instance(inst);
  if ((inst.source & ~inst.target).none())
    fail(Errc::invalid_argument,
         "source already inside target; the empty word answers this instance");
  const Automaton& a = inst.aut;
  const int extra = static_cast<int>(inst.source.count());
  Automaton d = new_automaton(a.kind, a.alphabet, a.n_states + extra, {});
  d.state_names = a.state_names;
  d.initial = a.initial;
  for (auto q = a.finals.find_first(); q != StateSet::npos; q = a.finals.find_next(q))
    d.finals.set(q);
  for (int q = 0; q < a.n_states; ++q)
    for (int x = 0; x < a.alphabet.size(); ++x)
      for (int t : a.successors(q, x)) d.add_transition(q, x, t);

  SetTransporterInstance out{Automaton{}, StateSet(a.n_states + extra), StateSet(a.n_states + extra)};
  int next = a.n_states;
  for (auto s = inst.source.find_first(); s != StateSet::npos; s = inst.source.find_next(s)) {
    d.state_names.push_back(fresh_name(d.state_names, a.state_names[s] + "'"));
    for (int x = 0; x < a.alphabet.size(); ++x)
      for (int t : a.successors(static_cast<int>(s), x)) d.add_transition(next, x, t);
    out.source.set(next);
    ++next;
  }
  d.validate();
  out.aut = std::move(d);
  for (auto t = inst.target.find_first(); t != StateSet::npos; t = inst.target.find_next(t))
    out.target.set(t);
  return out;
}

SetTransporterInstance intersection_to_settransporter(const std::vector<Automaton>& dfas) {
  if (dfas.empty()) fail(Errc::invalid_argument, "need at least one automaton");
  for (const auto& d : dfas) {
    if (!(d.alphabet == dfas[0].alphabet)) fail(Errc::alphabet_mismatch, "alphabets differ");
    if (!d.is_deterministic() || !d.is_complete() || !d.initial)
      fail(Errc::kind_violation, "intersection instance needs complete DFAs with initial states");
  }
  int total = 0;
  for (const auto& d : dfas) total += d.n_states;
  Automaton u = new_automaton(Kind::Dcsa, dfas[0].alphabet, total, {});
  SetTransporterInstance inst{Automaton{}, StateSet(total), StateSet(total)};
  int base = 0;
  for (size_t i = 0; i < dfas.size(); ++i) {
    const Automaton& d = dfas[i];
    for (int q = 0; q < d.n_states; ++q) {
      u.state_names[base + q] = "a" + std::to_string(i) + "_" + d.state_names[q];
      for (int x = 0; x < d.alphabet.size(); ++x) u.add_transition(base + q, x, base + d.dnext(q, x));
    }
    inst.source.set(base + *d.initial);
    for (auto q = d.finals.find_first(); q != StateSet::npos; q = d.finals.find_next(q))
      inst.target.set(base + static_cast<int>(q));
    base += d.n_states;
  }
  u.validate();
  inst.aut = std::move(u);
  return inst;
}

std::vector<Automaton> settransporter_to_intersection(const SetTransporterInstance& inst) {
  require_instance(inst);
  std::vector<Automaton> out;
  for (auto s = inst.source.find_first(); s != StateSet::npos; s = inst.source.find_next(s)) {
    Automaton a = inst.aut;
    a.kind = Kind::Dcsa;
    a.initial = static_cast<int>(s);
    a.finals = inst.target;
    out.push_back(std::move(a));
  }
  return out;
}

namespace {

Word repeat_word(const Word& w, int times) {
  Word out;
  out.reserve(w.size() * times);
  for (int i = 0; i < times; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

bool is_factor(const Word& needle, const Word& hay) {
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

bool is_prefix(const Word& needle, const Word& hay) {
  return needle.size() <= hay.size() && std::equal(needle.begin(), needle.end(), hay.begin());
}

}  // namespace

bool check_np_hard_criterion(const HardnessTriple& triple) {
  const Automaton& tail = triple.tail;
  if (!tail.initial) fail(Errc::invalid_argument, "tail automaton needs an initial state");
  if (is_empty(tail)) fail(Errc::empty_tail_language, "tail language is empty");

  // u not a factor of v*: any factor of length |u| sits inside a bounded
  // power of v.
  bool cond_u;
  if (triple.v.empty()) {
    cond_u = !triple.u.empty();
  } else {
    int reps = static_cast<int>((triple.u.size() + triple.v.size() - 1) / triple.v.size()) + 1;
    cond_u = !is_factor(triple.u, repeat_word(triple.v, reps));
  }

  // v not a factor of any word of U.
  Automaton factors = closure_automaton(tail, ClosureMode::factor);
  bool cond_v = !factors.accepts(triple.v);

  // no word of U is a prefix of v*.
  bool cond_p;
  if (triple.v.empty()) {
    cond_p = !tail.accepts(Word{});
  } else {
    Automaton prefixes =
        closure_automaton(word_star_automaton(tail.alphabet, triple.v), ClosureMode::prefix);
    Automaton dt = tail.is_deterministic() ? tail : determinize_partial(tail);
    cond_p = is_empty(product_intersection(prefixes, dt));
  }
  return cond_u && cond_v && cond_p;
}

Automaton build_hardness_gadget(const SetTransporterInstance& inst, const HardnessTriple& triple,
                                const Word& w) {
  require_instance(inst);
  if (inst.aut.alphabet.size() != 1)
    fail(Errc::kind_violation, "gadget construction takes a unary instance");
  if ((inst.source & inst.target).any())
    fail(Errc::invalid_argument, "gadget construction needs disjoint source and target");
  if (!check_np_hard_criterion(triple))
    fail(Errc::criterion_failure, "triple fails the hardness conditions");
  if (!triple.tail.accepts(w))
    fail(Errc::criterion_failure, "w is not in the tail language");
  const Word& u = triple.u;
  const Word& v = triple.v;
  if (u.empty() || v.empty()) fail(Errc::criterion_failure, "u and v must be nonempty");
  if (is_prefix(v, w)) fail(Errc::criterion_failure, "w must not have a prefix in v+");
  if (is_factor(v, w)) fail(Errc::criterion_failure, "w must not contain v as a factor");
  Word vrep = repeat_word(v, static_cast<int>(w.size() / v.size()) + 1);
  if (is_prefix(w, vrep)) fail(Errc::criterion_failure, "w must not be a prefix of v*");

  const Alphabet& sigma = triple.tail.alphabet;
  const Word block = repeat_word(v, static_cast<int>(u.size()));  // v^{|u|}
  const int n = static_cast<int>(block.size());
  const int nq = inst.aut.n_states;
  const int trap = n * nq;
  const int shat = static_cast<int>(inst.source.find_first());

  Automaton g = new_automaton(Kind::Dcsa, sigma, n * nq + 1, {});
  for (int i = 0; i < n; ++i)
    for (int q = 0; q < nq; ++q)
      g.state_names[i * nq + q] =
          i == 0 ? inst.aut.state_names[q] : inst.aut.state_names[q] + "#" + std::to_string(i);
  g.state_names[trap] = fresh_name(g.state_names, "trap");

  for (int i = 0; i < n; ++i)
    for (int q = 0; q < nq; ++q) {
      const int from = i * nq + q;
      for (int c = 0; c < sigma.size(); ++c) {
        int to;
        if (c == block[i]) {
          // letters of v^{|u|} advance the copy layers; a full block
          // simulates one unary step of the instance
          to = i + 1 < n ? (i + 1) * nq + q : inst.aut.dnext(q, 0);
        } else if (inst.source.test(q)) {
          to = q;
        } else if (inst.target.test(q)) {
          to = trap;
        } else {
          to = shat;
        }
        g.add_transition(from, c, to);
      }
    }
  for (int c = 0; c < sigma.size(); ++c) g.add_transition(trap, c, trap);
  g.validate();
  return g;
}

Automaton build_uvw_constraint(const Alphabet& alphabet, const Word& u, const Word& v,
                               const Word& w) {
  Automaton left = concat_pc(single_word_automaton(alphabet, u), word_star_automaton(alphabet, v));
  return concat_pc(left, single_word_automaton(alphabet, w));
}

std::string BatchReport::to_text() const {
  std::ostringstream out;
  out << "gadget equivalence batch\n";
  out << "triple: " << triple << "\n";
  out << "count: " << count << "  max-q: " << max_q << "  seed: " << seed << "\n";
  for (const auto& m : mismatches) out << m;
  out << "agreement " << agreements << "/" << count << "\n";
  return out.str();
}

BatchReport gadget_equivalence_batch(int count, int max_q, const Word& u, const Word& v,
                                     const Word& w, const Alphabet& alphabet, std::uint64_t seed) {
  if (count < 0) fail(Errc::invalid_argument, "negative count");
  if (count > 0 && max_q < 2) fail(Errc::invalid_argument, "max-q must be at least 2");

  HardnessTriple triple{u, v, single_word_automaton(alphabet, w)};
  if (!check_np_hard_criterion(triple))
    fail(Errc::criterion_failure, "triple fails the hardness conditions; refusing to run");

  BatchReport report;
  report.count = count;
  report.max_q = max_q;
  report.seed = seed;
  report.triple = "u=" + format_word(alphabet, u) + " v=" + format_word(alphabet, v) +
                  " w=" + format_word(alphabet, w);
  if (count == 0) return report;

  Automaton constraint = build_uvw_constraint(alphabet, u, v, w);
  std::mt19937_64 rng(seed);
  auto below = [&rng](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };

  for (int i = 0; i < count; ++i) {
    const int nq = 2 + below(max_q - 1);
    Automaton a = new_automaton(Kind::Dcsa, Alphabet{{"a"}}, nq, {});
    for (int q = 0; q < nq; ++q) a.add_transition(q, 0, below(nq));
    SetTransporterInstance inst{std::move(a), StateSet(nq), StateSet(nq)};
    do {
      inst.source.reset();
      inst.target.reset();
      for (int q = 0; q < nq; ++q) {
        switch (below(3)) {
          case 0: inst.source.set(q); break;
          case 1: inst.target.set(q); break;
          default: break;
        }
      }
    } while (inst.source.none() || inst.target.none());

    bool transports = set_transporter_bruteforce(inst).has_value();
    Automaton gadget = build_hardness_gadget(inst, triple, w);
    bool synchronizes = oracle(gadget, constraint).decision;
    if (transports == synchronizes) {
      ++report.agreements;
    } else {
      std::ostringstream m;
      m << "mismatch at instance " << i << ": transporter=" << (transports ? "yes" : "no")
        << " oracle=" << (synchronizes ? "yes" : "no") << "\n"
        << format_instance(inst);
      report.mismatches.push_back(m.str());
    }
  }
  return report;
}

namespace {

// v Sigma* as a complete DFA: a chain for v with a universal accepting loop
// at the end and a dead state off the chain.
Automaton word_prefix_universe(const Alphabet& alphabet, const Word& v) {
  const int n = static_cast<int>(v.size());
  Automaton a = new_automaton(Kind::Pdfa, alphabet, n + 2, {});
  for (int i = 0; i <= n; ++i) a.state_names[i] = "c" + std::to_string(i);
  a.state_names[n + 1] = "dead";
  a.initial = 0;
  a.finals.set(n);
  for (int i = 0; i < n; ++i)
    for (int x = 0; x < alphabet.size(); ++x)
      a.add_transition(i, x, x == v[i] ? i + 1 : n + 1);
  for (int x = 0; x < alphabet.size(); ++x) {
    a.add_transition(n, x, n);
    a.add_transition(n + 1, x, n + 1);
  }
  a.validate();
  return a;
}

// The unique accepting word of `a`, when the language is a singleton.
std::optional<Word> unique_word(const Automaton& a, int goal) {
  StateSet keep = reachable_states(a) & coaccessible_states(a);
  if (!keep.test(*a.initial)) return std::nullopt;
  Word u;
  StateSet visited(a.n_states);
  int cur = *a.initial;
  while (cur != goal) {
    if (visited.test(cur)) return std::nullopt;  // cycles: infinitely many words
    visited.set(cur);
    int sym = -1, tgt = -1, hits = 0;
    for (int x = 0; x < a.alphabet.size(); ++x) {
      int t = a.dnext(cur, x);
      if (t >= 0 && keep.test(t)) {
        ++hits;
        sym = x;
        tgt = t;
      }
    }
    if (hits != 1) return std::nullopt;  // branching: several words
    u.push_back(sym);
    cur = tgt;
  }
  return u;
}

}  // namespace

Classification classify_constraint(const Automaton& constraint) {
  bool poly = false;
  try {
    poly = is_polycyclic(constraint);
  } catch (const Error&) {
  }
  if (!poly) return {ConstraintClass::unknown, "constraint is not polycyclic"};
  if (p_case_applicable(constraint))
    return {ConstraintClass::poly_time,
            "access language of every reachable loop state is contained in the suffixes of its "
            "loop language"};

  PolycyclicSkeleton sk = skeleton(constraint);
  StateSet reach = reachable_states(constraint);
  for (const auto& [p, info] : sk.cycle_info) {
    if (!reach.test(p)) continue;
    const Word v = info.generator();

    // unique loop-free access word u to p
    Automaton access = constraint;
    access.finals.reset();
    access.finals.set(p);
    for (int x = 0; x < access.alphabet.size(); ++x) access.successors(p, x).clear();
    access.kind = Kind::Pdfa;
    auto u = unique_word(access, p);
    if (!u) continue;

    // tail: words from p to a final state that do not start with v
    Automaton from_p = constraint;
    from_p.initial = p;
    Automaton no_v_prefix = complement(word_prefix_universe(constraint.alphabet, v));
    Automaton tail = trim_reachable(product_intersection(no_v_prefix, from_p));
    if (is_empty(tail)) continue;

    // the access word may end in copies of v that belong to the loop;
    // shorter candidates first
    std::vector<Word> candidates{*u};
    while (true) {
      const Word& last = candidates.back();
      if (last.size() < v.size() ||
          !std::equal(v.begin(), v.end(), last.end() - v.size()))
        break;
      candidates.emplace_back(last.begin(), last.end() - v.size());
    }
    std::reverse(candidates.begin(), candidates.end());

    for (const Word& cu : candidates) {
      HardnessTriple triple{cu, v, tail};
      if (!check_np_hard_criterion(triple)) continue;

      // the shape must cover the whole language: L = u v* U
      Automaton shape = concat_nfa(
          concat_nfa(single_word_automaton(constraint.alphabet, cu),
                     word_star_automaton(constraint.alphabet, v)),
          tail);
      if (!language_equal(shape, constraint)) continue;

      return {ConstraintClass::np_complete,
              "language is u v* U with u=" + format_word(constraint.alphabet, cu) +
                  ", v=" + format_word(constraint.alphabet, v) +
                  "; the hardness conditions hold"};
    }
  }
  return {ConstraintClass::unknown, "neither criterion fired; the problem is in NP"};
}

}  // namespace polysync
