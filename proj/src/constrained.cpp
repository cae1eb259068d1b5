#include "polysync/constrained.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "polysync/io.hpp"

namespace polysync {

namespace {

void require_dcsa(const Automaton& a, const char* who) {
  if (!a.is_deterministic() || !a.is_complete())
    fail(Errc::kind_violation, std::string(who) + ": input must be a complete deterministic semi-automaton");
}

void require_constraint(const Automaton& b) {
  if (!b.is_deterministic())
    fail(Errc::kind_violation, "constraint must be deterministic");
  if (!b.initial) fail(Errc::kind_violation, "constraint requires an initial state");
}

void require_same_alphabet(const Automaton& a, const Automaton& b) {
  if (!(a.alphabet == b.alphabet)) fail(Errc::alphabet_mismatch, "alphabets differ");
}

}  // namespace

Orbit orbit(const Automaton& dcsa, int q, const Word& u) {
  require_dcsa(dcsa, "orbit");
  if (u.empty()) fail(Errc::invalid_argument, "orbit of the empty word");
  if (q < 0 || q >= dcsa.n_states) fail(Errc::invalid_argument, "state id out of range");
  Orbit o;
  o.state = q;
  o.word = u;
  std::vector<int> index_of(dcsa.n_states, -1);
  int cur = q;
  while (index_of[cur] == -1) {
    index_of[cur] = static_cast<int>(o.visited.size());
    o.visited.push_back(cur);
    cur = dcsa.dstep(cur, u);
  }
  o.tail = index_of[cur];
  o.cycle = static_cast<int>(o.visited.size()) - o.tail;
  return o;
}

int Orbit::at(const BigInt& exponent) const {
  if (exponent < 0) fail(Errc::invalid_argument, "negative exponent");
  if (exponent <= tail) return visited[exponent.convert_to<int>()];
  BigInt y = tail + (exponent - tail) % cycle;
  return visited[y.convert_to<int>()];
}

StateSet power_step(const Automaton& dcsa, const StateSet& s, const Word& u, const BigInt& x) {
  require_dcsa(dcsa, "power_step");
  if (x == 0 || u.empty()) return s;
  StateSet out(dcsa.n_states);
  for (auto q = s.find_first(); q != StateSet::npos; q = s.find_next(q))
    out.set(orbit(dcsa, static_cast<int>(q), u).at(x));
  return out;
}

std::string format_wcode(const Automaton& constraint, const WCode& code) {
  if (code.segments.empty()) return "-";
  std::string out;
  for (size_t i = 0; i < code.segments.size(); ++i) {
    const auto& seg = code.segments[i];
    if (i > 0) out += ";";
    out += "p=" + constraint.state_names[seg.pump_state];
    out += ",n=" + seg.exponent.str();
    out += ",v=" + format_word(constraint.alphabet, seg.connector);
  }
  return out;
}

WCode parse_wcode(const Automaton& constraint, std::string_view text) {
  WCode code;
  if (text.empty() || text == "-") return code;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t semi = text.find(';', pos);
    std::string_view part =
        text.substr(pos, semi == std::string_view::npos ? std::string_view::npos : semi - pos);
    std::vector<std::string_view> fields;
    size_t fpos = 0;
    while (fpos <= part.size()) {
      size_t comma = part.find(',', fpos);
      fields.push_back(part.substr(
          fpos, comma == std::string_view::npos ? std::string_view::npos : comma - fpos));
      if (comma == std::string_view::npos) break;
      fpos = comma + 1;
    }
    if (fields.size() != 3 || !fields[0].starts_with("p=") || !fields[1].starts_with("n=") ||
        !fields[2].starts_with("v="))
      fail(Errc::bad_code, "malformed certificate segment '" + std::string(part) + "'");
    WCodeSegment seg;
    std::string name(fields[0].substr(2));
    seg.pump_state = constraint.state_index(name);
    if (seg.pump_state < 0) fail(Errc::bad_code, "unknown pump state '" + name + "'");
    std::string digits(fields[1].substr(2));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      fail(Errc::bad_code, "bad exponent '" + digits + "'");
    seg.exponent = BigInt(digits);
    seg.connector = parse_word(constraint.alphabet, fields[2].substr(2));
    code.segments.push_back(std::move(seg));
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  return code;
}

namespace {

const CycleInfo& pump_info(const PolycyclicSkeleton& sk, int p) {
  auto it = sk.cycle_info.find(p);
  if (it == sk.cycle_info.end())
    fail(Errc::pump_state_mismatch,
         "pump with positive exponent at cycle-free state '" + sk.base.state_names[p] + "'");
  return it->second;
}

}  // namespace

BigInt wcode_expanded_length(const Automaton& constraint, const WCode& code) {
  BigInt total = 0;
  std::optional<PolycyclicSkeleton> sk;
  for (const auto& seg : code.segments) {
    if (seg.exponent < 0) fail(Errc::bad_code, "negative exponent");
    if (seg.exponent > 0) {
      if (!sk) sk = skeleton(constraint);
      total += seg.exponent * static_cast<int>(pump_info(*sk, seg.pump_state).generator().size());
    }
    total += static_cast<int>(seg.connector.size());
  }
  return total;
}

std::optional<Word> expand_wcode(const Automaton& constraint, const WCode& code,
                                 const BigInt& max_len) {
  if (wcode_expanded_length(constraint, code) > max_len) return std::nullopt;
  std::optional<PolycyclicSkeleton> sk;
  Word out;
  for (const auto& seg : code.segments) {
    if (seg.exponent > 0) {
      if (!sk) sk = skeleton(constraint);
      Word g = pump_info(*sk, seg.pump_state).generator();
      for (BigInt i = 0; i < seg.exponent; ++i) out.insert(out.end(), g.begin(), g.end());
    }
    out.insert(out.end(), seg.connector.begin(), seg.connector.end());
  }
  return out;
}

WCode encode_word_as_wcode(const Automaton& constraint, const Word& w) {
  require_constraint(constraint);
  WCode code;
  if (w.empty()) return code;

  bool poly;
  try {
    poly = is_polycyclic(constraint);
  } catch (const Error&) {
    poly = false;
  }
  if (!poly) {
    // Display-only fallback: plain chunks with zero exponents.
    int p = *constraint.initial;
    size_t chunk = std::max(1, constraint.n_states - 1);
    size_t i = 0;
    while (i < w.size()) {
      WCodeSegment seg;
      seg.pump_state = p;
      for (size_t j = 0; j < chunk && i < w.size(); ++j, ++i) {
        seg.connector.push_back(w[i]);
        p = constraint.dnext(p, w[i]);
        if (p < 0) fail(Errc::undefined_transition, "word falls off the constraint");
      }
      code.segments.push_back(std::move(seg));
    }
    return code;
  }

  PolycyclicSkeleton sk = skeleton(constraint);
  auto matches = [&](size_t i, const Word& g) {
    if (i + g.size() > w.size()) return false;
    return std::equal(g.begin(), g.end(), w.begin() + i);
  };
  int p = *constraint.initial;
  size_t i = 0;
  while (true) {
    WCodeSegment seg;
    seg.pump_state = p;
    if (sk.on_cycle(p)) {
      Word g = sk.cycle_info.at(p).generator();
      while (matches(i, g)) {
        i += g.size();
        ++seg.exponent;
      }
    }
    while (i < w.size()) {
      if (sk.on_cycle(p) && matches(i, sk.cycle_info.at(p).generator())) break;
      int t = constraint.dnext(p, w[i]);
      if (t < 0) fail(Errc::undefined_transition, "word falls off the constraint");
      seg.connector.push_back(w[i]);
      p = t;
      ++i;
    }
    if (seg.exponent == 0 && seg.connector.empty()) break;
    code.segments.push_back(std::move(seg));
    if (i >= w.size()) break;
  }
  return code;
}

ConstrSyncResult oracle(const Automaton& input, const Automaton& constraint) {
  require_dcsa(input, "oracle");
  require_constraint(constraint);
  require_same_alphabet(input, constraint);

  using Node = std::pair<StateSet, int>;
  const Node start{input.all_states(), *constraint.initial};
  auto accepting = [&](const Node& n) {
    return n.first.count() == 1 && constraint.finals.test(n.second);
  };

  std::map<Node, std::pair<Node, int>> parent;  // child -> (parent, symbol)
  std::set<Node> seen{start};
  std::deque<Node> queue{start};
  std::optional<Node> goal;
  if (accepting(start)) goal = start;

  while (!queue.empty() && !goal) {
    Node cur = queue.front();
    queue.pop_front();
    for (int x = 0; x < input.alphabet.size() && !goal; ++x) {
      int t = constraint.dnext(cur.second, x);
      if (t < 0) continue;
      Node next{step_symbol(input, cur.first, x), t};
      if (seen.count(next)) continue;
      seen.insert(next);
      parent.emplace(next, std::make_pair(cur, x));
      if (accepting(next)) goal = next;
      queue.push_back(next);
    }
  }

  ConstrSyncResult res;
  if (!goal) return res;
  res.decision = true;
  Word w;
  Node cur = *goal;
  while (!(cur == start)) {
    auto it = parent.find(cur);
    w.push_back(it->second.second);
    cur = it->second.first;
  }
  std::reverse(w.begin(), w.end());
  res.witness = encode_word_as_wcode(constraint, w);
  res.expanded_length = BigInt(w.size());
  return res;
}

bool verify_wcode(const Automaton& input, const Automaton& constraint, const WCode& code) {
  require_dcsa(input, "verify");
  require_constraint(constraint);
  require_same_alphabet(input, constraint);
  PolycyclicSkeleton sk = skeleton(constraint);

  const int m = constraint.n_states;
  if (static_cast<int>(code.segments.size()) > m)
    fail(Errc::bad_code, "certificate has more segments than constraint states");
  for (const auto& seg : code.segments) {
    if (seg.exponent < 0) fail(Errc::bad_code, "negative exponent");
    if (seg.pump_state < 0 || seg.pump_state >= m) fail(Errc::bad_code, "pump state out of range");
    if (static_cast<int>(seg.connector.size()) >= m && m > 0)
      fail(Errc::bad_code, "connector not shorter than the constraint state count");
  }

  StateSet active = input.all_states();
  int p = *constraint.initial;
  for (const auto& seg : code.segments) {
    if (seg.exponent > 0) {
      if (seg.pump_state != p)
        fail(Errc::pump_state_mismatch, "constraint is at '" + constraint.state_names[p] +
                                            "', segment pumps at '" +
                                            constraint.state_names[seg.pump_state] + "'");
      active = power_step(input, active, pump_info(sk, p).generator(), seg.exponent);
    }
    for (int x : seg.connector) {
      int t = constraint.dnext(p, x);
      if (t < 0)
        fail(Errc::undefined_transition, "connector symbol '" + constraint.alphabet.names[x] +
                                             "' undefined at '" + constraint.state_names[p] + "'");
      p = t;
      active = step_symbol(input, active, x);
    }
  }
  return active.count() == 1 && constraint.finals.test(p);
}

namespace {

struct SegmentSearch {
  const Automaton& input;
  const Automaton& constraint;
  const PolycyclicSkeleton& sk;
  std::optional<int> exponent_cap;  // candidates restricted to [0, cap)

  int budget;                                             // segments allowed this round
  std::vector<std::vector<std::pair<Word, int>>> conns;   // per visited state, shortlex
  std::vector<bool> conns_ready;
  std::map<int, Word> gens;
  std::set<std::tuple<StateSet, int, int>> failed;
  std::vector<WCodeSegment> trail;

  SegmentSearch(const Automaton& a, const Automaton& b, const PolycyclicSkeleton& s,
                std::optional<int> cap)
      : input(a), constraint(b), sk(s), exponent_cap(cap) {
    budget = b.n_states;
    conns.resize(b.n_states);
    conns_ready.assign(b.n_states, false);
    for (const auto& [p, info] : s.cycle_info) gens[p] = info.generator();
  }

  const std::vector<std::pair<Word, int>>& connectors(int p) {
    if (!conns_ready[p]) {
      conns[p] = enumerate_connectors(p);
      conns_ready[p] = true;
    }
    return conns[p];
  }

  // Words the constraint can read from p, of length < |P|, shortlex order.
  std::vector<std::pair<Word, int>> enumerate_connectors(int p) const {
    std::vector<std::pair<Word, int>> out;
    std::deque<std::pair<Word, int>> queue{{Word{}, p}};
    while (!queue.empty()) {
      auto [w, q] = queue.front();
      queue.pop_front();
      out.emplace_back(w, q);
      if (static_cast<int>(w.size()) + 1 >= constraint.n_states) continue;
      for (int x = 0; x < constraint.alphabet.size(); ++x) {
        int t = constraint.dnext(q, x);
        if (t < 0) continue;
        Word next = w;
        next.push_back(x);
        queue.emplace_back(std::move(next), t);
      }
    }
    return out;
  }

  bool search(const StateSet& active, int p, int depth) {
    if (active.count() == 1 && constraint.finals.test(p)) return true;
    if (depth == budget) return false;
    auto key = std::make_tuple(active, p, depth);
    if (failed.count(key)) return false;

    auto descend = [&](const StateSet& pumped, const BigInt& exponent) {
      for (const auto& [v, t] : connectors(p)) {
        trail.push_back({p, exponent, v});
        if (search(step(input, pumped, v), t, depth + 1)) return true;
        trail.pop_back();
      }
      return false;
    };

    auto gen_it = gens.find(p);
    if (gen_it == gens.end()) {
      if (descend(active, 0)) return true;
    } else {
      // Candidate exponents: indices of the distinct images along the
      // subset orbit of the loop generator; every larger exponent lands on
      // one of these images again.
      std::set<StateSet> images;
      StateSet cur = active;
      for (int x = 0;; ++x) {
        if (x > 0) cur = step(input, cur, gen_it->second);
        if (images.count(cur)) break;
        if (exponent_cap && x >= *exponent_cap) break;
        images.insert(cur);
        if (descend(cur, x)) return true;
      }
    }
    failed.insert(std::move(key));
    return false;
  }
};

ConstrSyncResult solve_impl(const Automaton& input, const Automaton& constraint,
                            std::optional<int> exponent_cap) {
  require_dcsa(input, "solve");
  require_constraint(constraint);
  require_same_alphabet(input, constraint);
  PolycyclicSkeleton sk = skeleton(constraint);

  SegmentSearch s(input, constraint, sk, exponent_cap);
  ConstrSyncResult res;
  // Deepen the segment budget one at a time: the first witness found uses
  // as few segments as possible.
  bool found = false;
  for (int budget = 0; budget <= constraint.n_states && !found; ++budget) {
    s.budget = budget;
    s.failed.clear();
    s.trail.clear();
    found = s.search(input.all_states(), *constraint.initial, 0);
  }
  if (!found) return res;
  res.decision = true;
  WCode code{std::move(s.trail)};
  res.expanded_length = wcode_expanded_length(constraint, code);
  res.witness = std::move(code);
  return res;
}

}  // namespace

ConstrSyncResult solve(const Automaton& input, const Automaton& constraint) {
  return solve_impl(input, constraint, std::nullopt);
}

bool p_case_applicable(const Automaton& constraint) {
  PolycyclicSkeleton sk = skeleton(constraint);
  StateSet reach = reachable_states(constraint);
  for (const auto& [p, info] : sk.cycle_info) {
    if (!reach.test(p)) continue;
    Automaton loop = word_star_automaton(constraint.alphabet, info.generator());
    Automaton suffixes = closure_automaton(loop, ClosureMode::suffix);
    Automaton access = constraint;
    access.finals.reset();
    access.finals.set(p);
    if (!includes(suffixes, access)) return false;
  }
  return true;
}

ConstrSyncResult solve_p_case(const Automaton& input, const Automaton& constraint) {
  if (!p_case_applicable(constraint))
    fail(Errc::pcase_not_applicable, "suffix-inclusion condition does not hold");
  return solve_impl(input, constraint, std::max(1, input.n_states));
}

}  // namespace polysync
