#include "polysync/polycyclic.hpp"

#include <algorithm>

namespace polysync {

namespace {

void require_polycyclic(const Automaton& a, const char* who) {
  if (!is_polycyclic(a)) fail(Errc::not_polycyclic, std::string(who) + ": operand not polycyclic");
}

void require_same_alphabet(const Automaton& a, const Automaton& b) {
  if (!(a.alphabet == b.alphabet)) fail(Errc::alphabet_mismatch, "alphabets differ");
}

// Relabels as a PDFA when the merge stayed deterministic, otherwise runs the
// partial subset construction; then trims to the reachable part.
Automaton settle(Automaton merged) {
  merged.kind = merged.is_deterministic() ? Kind::Pdfa : Kind::Nfa;
  merged.validate();
  Automaton out =
      merged.kind == Kind::Pdfa ? trim_reachable(merged) : determinize_partial(merged);
  if (!is_polycyclic(out)) fail(Errc::internal, "closure construction left the class");
  return out;
}

}  // namespace

bool is_polycyclic(const Automaton& a) {
  if (a.kind == Kind::Nfa || !a.is_deterministic())
    fail(Errc::kind_violation, "polycyclicity is checked on deterministic automata");
  if (!a.initial) fail(Errc::kind_violation, "polycyclicity check requires an initial state");
  return scc(a).all_single_or_trivial();
}

PolycyclicSkeleton skeleton(const Automaton& a) {
  if (!is_polycyclic(a)) fail(Errc::not_polycyclic, "automaton is not polycyclic");
  PolycyclicSkeleton sk;
  sk.base = a;
  sk.components = scc(a);

  auto inner_step = [&](int q, int comp) -> std::pair<int, int> {
    for (int x = 0; x < a.alphabet.size(); ++x)
      for (int t : a.successors(q, x))
        if (sk.components.component_of[t] == comp) return {x, t};
    fail(Errc::internal, "cycle component without inner transition");
  };

  for (size_t c = 0; c < sk.components.components.size(); ++c) {
    if (!sk.components.is_single_cycle[c]) continue;
    for (int p : sk.components.components[c]) {
      CycleInfo info;
      info.state = p;
      info.loop_exponent = 1;
      int q = p;
      do {
        auto [x, t] = inner_step(q, static_cast<int>(c));
        info.cycle_word.push_back(x);
        q = t;
      } while (q != p);
      sk.cycle_info.emplace(p, std::move(info));
    }
  }
  sk.start_unfolded = !sk.on_cycle(*a.initial);
  return sk;
}

Automaton unfold_start(const Automaton& a) {
  PolycyclicSkeleton sk = skeleton(a);
  if (sk.start_unfolded) return a;

  const int old_init = *a.initial;
  Automaton u = new_automaton(a.kind, a.alphabet, a.n_states + 1, {});
  u.state_names = a.state_names;
  u.state_names.push_back(fresh_name(a.state_names, a.state_names[old_init] + "'"));
  const int fresh = a.n_states;
  u.initial = fresh;
  for (auto q = a.finals.find_first(); q != StateSet::npos; q = a.finals.find_next(q))
    u.finals.set(q);
  if (a.finals.test(old_init)) u.finals.set(fresh);
  for (int q = 0; q < a.n_states; ++q)
    for (int x = 0; x < a.alphabet.size(); ++x)
      for (int t : a.successors(q, x)) u.add_transition(q, x, t);
  for (int x = 0; x < a.alphabet.size(); ++x)
    for (int t : a.successors(old_init, x)) u.add_transition(fresh, x, t);
  u.validate();
  return u;
}

bool nfa_loop_condition(const Automaton& nfa) {
  if (!nfa.initial) fail(Errc::invalid_argument, "loop condition requires an initial state");
  return is_polycyclic(determinize_partial(nfa));
}

Automaton complement_pc(const Automaton& a) {
  require_polycyclic(a, "complement");
  return complement(make_complete(a));
}

Automaton union_pc(const Automaton& a, const Automaton& b) {
  require_same_alphabet(a, b);
  require_polycyclic(a, "union");
  require_polycyclic(b, "union");
  Automaton left = unfold_start(trim_reachable(a));
  Automaton right = unfold_start(trim_reachable(b));
  const int r_init = *right.initial;

  // Merge the two start states: the left initial absorbs the right
  // initial's outgoing transitions. After trimming and unfolding neither
  // start state has incoming transitions, so dropping the right one is safe.
  std::vector<int> remap(right.n_states, -1);
  std::vector<std::string> names = left.state_names;
  int next = left.n_states;
  for (int q = 0; q < right.n_states; ++q) {
    if (q == r_init) continue;
    remap[q] = next++;
    names.push_back(fresh_name(names, right.state_names[q]));
  }
  Automaton m = new_automaton(Kind::Nfa, a.alphabet, next, names);
  m.initial = left.initial;
  for (auto q = left.finals.find_first(); q != StateSet::npos; q = left.finals.find_next(q))
    m.finals.set(q);
  for (auto q = right.finals.find_first(); q != StateSet::npos; q = right.finals.find_next(q)) {
    if (static_cast<int>(q) == r_init)
      m.finals.set(*left.initial);
    else
      m.finals.set(remap[q]);
  }
  for (int q = 0; q < left.n_states; ++q)
    for (int x = 0; x < left.alphabet.size(); ++x)
      for (int t : left.successors(q, x)) m.add_transition(q, x, t);
  for (int q = 0; q < right.n_states; ++q) {
    if (q == r_init) continue;
    for (int x = 0; x < right.alphabet.size(); ++x)
      for (int t : right.successors(q, x)) m.add_transition(remap[q], x, remap[t]);
  }
  for (int x = 0; x < right.alphabet.size(); ++x)
    for (int t : right.successors(r_init, x)) m.add_transition(*left.initial, x, remap[t]);
  return settle(std::move(m));
}

Automaton intersection_pc(const Automaton& a, const Automaton& b) {
  require_same_alphabet(a, b);
  require_polycyclic(a, "intersection");
  require_polycyclic(b, "intersection");
  Automaton p = trim_reachable(product_intersection(a, b));
  if (!is_polycyclic(p)) fail(Errc::internal, "closure construction left the class");
  return p;
}

Automaton quotient_pc(const Automaton& a, const Word& u) {
  require_polycyclic(a, "quotient");
  int s = a.dstep(*a.initial, u);
  if (s < 0) {
    Automaton empty = new_automaton(Kind::Pdfa, a.alphabet, 1, {"q0"});
    empty.initial = 0;
    return empty;
  }
  Automaton q = a;
  q.initial = s;
  return trim_reachable(q);
}

Automaton concat_pc(const Automaton& a, const Automaton& b) {
  require_same_alphabet(a, b);
  require_polycyclic(a, "concat");
  require_polycyclic(b, "concat");
  Automaton left = trim_reachable(a);
  Automaton right = unfold_start(trim_reachable(b));
  const int r_init = *right.initial;

  std::vector<int> remap(right.n_states, -1);
  std::vector<std::string> names = left.state_names;
  int next = left.n_states;
  for (int q = 0; q < right.n_states; ++q) {
    if (q == r_init) continue;
    remap[q] = next++;
    names.push_back(fresh_name(names, right.state_names[q]));
  }
  Automaton m = new_automaton(Kind::Nfa, a.alphabet, next, names);
  m.initial = left.initial;
  for (auto q = right.finals.find_first(); q != StateSet::npos; q = right.finals.find_next(q))
    if (static_cast<int>(q) != r_init) m.finals.set(remap[q]);
  if (right.finals.test(r_init))  // epsilon in the right language
    for (auto q = left.finals.find_first(); q != StateSet::npos; q = left.finals.find_next(q))
      m.finals.set(q);
  for (int q = 0; q < left.n_states; ++q)
    for (int x = 0; x < left.alphabet.size(); ++x)
      for (int t : left.successors(q, x)) m.add_transition(q, x, t);
  for (int q = 0; q < right.n_states; ++q) {
    if (q == r_init) continue;
    for (int x = 0; x < right.alphabet.size(); ++x)
      for (int t : right.successors(q, x)) m.add_transition(remap[q], x, remap[t]);
  }
  for (auto f = left.finals.find_first(); f != StateSet::npos; f = left.finals.find_next(f))
    for (int x = 0; x < right.alphabet.size(); ++x)
      for (int t : right.successors(r_init, x))
        m.add_transition(static_cast<int>(f), x, remap[t]);
  return settle(std::move(m));
}

Automaton concat_nfa(const Automaton& a, const Automaton& b) {
  require_same_alphabet(a, b);
  if (!a.initial || !b.initial) fail(Errc::invalid_argument, "concat requires initial states");
  std::vector<std::string> names = a.state_names;
  std::vector<int> remap(b.n_states);
  for (int q = 0; q < b.n_states; ++q) {
    remap[q] = a.n_states + q;
    names.push_back(fresh_name(names, b.state_names[q]));
  }
  Automaton m = new_automaton(Kind::Nfa, a.alphabet, a.n_states + b.n_states, names);
  m.initial = a.initial;
  for (auto q = b.finals.find_first(); q != StateSet::npos; q = b.finals.find_next(q))
    m.finals.set(remap[q]);
  if (b.finals.test(*b.initial))
    for (auto q = a.finals.find_first(); q != StateSet::npos; q = a.finals.find_next(q))
      m.finals.set(q);
  for (int q = 0; q < a.n_states; ++q)
    for (int x = 0; x < a.alphabet.size(); ++x)
      for (int t : a.successors(q, x)) m.add_transition(q, x, t);
  for (int q = 0; q < b.n_states; ++q)
    for (int x = 0; x < b.alphabet.size(); ++x)
      for (int t : b.successors(q, x)) m.add_transition(remap[q], x, remap[t]);
  for (auto f = a.finals.find_first(); f != StateSet::npos; f = a.finals.find_next(f))
    for (int x = 0; x < b.alphabet.size(); ++x)
      for (int t : b.successors(*b.initial, x)) m.add_transition(static_cast<int>(f), x, remap[t]);
  m.validate();
  return m;
}

Word primitive_root(const Word& w) {
  if (w.empty()) fail(Errc::invalid_argument, "primitive root of the empty word");
  const int n = static_cast<int>(w.size());
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (int i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return Word(w.begin(), w.begin() + d);
  }
  return w;
}

Automaton single_word_automaton(const Alphabet& alphabet, const Word& w) {
  Automaton a = new_automaton(Kind::Pdfa, alphabet, static_cast<int>(w.size()) + 1, {});
  for (int i = 0; i < a.n_states; ++i) a.state_names[i] = "w" + std::to_string(i);
  a.initial = 0;
  a.finals.set(w.size());
  for (size_t i = 0; i < w.size(); ++i) a.add_transition(static_cast<int>(i), w[i], static_cast<int>(i) + 1);
  a.validate();
  return a;
}

Automaton word_star_automaton(const Alphabet& alphabet, const Word& w) {
  if (w.empty()) fail(Errc::invalid_argument, "word-star automaton needs a nonempty word");
  Automaton a = new_automaton(Kind::Pdfa, alphabet, static_cast<int>(w.size()), {});
  for (int i = 0; i < a.n_states; ++i) a.state_names[i] = "c" + std::to_string(i);
  a.initial = 0;
  a.finals.set(0);
  for (size_t i = 0; i < w.size(); ++i)
    a.add_transition(static_cast<int>(i), w[i], static_cast<int>((i + 1) % w.size()));
  a.validate();
  return a;
}

std::optional<Word> subset_of_single_word_powers(const std::vector<Word>& words) {
  if (words.empty()) return Word{};
  for (const auto& w : words)
    if (w.empty()) fail(Errc::invalid_argument, "input words must be nonempty");
  // Two nonempty words are powers of a common word exactly when they
  // commute, so a pairwise check against the first word decides the set.
  for (const auto& w : words) {
    Word xy = words[0];
    xy.insert(xy.end(), w.begin(), w.end());
    Word yx = w;
    yx.insert(yx.end(), words[0].begin(), words[0].end());
    if (xy != yx) return std::nullopt;
  }
  Word root = primitive_root(words[0]);
  for (const auto& w : words) {
    if (w.size() % root.size() != 0) return std::nullopt;
    for (size_t i = 0; i < w.size(); ++i)
      if (w[i] != root[i % root.size()]) return std::nullopt;
  }
  return root;
}

}  // namespace polysync
