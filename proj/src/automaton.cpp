#include "polysync/automaton.hpp"

#include <algorithm>

namespace polysync {

int Alphabet::index_of(const std::string& token) const {
  for (int i = 0; i < size(); ++i)
    if (names[i] == token) return i;
  return -1;
}

int Automaton::dnext(int state, int sym) const {
  const auto& s = successors(state, sym);
  if (s.empty()) return -1;
  if (s.size() > 1) fail(Errc::kind_violation, "dnext on a nondeterministic cell");
  return s[0];
}

int Automaton::dstep(int state, const Word& w) const {
  int q = state;
  for (int x : w) {
    q = dnext(q, x);
    if (q < 0) return -1;
  }
  return q;
}

bool Automaton::is_deterministic() const {
  for (const auto& s : succ)
    if (s.size() > 1) return false;
  return true;
}

bool Automaton::is_complete() const {
  for (const auto& s : succ)
    if (s.size() != 1) return false;
  return true;
}

bool Automaton::accepts(const Word& w) const {
  if (!initial) fail(Errc::invalid_argument, "membership requires an initial state");
  StateSet active(n_states);
  active.set(*initial);
  for (int x : w) {
    StateSet next(n_states);
    for (auto q = active.find_first(); q != StateSet::npos; q = active.find_next(q))
      for (int t : successors(static_cast<int>(q), x)) next.set(t);
    active = next;
    if (active.none()) return false;
  }
  return (active & finals).any();
}

int Automaton::state_index(const std::string& name) const {
  for (int i = 0; i < n_states; ++i)
    if (state_names[i] == name) return i;
  return -1;
}

void Automaton::add_transition(int from, int sym, int to) {
  auto& s = successors(from, sym);
  auto it = std::lower_bound(s.begin(), s.end(), to);
  if (it == s.end() || *it != to) s.insert(it, to);
}

void Automaton::validate() const {
  if (alphabet.size() == 0) fail(Errc::parse, "empty alphabet");
  for (int i = 0; i < alphabet.size(); ++i)
    for (int j = i + 1; j < alphabet.size(); ++j)
      if (alphabet.names[i] == alphabet.names[j])
        fail(Errc::parse, "duplicate alphabet token '" + alphabet.names[i] + "'");
  if (static_cast<int>(state_names.size()) != n_states)
    fail(Errc::internal, "state name table size mismatch");
  if (succ.size() != static_cast<size_t>(n_states) * alphabet.size())
    fail(Errc::internal, "transition table size mismatch");
  if (static_cast<int>(finals.size()) != n_states) fail(Errc::internal, "final set width mismatch");
  for (const auto& s : succ)
    for (int t : s)
      if (t < 0 || t >= n_states) fail(Errc::parse, "transition target out of range");
  if (initial && (*initial < 0 || *initial >= n_states))
    fail(Errc::parse, "initial state out of range");

  switch (kind) {
    case Kind::Dcsa:
      for (int q = 0; q < n_states; ++q)
        for (int x = 0; x < alphabet.size(); ++x) {
          size_t k = successors(q, x).size();
          if (k == 0)
            fail(Errc::kind_violation, "kind violation: missing transition (" + state_names[q] +
                                           ", " + alphabet.names[x] + ") in a dcsa");
          if (k > 1)
            fail(Errc::kind_violation, "kind violation: two successors for (" + state_names[q] +
                                           ", " + alphabet.names[x] + ") in a dcsa");
        }
      break;
    case Kind::Pdfa:
      for (int q = 0; q < n_states; ++q)
        for (int x = 0; x < alphabet.size(); ++x)
          if (successors(q, x).size() > 1)
            fail(Errc::kind_violation, "kind violation: two successors for (" + state_names[q] +
                                           ", " + alphabet.names[x] + ") in a pdfa");
      if (!initial) fail(Errc::kind_violation, "kind violation: pdfa requires an initial state");
      break;
    case Kind::Nfa:
      if (!initial) fail(Errc::kind_violation, "kind violation: nfa requires an initial state");
      break;
  }
}

Automaton new_automaton(Kind kind, Alphabet alphabet, int n_states,
                        std::vector<std::string> state_names) {
  Automaton a;
  a.kind = kind;
  a.alphabet = std::move(alphabet);
  a.n_states = n_states;
  if (state_names.empty()) {
    state_names.reserve(n_states);
    for (int i = 0; i < n_states; ++i) state_names.push_back("q" + std::to_string(i));
  }
  a.state_names = std::move(state_names);
  a.succ.assign(static_cast<size_t>(n_states) * a.alphabet.size(), {});
  a.finals = StateSet(n_states);
  return a;
}

std::string fresh_name(const std::vector<std::string>& taken, const std::string& base) {
  std::string name = base;
  while (std::find(taken.begin(), taken.end(), name) != taken.end()) name += "'";
  return name;
}

}  // namespace polysync
