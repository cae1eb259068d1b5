#pragma once

#include "polysync/automaton.hpp"

namespace polysync {

// All unordered state pairs {q,r} of a complete deterministic semi-automaton,
// singletons included, with delta'({q,r},x) = {delta(q,x), delta(r,x)}.
struct PairAutomaton {
  int n = 0;        // base state count
  int n_syms = 0;
  std::vector<int> trans;  // pair id * n_syms + sym -> pair id

  int size() const { return n * (n + 1) / 2; }
  int pair_id(int q, int r) const;             // unordered
  std::pair<int, int> pair_of(int id) const;   // (q, r) with q <= r
  bool is_singleton(int id) const;
  int next(int id, int sym) const { return trans[static_cast<size_t>(id) * n_syms + sym]; }
};

PairAutomaton pair_automaton(const Automaton& dcsa);

struct SyncWitness {
  Word word;
  int sink = -1;  // the state every state is taken to
};

// Some word maps the whole state set to one state; decided on the pair
// automaton: true iff every pair can reach a singleton.
bool is_synchronizing(const Automaton& dcsa);

// Greedy pair merging: repeatedly merge the lowest active pair along a
// shortest merging word (breadth-first, symbols in id order). The witness is
// re-checked against the definition before it is returned; its length is
// bounded by |Q|^3.
std::optional<SyncWitness> synchronizing_word(const Automaton& dcsa);

// DFA of all words that collapse {q,r} to one state: the pair automaton with
// initial {q,r} and the singletons final.
Automaton pair_merge_language(const Automaton& dcsa, int q, int r);

}  // namespace polysync
