#pragma once

#include <map>

#include "polysync/regops.hpp"

namespace polysync {

// Loop data of one on-cycle state p: cycle_word is the label of the unique
// in-component cycle read starting at p; the loop language at p is
// {cycle_word^loop_exponent}*. With the cycle word read off the cycle the
// exponent is always 1; it is kept explicit so the pump generator
// cycle_word^loop_exponent is usable as such.
struct CycleInfo {
  int state = -1;
  Word cycle_word;
  int loop_exponent = 1;

  Word generator() const {
    Word g;
    for (int i = 0; i < loop_exponent; ++i) g.insert(g.end(), cycle_word.begin(), cycle_word.end());
    return g;
  }
};

struct PolycyclicSkeleton {
  Automaton base;
  SccDecomposition components;
  std::map<int, CycleInfo> cycle_info;  // exactly the on-cycle states
  bool start_unfolded = false;          // initial state lies on no cycle

  bool on_cycle(int state) const { return cycle_info.count(state) > 0; }
};

// Every strongly connected component is a single cycle (lone cycle-free
// states allowed). Input must be deterministic with an initial state.
bool is_polycyclic(const Automaton& a);

// Cycle words of all on-cycle states; throws when not polycyclic.
PolycyclicSkeleton skeleton(const Automaton& a);

// Equivalent automaton whose initial state lies on no cycle: when the start
// sits on a cycle, one fresh start state copying all its outgoing
// transitions is prepended. Identity otherwise.
Automaton unfold_start(const Automaton& a);

// The loop language at every state of the NFA is contained in the powers of
// a single word; decided on the reachable part of the subset construction.
bool nfa_loop_condition(const Automaton& nfa);

// Closure constructions. All take polycyclic operands with initial states.
// complement: completion with a fresh trap plus flipped finals. The result
// accepts the complement but is a complete automaton, which over an
// alphabet of two or more symbols always contains a sink component with
// several loops, i.e. the complement generally leaves the class.
Automaton complement_pc(const Automaton& a);
// union: starts unfolded, then merged into one initial state; determinized
// only when the merge created nondeterminism. Stays in the class.
Automaton union_pc(const Automaton& a, const Automaton& b);
// intersection: reachable product of the operands. Loop languages of pair
// states sit inside the intersection of two single-word power sets, so the
// product stays in the class.
Automaton intersection_pc(const Automaton& a, const Automaton& b);
// quotient by u: move the initial state along u; empty language when the
// path falls off.
Automaton quotient_pc(const Automaton& a, const Word& u);
// concatenation: unfold the right operand's start, then wire its outgoing
// transitions onto every final state of the left operand. Stays in the
// class.
Automaton concat_pc(const Automaton& a, const Automaton& b);

// Textbook NFA concatenation without any structural requirements (the right
// initial state is kept as a plain state). Used where the operands are not
// polycyclic.
Automaton concat_nfa(const Automaton& a, const Automaton& b);

// Shortest word whose powers cover every input word, when one exists.
// Nonempty inputs; decided through primitive roots (two words are powers of
// a common word exactly when they commute).
std::optional<Word> subset_of_single_word_powers(const std::vector<Word>& words);
Word primitive_root(const Word& w);

// Chain accepting exactly {w}.
Automaton single_word_automaton(const Alphabet& alphabet, const Word& w);
// Cycle of |w| states accepting {w}*; w nonempty.
Automaton word_star_automaton(const Alphabet& alphabet, const Word& w);

}  // namespace polysync
