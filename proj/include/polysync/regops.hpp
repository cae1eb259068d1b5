#pragma once

#include "polysync/automaton.hpp"

namespace polysync {

// Condensation of an automaton. Component ids are topologically ordered:
// every dag edge goes from a lower id to a higher id.
struct SccDecomposition {
  std::vector<int> component_of;               // state -> component id
  std::vector<std::vector<int>> components;    // component id -> sorted states
  std::vector<std::pair<int, int>> dag_edges;  // distinct edges between components
  // A component is a single cycle when every member has exactly one
  // in-component transition and those transitions form one directed cycle
  // through all members; a lone state with one self-loop counts.
  std::vector<bool> is_single_cycle;
  // A lone state with no self-loop: no cycle at all.
  std::vector<bool> is_trivial;

  bool all_single_or_trivial() const {
    for (size_t c = 0; c < components.size(); ++c)
      if (!is_single_cycle[c] && !is_trivial[c]) return false;
    return true;
  }
};

SccDecomposition scc(const Automaton& a);

// Image of a state set under one symbol / under a word.
StateSet step_symbol(const Automaton& a, const StateSet& s, int sym);
StateSet step(const Automaton& a, const StateSet& s, const Word& w);

// Subset construction over reachable subsets, canonicalized as bitsets and
// discovered breadth-first. The result is a complete DFA; the empty-subset
// trap is materialized only when some image is empty.
Automaton determinize(const Automaton& a);

// Same exploration, but empty images stay undefined: yields a PDFA without
// a dead sink. Used by the closure constructions and the loop-condition
// check, where a sink state would break the cycle structure.
Automaton determinize_partial(const Automaton& a);

// Adds one fresh non-final trap state where cells are undefined. Never
// implicit: callers decide when completion is wanted. Deterministic input.
Automaton make_complete(const Automaton& a);

// Complete DFA in, finals flipped out.
Automaton complement(const Automaton& a);

// Product of two deterministic automata with initial states over the same
// alphabet; accepts the intersection. Reachable pairs only.
Automaton product_intersection(const Automaton& a, const Automaton& b);

// No final state reachable from the initial state.
bool is_empty(const Automaton& a);

// L(inner) subseteq L(outer), via product with the complement of outer.
bool includes(const Automaton& outer, const Automaton& inner);
bool language_equal(const Automaton& a, const Automaton& b);

enum class ClosureMode { prefix, suffix, factor };

// Accepts exactly the prefixes / suffixes / factors of the input language.
// prefix: every co-accessible state becomes final (kind preserved);
// suffix: fresh initial state wired to every successor of an accessible
// state (an NFA); factor: both.
Automaton closure_automaton(const Automaton& a, ClosureMode mode);

// Restriction to states reachable from the initial state, ids renumbered
// in ascending old-id order.
Automaton trim_reachable(const Automaton& a);

// States from which some final state is reachable.
StateSet coaccessible_states(const Automaton& a);
StateSet reachable_states(const Automaton& a);

}  // namespace polysync
