#pragma once

#include <cstdint>

#include "polysync/constrained.hpp"

namespace polysync {

// A complete deterministic semi-automaton with a source and a target set;
// asks for a word mapping every source state into the target set.
struct SetTransporterInstance {
  Automaton aut;
  StateSet source;
  StateSet target;
};

// Instance files are automaton files with extra `S:` and `T:` lines.
SetTransporterInstance parse_instance(std::string_view text);
std::string format_instance(const SetTransporterInstance& inst);
SetTransporterInstance make_instance(Automaton aut, const std::vector<std::string>& source_names,
                                     const std::vector<std::string>& target_names);

// Shortest transporting word by breadth-first search over the images of the
// source set; absent when no word works.
std::optional<Word> set_transporter_bruteforce(const SetTransporterInstance& inst);

// Equivalent instance with disjoint source and target: the source states are
// duplicated (same outgoing behaviour, no incoming transitions). Rejects
// instances with source inside target, which the empty word already answers.
SetTransporterInstance disjointify(const SetTransporterInstance& inst);

// Transporting words correspond exactly to words accepted by every automaton
// of an intersection-nonemptiness instance, in both directions.
SetTransporterInstance intersection_to_settransporter(const std::vector<Automaton>& dfas);
std::vector<Automaton> settransporter_to_intersection(const SetTransporterInstance& inst);

// Constraint shape u v* U with nonempty tail language U. The hardness
// conditions: u is no factor of v*, v is no factor of U, and no word of U is
// a prefix of v*.
struct HardnessTriple {
  Word u;
  Word v;
  Automaton tail;  // automaton for U, over the constraint alphabet
};

bool check_np_hard_criterion(const HardnessTriple& triple);

// Reduction gadget: a complete semi-automaton over the constraint alphabet
// built from a unary disjoint instance. Letters of v^{|u|} advance |Q|-sized
// copy layers (one full block simulates one unary step); off-letters send
// plain states to a fixed source state, keep source states, and move target
// states to the trap. Synchronizable under the constraint u v* {w} exactly
// when the instance transports.
Automaton build_hardness_gadget(const SetTransporterInstance& inst, const HardnessTriple& triple,
                                const Word& w);

// u v* {w} as a polycyclic automaton, by concatenation of the pieces.
Automaton build_uvw_constraint(const Alphabet& alphabet, const Word& u, const Word& v,
                               const Word& w);

struct BatchReport {
  int count = 0;
  int agreements = 0;
  int max_q = 0;
  std::uint64_t seed = 0;
  std::string triple;                     // formatted (u, v, w)
  std::vector<std::string> mismatches;    // serialized counterexample instances

  bool all_agree() const { return agreements == count; }
  std::string to_text() const;
};

// Draws random unary disjoint instances, builds the gadget for each and
// compares the transporter brute force against the constrained-
// synchronization oracle on the gadget. Counterexamples are serialized into
// the report.
BatchReport gadget_equivalence_batch(int count, int max_q, const Word& u, const Word& v,
                                     const Word& w, const Alphabet& alphabet, std::uint64_t seed);

enum class ConstraintClass { poly_time, np_complete, unknown };

struct Classification {
  ConstraintClass cls = ConstraintClass::unknown;
  std::string detail;
};

// Best effort: polynomial case first; otherwise looks for a u v* U shape of
// the constraint language (unique loop-free access word to an on-cycle
// state, cycle word as v, tail = words from the state that do not start
// with the cycle word) and checks the hardness conditions on it.
Classification classify_constraint(const Automaton& constraint);

}  // namespace polysync
