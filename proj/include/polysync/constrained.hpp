#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "polysync/polycyclic.hpp"

namespace polysync {

using BigInt = boost::multiprecision::cpp_int;

// Eventually periodic sequence q, d(q,u), d(q,u^2), ...: `tail` steps before
// the cycle of length `cycle` is entered. Evaluates d(q, u^x) for arbitrary
// exponents by modular arithmetic.
struct Orbit {
  int state = -1;
  Word word;
  int tail = 0;
  int cycle = 1;
  std::vector<int> visited;  // q, d(q,u), ..., d(q,u^{tail+cycle-1}), all distinct

  int at(const BigInt& exponent) const;
};

Orbit orbit(const Automaton& dcsa, int q, const Word& u);

// Image of a subset under u^x, per state via its orbit; x in binary, so huge
// exponents cost only a modulo reduction.
StateSet power_step(const Automaton& dcsa, const StateSet& s, const Word& u, const BigInt& x);

// Certificate for a constrained synchronizing word: for each segment the
// constraint automaton pumps `exponent` repetitions of the loop generator at
// `pump_state` and then reads `connector`. Canonical text form:
// segments joined by ';', each  p=<state>,n=<decimal>,v=<word or ->.
struct WCodeSegment {
  int pump_state = -1;
  BigInt exponent = 0;
  Word connector;
};

struct WCode {
  std::vector<WCodeSegment> segments;
};

std::string format_wcode(const Automaton& constraint, const WCode& code);
WCode parse_wcode(const Automaton& constraint, std::string_view text);

BigInt wcode_expanded_length(const Automaton& constraint, const WCode& code);
// Flat word the code stands for, when its length does not exceed max_len.
std::optional<Word> expand_wcode(const Automaton& constraint, const WCode& code,
                                 const BigInt& max_len);

struct ConstrSyncResult {
  bool decision = false;
  std::optional<WCode> witness;
  std::optional<BigInt> expanded_length;
};

// Exact reference decision procedure: breadth-first search over pairs
// (image of the full state set, constraint state). Exponential in |Q| in the
// worst case; the ground truth the solver is tested against. Returns a
// shortest witness, re-encoded as a certificate.
ConstrSyncResult oracle(const Automaton& input, const Automaton& constraint);

// Replays a certificate, tracking the active set of the input automaton and
// the constraint state; pumps run through power_step. Polynomial in
// |Q| + code size. Throws on malformed codes, pump/state mismatches and
// connectors falling off the constraint.
bool verify_wcode(const Automaton& input, const Automaton& constraint, const WCode& code);

// Complete deterministic search over certificates with at most |P| segments:
// connectors are the words the constraint can read (length < |P|), candidate
// exponents are the indices of the distinct subset images along the loop
// generator's orbit. Agrees with the oracle on every instance.
ConstrSyncResult solve(const Automaton& input, const Automaton& constraint);

// Every reachable state with a nontrivial loop language has its access
// language contained in the suffixes of its loop language. Under this
// condition exponents below |Q| suffice and the search is polynomial for a
// fixed constraint.
bool p_case_applicable(const Automaton& constraint);

// `solve` with exponent candidates truncated to {0, ..., |Q|-1}; requires
// p_case_applicable.
ConstrSyncResult solve_p_case(const Automaton& input, const Automaton& constraint);

// Greedy re-encoding of a flat word as a certificate (maximal pump runs,
// connectors in between).
WCode encode_word_as_wcode(const Automaton& constraint, const Word& w);

}  // namespace polysync
