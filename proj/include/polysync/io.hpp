#pragma once

#include <string>
#include <string_view>

#include "polysync/automaton.hpp"

namespace polysync {

// Text format, one datum per line, `#` lines are comments:
//
//   kind: dcsa | pdfa | nfa
//   alphabet: a b
//   states: q1 q2 q3      (declaration order = id order)
//   initial: q1           (optional for dcsa)
//   final: q3              (zero or more names; line may be omitted)
//   trans: q1 a q2         (one line per transition triple)
//
// Syntax errors report line and column; the declared kind is validated.
Automaton parse_automaton(std::string_view text);

// Canonical serialization: fixed line order, transitions sorted by
// (source id, symbol id, target id). A fixed point of itself.
std::string format_automaton(const Automaton& a);

// Graphviz export for visualization; not intended to be byte-stable.
std::string to_dot(const Automaton& a);

// Word syntax: "-" or "" is the empty word; tokens joined with '.' always
// work; when every alphabet token is a single character the separators may
// be dropped ("ba").
Word parse_word(const Alphabet& alphabet, std::string_view text);
std::string format_word(const Alphabet& alphabet, const Word& w);

}  // namespace polysync
