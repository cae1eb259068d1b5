#pragma once

#include <boost/dynamic_bitset.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polysync {

// Bitset over the state ids of one automaton; width must equal n_states.
using StateSet = boost::dynamic_bitset<>;

// A word is a sequence of symbol ids relative to some alphabet (empty = epsilon).
using Word = std::vector<int>;

enum class Kind {
  Dcsa,  // deterministic complete semi-automaton: exactly one successor per cell
  Pdfa,  // partial deterministic: at most one successor per cell, initial required
  Nfa,   // arbitrary successor sets, initial required
};

enum class Errc {
  parse,
  kind_violation,
  bad_word,
  bad_code,
  not_polycyclic,
  alphabet_mismatch,
  undefined_transition,
  pump_state_mismatch,
  pcase_not_applicable,
  empty_tail_language,
  criterion_failure,
  invalid_argument,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

// Ordered list of distinct printable tokens; list order fixes the symbol ids.
struct Alphabet {
  std::vector<std::string> names;

  int size() const { return static_cast<int>(names.size()); }
  int index_of(const std::string& token) const;
  bool operator==(const Alphabet&) const = default;
};

struct Automaton {
  Kind kind = Kind::Nfa;
  Alphabet alphabet;
  int n_states = 0;
  std::vector<std::string> state_names;
  // Successor sets, indexed state * |alphabet| + symbol; each sorted ascending.
  std::vector<std::vector<int>> succ;
  std::optional<int> initial;
  StateSet finals;

  const std::vector<int>& successors(int state, int sym) const {
    return succ[static_cast<size_t>(state) * alphabet.size() + sym];
  }
  std::vector<int>& successors(int state, int sym) {
    return succ[static_cast<size_t>(state) * alphabet.size() + sym];
  }

  // Single successor of a deterministic automaton; -1 when undefined.
  int dnext(int state, int sym) const;
  // Runs a word from one state; -1 as soon as a transition is missing.
  int dstep(int state, const Word& w) const;

  bool is_final(int state) const { return finals.test(state); }
  bool is_deterministic() const;  // at most one successor everywhere
  bool is_complete() const;       // exactly one successor everywhere
  bool has_initial() const { return initial.has_value(); }

  // Membership from the initial state (works for all kinds).
  bool accepts(const Word& w) const;

  StateSet empty_set() const { return StateSet(n_states); }
  StateSet all_states() const {
    StateSet s(n_states);
    s.set();
    return s;
  }
  StateSet singleton(int q) const {
    StateSet s(n_states);
    s.set(q);
    return s;
  }

  int state_index(const std::string& name) const;
  void add_transition(int from, int sym, int to);

  // Checks the declared-kind and range invariants; throws Error on violation.
  void validate() const;
};

// Empty automaton of the given kind with default-constructed tables sized for
// n states over the given alphabet. State names q0..q{n-1} unless provided.
Automaton new_automaton(Kind kind, Alphabet alphabet, int n_states,
                        std::vector<std::string> state_names = {});

// Derives a state name not yet in `taken` by appending ' marks to `base`.
std::string fresh_name(const std::vector<std::string>& taken, const std::string& base);

}  // namespace polysync
