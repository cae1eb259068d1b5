#include "polysync.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <sstream>

#include "polysync/io.hpp"
#include "polysync/reductions.hpp"
#include "polysync/sync.hpp"

using namespace polysync;

struct ps_automaton {
  Automaton a;
};

struct ps_instance {
  SetTransporterInstance inst;
};

namespace {

thread_local std::string g_last_error = "no error";

ps_status map_errc(Errc code) {
  switch (code) {
    case Errc::parse: return PS_ERR_PARSE;
    case Errc::kind_violation: return PS_ERR_KIND;
    case Errc::bad_word: return PS_ERR_BAD_WORD;
    case Errc::bad_code: return PS_ERR_BAD_CODE;
    case Errc::not_polycyclic: return PS_ERR_NOT_POLYCYCLIC;
    case Errc::alphabet_mismatch: return PS_ERR_ALPHABET_MISMATCH;
    case Errc::undefined_transition: return PS_ERR_UNDEFINED_TRANSITION;
    case Errc::pump_state_mismatch: return PS_ERR_PUMP_STATE_MISMATCH;
    case Errc::pcase_not_applicable: return PS_ERR_PCASE_NOT_APPLICABLE;
    case Errc::empty_tail_language: return PS_ERR_EMPTY_TAIL;
    case Errc::criterion_failure: return PS_ERR_CRITERION;
    case Errc::invalid_argument: return PS_ERR_INVALID_ARGUMENT;
    case Errc::internal: return PS_ERR_INTERNAL;
  }
  return PS_ERR_INTERNAL;
}

template <typename Fn>
ps_status guarded(Fn&& fn) {
  try {
    fn();
    return PS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_errc(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PS_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_out(char** slot, const std::string& s) {
  if (slot) *slot = dup_string(s);
}

ps_status check_null(const void* p) {
  if (p) return PS_OK;
  g_last_error = "null argument";
  return PS_ERR_INVALID_ARGUMENT;
}

Alphabet infer_alphabet(std::initializer_list<const char*> words) {
  std::vector<std::string> tokens;
  bool dotted = false;
  for (const char* w : words)
    if (w && std::strchr(w, '.')) dotted = true;
  for (const char* w : words) {
    if (!w) continue;
    std::string s(w);
    if (s == "-" || s.empty()) continue;
    if (dotted) {
      std::stringstream ss(s);
      std::string tok;
      while (std::getline(ss, tok, '.'))
        if (!tok.empty()) tokens.push_back(tok);
    } else {
      for (char c : s) tokens.push_back(std::string(1, c));
    }
  }
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  if (tokens.empty()) fail(Errc::bad_word, "cannot infer an alphabet from empty words");
  return Alphabet{tokens};
}

}  // namespace

extern "C" {

const char* ps_last_error(void) { return g_last_error.c_str(); }

void ps_string_free(char* s) { std::free(s); }

ps_status ps_automaton_parse(const char* text, ps_automaton** out) {
  if (auto st = check_null(text); st != PS_OK) return st;
  if (auto st = check_null(out); st != PS_OK) return st;
  return guarded([&] { *out = new ps_automaton{parse_automaton(text)}; });
}

ps_status ps_automaton_format(const ps_automaton* a, char** out) {
  if (auto st = check_null(a); st != PS_OK) return st;
  if (auto st = check_null(out); st != PS_OK) return st;
  return guarded([&] { *out = dup_string(format_automaton(a->a)); });
}

ps_status ps_automaton_to_dot(const ps_automaton* a, char** out) {
  if (auto st = check_null(a); st != PS_OK) return st;
  if (auto st = check_null(out); st != PS_OK) return st;
  return guarded([&] { *out = dup_string(to_dot(a->a)); });
}

void ps_automaton_free(ps_automaton* a) { delete a; }

int ps_automaton_state_count(const ps_automaton* a) { return a ? a->a.n_states : 0; }

int ps_automaton_symbol_count(const ps_automaton* a) { return a ? a->a.alphabet.size() : 0; }

int ps_automaton_kind(const ps_automaton* a) {
  if (!a) return -1;
  switch (a->a.kind) {
    case Kind::Dcsa: return 0;
    case Kind::Pdfa: return 1;
    case Kind::Nfa: return 2;
  }
  return -1;
}

ps_status ps_sync_check(const ps_automaton* a, int* synchronizing) {
  if (auto st = check_null(a); st != PS_OK) return st;
  if (auto st = check_null(synchronizing); st != PS_OK) return st;
  return guarded([&] { *synchronizing = is_synchronizing(a->a) ? 1 : 0; });
}

ps_status ps_sync_word(const ps_automaton* a, int* found, char** word, char** sink_name) {
  if (auto st = check_null(a); st != PS_OK) return st;
  if (auto st = check_null(found); st != PS_OK) return st;
  return guarded([&] {
    auto witness = synchronizing_word(a->a);
    *found = witness ? 1 : 0;
    if (word) *word = nullptr;
    if (sink_name) *sink_name = nullptr;
    if (witness) {
      set_out(word, format_word(a->a.alphabet, witness->word));
      set_out(sink_name, a->a.state_names[witness->sink]);
    }
  });
}

ps_status ps_poly_check(const ps_automaton* a, int* polycyclic) {
  if (auto st = check_null(a); st != PS_OK) return st;
  if (auto st = check_null(polycyclic); st != PS_OK) return st;
  return guarded([&] { *polycyclic = is_polycyclic(a->a) ? 1 : 0; });
}

ps_status ps_poly_skeleton(const ps_automaton* a, char** report) {
  if (auto st = check_null(a); st != PS_OK) return st;
  if (auto st = check_null(report); st != PS_OK) return st;
  return guarded([&] {
    PolycyclicSkeleton sk = skeleton(a->a);
    std::ostringstream out;
    for (const auto& [p, info] : sk.cycle_info)
      out << "state " << a->a.state_names[p] << " cycle "
          << format_word(a->a.alphabet, info.cycle_word) << " exponent " << info.loop_exponent
          << "\n";
    *report = dup_string(out.str());
  });
}

ps_status ps_poly_complement(const ps_automaton* a, ps_automaton** out) {
  if (auto st = check_null(a); st != PS_OK) return st;
  if (auto st = check_null(out); st != PS_OK) return st;
  return guarded([&] { *out = new ps_automaton{complement_pc(a->a)}; });
}

ps_status ps_poly_union(const ps_automaton* a, const ps_automaton* b, ps_automaton** out) {
  if (auto st = check_null(a); st != PS_OK) return st;
  if (auto st = check_null(b); st != PS_OK) return st;
  if (auto st = check_null(out); st != PS_OK) return st;
  return guarded([&] { *out = new ps_automaton{union_pc(a->a, b->a)}; });
}

ps_status ps_poly_intersection(const ps_automaton* a, const ps_automaton* b, ps_automaton** out) {
  if (auto st = check_null(a); st != PS_OK) return st;
  if (auto st = check_null(b); st != PS_OK) return st;
  if (auto st = check_null(out); st != PS_OK) return st;
  return guarded([&] { *out = new ps_automaton{intersection_pc(a->a, b->a)}; });
}

ps_status ps_poly_concat(const ps_automaton* a, const ps_automaton* b, ps_automaton** out) {
  if (auto st = check_null(a); st != PS_OK) return st;
  if (auto st = check_null(b); st != PS_OK) return st;
  if (auto st = check_null(out); st != PS_OK) return st;
  return guarded([&] { *out = new ps_automaton{concat_pc(a->a, b->a)}; });
}

ps_status ps_poly_quotient(const ps_automaton* a, const char* word, ps_automaton** out) {
  if (auto st = check_null(a); st != PS_OK) return st;
  if (auto st = check_null(word); st != PS_OK) return st;
  if (auto st = check_null(out); st != PS_OK) return st;
  return guarded([&] {
    Word u = parse_word(a->a.alphabet, word);
    *out = new ps_automaton{quotient_pc(a->a, u)};
  });
}

ps_status ps_constr_solve(const ps_automaton* input, const ps_automaton* constraint,
                          const char* mode, int allow_oracle, int* decision, char** witness,
                          char** expanded_length) {
  if (auto st = check_null(input); st != PS_OK) return st;
  if (auto st = check_null(constraint); st != PS_OK) return st;
  if (auto st = check_null(decision); st != PS_OK) return st;
  return guarded([&] {
    std::string m = mode ? mode : "auto";
    ConstrSyncResult res;
    if (m == "oracle") {
      res = oracle(input->a, constraint->a);
    } else if (m == "search") {
      res = solve(input->a, constraint->a);
    } else if (m == "pcase") {
      res = solve_p_case(input->a, constraint->a);
    } else if (m == "auto") {
      bool poly = false;
      try {
        poly = is_polycyclic(constraint->a);
      } catch (const Error&) {
      }
      if (poly)
        res = p_case_applicable(constraint->a) ? solve_p_case(input->a, constraint->a)
                                               : solve(input->a, constraint->a);
      else if (allow_oracle)
        res = oracle(input->a, constraint->a);
      else
        fail(Errc::not_polycyclic,
             "constraint is not polycyclic; only the oracle can decide it");
    } else {
      fail(Errc::invalid_argument, "unknown mode '" + m + "'");
    }
    *decision = res.decision ? 1 : 0;
    if (witness) *witness = nullptr;
    if (expanded_length) *expanded_length = nullptr;
    if (res.decision && res.witness) set_out(witness, format_wcode(constraint->a, *res.witness));
    if (res.decision && res.expanded_length)
      set_out(expanded_length, res.expanded_length->str());
  });
}

ps_status ps_constr_verify(const ps_automaton* input, const ps_automaton* constraint,
                           const char* code, int* accepted) {
  if (auto st = check_null(input); st != PS_OK) return st;
  if (auto st = check_null(constraint); st != PS_OK) return st;
  if (auto st = check_null(code); st != PS_OK) return st;
  if (auto st = check_null(accepted); st != PS_OK) return st;
  return guarded([&] {
    WCode c = parse_wcode(constraint->a, code);
    *accepted = verify_wcode(input->a, constraint->a, c) ? 1 : 0;
  });
}

ps_status ps_constr_pcase(const ps_automaton* constraint, int* applicable) {
  if (auto st = check_null(constraint); st != PS_OK) return st;
  if (auto st = check_null(applicable); st != PS_OK) return st;
  return guarded([&] { *applicable = p_case_applicable(constraint->a) ? 1 : 0; });
}

ps_status ps_constr_classify(const ps_automaton* constraint, char** classification) {
  if (auto st = check_null(constraint); st != PS_OK) return st;
  if (auto st = check_null(classification); st != PS_OK) return st;
  return guarded([&] {
    Classification c = classify_constraint(constraint->a);
    std::string label = c.cls == ConstraintClass::poly_time      ? "P"
                        : c.cls == ConstraintClass::np_complete ? "NP-complete"
                                                                 : "unknown";
    *classification = dup_string(label + ": " + c.detail);
  });
}

ps_status ps_wcode_expand(const ps_automaton* constraint, const char* code, const char* max_len,
                          int* fits, char** word) {
  if (auto st = check_null(constraint); st != PS_OK) return st;
  if (auto st = check_null(code); st != PS_OK) return st;
  if (auto st = check_null(max_len); st != PS_OK) return st;
  if (auto st = check_null(fits); st != PS_OK) return st;
  return guarded([&] {
    std::string digits(max_len);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      fail(Errc::invalid_argument, "max_len must be a decimal number");
    WCode c = parse_wcode(constraint->a, code);
    auto flat = expand_wcode(constraint->a, c, BigInt(digits));
    *fits = flat ? 1 : 0;
    if (word) *word = nullptr;
    if (flat) set_out(word, format_word(constraint->a.alphabet, *flat));
  });
}

ps_status ps_instance_parse(const char* text, ps_instance** out) {
  if (auto st = check_null(text); st != PS_OK) return st;
  if (auto st = check_null(out); st != PS_OK) return st;
  return guarded([&] { *out = new ps_instance{parse_instance(text)}; });
}

ps_status ps_instance_make(const ps_automaton* a, const char* source_names,
                           const char* target_names, ps_instance** out) {
  if (auto st = check_null(a); st != PS_OK) return st;
  if (auto st = check_null(source_names); st != PS_OK) return st;
  if (auto st = check_null(target_names); st != PS_OK) return st;
  if (auto st = check_null(out); st != PS_OK) return st;
  return guarded([&] {
    auto split = [](const char* s) {
      std::vector<std::string> names;
      std::string cur;
      for (const char* p = s; *p; ++p) {
        if (std::isspace(static_cast<unsigned char>(*p)) || *p == ',') {
          if (!cur.empty()) names.push_back(cur);
          cur.clear();
        } else {
          cur += *p;
        }
      }
      if (!cur.empty()) names.push_back(cur);
      return names;
    };
    *out = new ps_instance{make_instance(a->a, split(source_names), split(target_names))};
  });
}

ps_status ps_instance_format(const ps_instance* inst, char** out) {
  if (auto st = check_null(inst); st != PS_OK) return st;
  if (auto st = check_null(out); st != PS_OK) return st;
  return guarded([&] { *out = dup_string(format_instance(inst->inst)); });
}

void ps_instance_free(ps_instance* inst) { delete inst; }

ps_status ps_reduce_disjointify(const ps_instance* inst, ps_instance** out) {
  if (auto st = check_null(inst); st != PS_OK) return st;
  if (auto st = check_null(out); st != PS_OK) return st;
  return guarded([&] { *out = new ps_instance{disjointify(inst->inst)}; });
}

ps_status ps_reduce_transport_word(const ps_instance* inst, int* found, char** word) {
  if (auto st = check_null(inst); st != PS_OK) return st;
  if (auto st = check_null(found); st != PS_OK) return st;
  return guarded([&] {
    auto w = set_transporter_bruteforce(inst->inst);
    *found = w ? 1 : 0;
    if (word) *word = nullptr;
    if (w) set_out(word, format_word(inst->inst.aut.alphabet, *w));
  });
}

ps_status ps_reduce_gadget(const ps_instance* inst, const char* u, const char* v, const char* w,
                           ps_automaton** gadget, ps_automaton** constraint) {
  if (auto st = check_null(inst); st != PS_OK) return st;
  if (auto st = check_null(u); st != PS_OK) return st;
  if (auto st = check_null(v); st != PS_OK) return st;
  if (auto st = check_null(w); st != PS_OK) return st;
  return guarded([&] {
    Alphabet sigma = infer_alphabet({u, v, w});
    Word wu = parse_word(sigma, u), wv = parse_word(sigma, v), ww = parse_word(sigma, w);
    HardnessTriple triple{wu, wv, single_word_automaton(sigma, ww)};
    if (gadget) *gadget = new ps_automaton{build_hardness_gadget(inst->inst, triple, ww)};
    if (constraint) *constraint = new ps_automaton{build_uvw_constraint(sigma, wu, wv, ww)};
  });
}

ps_status ps_reduce_batch(int count, int max_q, const char* u, const char* v, const char* w,
                          unsigned long long seed, int* all_agree, char** report) {
  if (auto st = check_null(u); st != PS_OK) return st;
  if (auto st = check_null(v); st != PS_OK) return st;
  if (auto st = check_null(w); st != PS_OK) return st;
  return guarded([&] {
    Alphabet sigma = infer_alphabet({u, v, w});
    BatchReport r = gadget_equivalence_batch(count, max_q, parse_word(sigma, u),
                                             parse_word(sigma, v), parse_word(sigma, w), sigma,
                                             seed);
    if (all_agree) *all_agree = r.all_agree() ? 1 : 0;
    if (report) *report = dup_string(r.to_text());
  });
}

}  // extern "C"
