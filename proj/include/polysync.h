/* polysync — C interface to the polycyclic constrained-synchronization
 * library. Opaque handles plus integer status codes; every function that can
 * fail returns a ps_status and leaves a message readable through
 * ps_last_error() (thread local). Strings handed out by the library are
 * released with ps_string_free, handles with their _free function.
 */
#ifndef POLYSYNC_H
#define POLYSYNC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ps_automaton ps_automaton;
typedef struct ps_instance ps_instance;

typedef enum ps_status {
  PS_OK = 0,
  PS_ERR_PARSE = 1,
  PS_ERR_KIND = 2,
  PS_ERR_BAD_WORD = 3,
  PS_ERR_BAD_CODE = 4,
  PS_ERR_NOT_POLYCYCLIC = 5,
  PS_ERR_ALPHABET_MISMATCH = 6,
  PS_ERR_UNDEFINED_TRANSITION = 7,
  PS_ERR_PUMP_STATE_MISMATCH = 8,
  PS_ERR_PCASE_NOT_APPLICABLE = 9,
  PS_ERR_EMPTY_TAIL = 10,
  PS_ERR_CRITERION = 11,
  PS_ERR_INVALID_ARGUMENT = 12,
  PS_ERR_INTERNAL = 13
} ps_status;

/* Message of the most recent failure on this thread; never NULL. */
const char *ps_last_error(void);
void ps_string_free(char *s);

/* ----- automata ----- */

ps_status ps_automaton_parse(const char *text, ps_automaton **out);
ps_status ps_automaton_format(const ps_automaton *a, char **out);
ps_status ps_automaton_to_dot(const ps_automaton *a, char **out);
void ps_automaton_free(ps_automaton *a);
int ps_automaton_state_count(const ps_automaton *a);
int ps_automaton_symbol_count(const ps_automaton *a);
/* 0 = dcsa, 1 = pdfa, 2 = nfa */
int ps_automaton_kind(const ps_automaton *a);

/* ----- unconstrained synchronization ----- */

ps_status ps_sync_check(const ps_automaton *a, int *synchronizing);
/* found = 0: no reset word; word/sink_name left NULL. */
ps_status ps_sync_word(const ps_automaton *a, int *found, char **word, char **sink_name);

/* ----- polycyclic automata ----- */

ps_status ps_poly_check(const ps_automaton *a, int *polycyclic);
/* One line per on-cycle state: "state <name> cycle <word> exponent <n>". */
ps_status ps_poly_skeleton(const ps_automaton *a, char **report);
ps_status ps_poly_complement(const ps_automaton *a, ps_automaton **out);
ps_status ps_poly_union(const ps_automaton *a, const ps_automaton *b, ps_automaton **out);
ps_status ps_poly_intersection(const ps_automaton *a, const ps_automaton *b, ps_automaton **out);
ps_status ps_poly_concat(const ps_automaton *a, const ps_automaton *b, ps_automaton **out);
ps_status ps_poly_quotient(const ps_automaton *a, const char *word, ps_automaton **out);

/* ----- constrained synchronization ----- */

/* mode: "auto", "search", "pcase" or "oracle". "auto" uses the polynomial
 * case when its condition holds and the certificate search otherwise; the
 * oracle is the only mode accepting non-polycyclic constraints and in "auto"
 * it is used only when allow_oracle is set. decision: 1 yes / 0 no. witness
 * receives the certificate text on yes (caller frees), expanded_length its
 * decimal flat length. Any of the out strings may be NULL when not wanted. */
ps_status ps_constr_solve(const ps_automaton *input, const ps_automaton *constraint,
                          const char *mode, int allow_oracle, int *decision, char **witness,
                          char **expanded_length);
ps_status ps_constr_verify(const ps_automaton *input, const ps_automaton *constraint,
                           const char *code, int *accepted);
ps_status ps_constr_pcase(const ps_automaton *constraint, int *applicable);
/* "P: ...", "NP-complete: ..." or "unknown: ..." */
ps_status ps_constr_classify(const ps_automaton *constraint, char **classification);
/* fits = 1 and *word set when the flat word is at most max_len symbols. */
ps_status ps_wcode_expand(const ps_automaton *constraint, const char *code, const char *max_len,
                          int *fits, char **word);

/* ----- set transporter and hardness reductions ----- */

ps_status ps_instance_parse(const char *text, ps_instance **out);
/* names: whitespace- or comma-separated state names. */
ps_status ps_instance_make(const ps_automaton *a, const char *source_names,
                           const char *target_names, ps_instance **out);
ps_status ps_instance_format(const ps_instance *inst, char **out);
void ps_instance_free(ps_instance *inst);

ps_status ps_reduce_disjointify(const ps_instance *inst, ps_instance **out);
ps_status ps_reduce_transport_word(const ps_instance *inst, int *found, char **word);
/* Builds the hardness gadget for a unary disjoint instance and the
 * constraint automaton for u v* {w}; either out pointer may be NULL. */
ps_status ps_reduce_gadget(const ps_instance *inst, const char *u, const char *v, const char *w,
                           ps_automaton **gadget, ps_automaton **constraint);
ps_status ps_reduce_batch(int count, int max_q, const char *u, const char *v, const char *w,
                          unsigned long long seed, int *all_agree, char **report);

#ifdef __cplusplus
}
#endif

#endif /* POLYSYNC_H */
