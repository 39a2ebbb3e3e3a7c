/* C interface to the ocnkit one-counter-net toolkit.
 *
 * Conventions:
 *   - Nets are opaque handles created by ocnkit_net_parse and released
 *     with ocnkit_net_free.
 *   - Every fallible function returns a status code (OCNKIT_OK on
 *     success); results come back through out-parameters.
 *   - Decision results are tri-state verdicts: positive, negative, or
 *     inconclusive (the engines are sound but work under counter caps).
 *   - Strings written to out-parameters are owned by the caller and must
 *     be released with ocnkit_string_free.
 */

#ifndef OCNKIT_H
#define OCNKIT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. */
#define OCNKIT_OK 0
#define OCNKIT_ERR_NULL_ARGUMENT 1 /* required pointer was NULL */
#define OCNKIT_ERR_INVALID_UTF8 2  /* input string was not UTF-8 */
#define OCNKIT_ERR_PARSE 3         /* text form did not parse */
#define OCNKIT_ERR_INVALID_INPUT 4 /* semantic precondition violated
                                      (unknown state/letter, input not
                                      history-deterministic, ...) */
#define OCNKIT_ERR_WRONG_KIND 5    /* operation unsupported for this input
                                      kind (e.g. history-determinism of a
                                      guarded automaton) */

/* Tri-state verdicts. */
#define OCNKIT_VERDICT_NEGATIVE 0
#define OCNKIT_VERDICT_POSITIVE 1
#define OCNKIT_VERDICT_INCONCLUSIVE 2

/* Opaque handle for a parsed input: a unary one-counter net ("ocn"), a
 * succinct net with binary-encoded deltas ("socn"), or a guarded
 * one-counter automaton ("oca"). */
typedef struct OcnkitNet OcnkitNet;

/* Releases a string previously written to an out-parameter. NULL is
 * accepted. */
void ocnkit_string_free(char *ptr);

/* Parses the text form. On success writes a fresh handle to *out. On
 * OCNKIT_ERR_PARSE writes a "line N: message" diagnostic to *out_error
 * when out_error is non-NULL. */
int ocnkit_net_parse(const char *text, OcnkitNet **out, char **out_error);

/* Releases a net handle. NULL is accepted. */
void ocnkit_net_free(OcnkitNet *net);

/* Writes the canonical text form to *out_text. */
int ocnkit_net_emit(const OcnkitNet *net, char **out_text);

/* Writes the input kind ("ocn", "socn", or "oca") to *out_kind. */
int ocnkit_net_kind(const OcnkitNet *net, char **out_kind);

/* Decides history-determinism of a net (unary or succinct; guarded
 * automata yield OCNKIT_ERR_WRONG_KIND). caps/caps_len give the
 * counter-cap schedule for the certified solver; pass NULL/0 for the
 * default. On a negative verdict, when out_witness is non-NULL and the
 * bounded refuter finds an adversary strategy, its rendering is written
 * to *out_witness. */
int ocnkit_check_hd(const OcnkitNet *net, const uint64_t *caps,
                    size_t caps_len, int *out_verdict, char **out_witness);

/* Exact membership of a word, given as space-separated letters (the
 * empty string is the empty word). *out_member becomes 0 or 1. Letters
 * outside the alphabet yield OCNKIT_ERR_INVALID_INPUT. */
int ocnkit_member(const OcnkitNet *net, const char *word, int *out_member);

/* Language inclusion / equivalence of two history-deterministic nets
 * over the same alphabet. Inputs that are not history-deterministic
 * yield OCNKIT_ERR_INVALID_INPUT. */
int ocnkit_include(const OcnkitNet *a, const OcnkitNet *b, int *out_verdict);
int ocnkit_equiv(const OcnkitNet *a, const OcnkitNet *b, int *out_verdict);

/* Universality of a history-deterministic net. */
int ocnkit_universal(const OcnkitNet *net, int *out_verdict);

/* Simulation between configurations: is (state_a, counter_a) of net a
 * simulated by (state_b, counter_b) of net b? Unknown states yield
 * OCNKIT_ERR_INVALID_INPUT. */
int ocnkit_simulates(const OcnkitNet *a, const char *state_a,
                     uint64_t counter_a, const OcnkitNet *b,
                     const char *state_b, uint64_t counter_b,
                     int *out_verdict);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OCNKIT_H */
