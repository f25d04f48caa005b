#ifndef SUBSHIFT_H
#define SUBSHIFT_H

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum SsStatus {
  SS_STATUS_OK = 0,
  SS_STATUS_NULL_POINTER = 1,
  SS_STATUS_INVALID_INPUT = 2,
  SS_STATUS_NON_PRIMITIVE = 3,
  SS_STATUS_HORIZON_EXCEEDED = 4,
  SS_STATUS_NOT_A_FACTOR = 5,
  SS_STATUS_INCOMPLETE = 6,
  SS_STATUS_COMPUTATION = 7,
  SS_STATUS_PANIC = 8,
} SsStatus;

/**
 * A factor language truncated at a horizon.
 */
typedef struct SsLanguage SsLanguage;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Language of a built-in preset, with factors up to length `horizon`.
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum SsStatus ss_language_from_preset(const char *name, size_t horizon, struct SsLanguage **out);

/**
 * Language of a source given as JSON (`{"alphabet": .., "rules": ..}` or
 * `{"periodic": ..}`).
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum SsStatus ss_language_from_json(const char *json, size_t horizon, struct SsLanguage **out);

/**
 * # Safety
 * `lang` must come from `ss_language_from_*` and not be used afterwards.
 */
void ss_language_free(struct SsLanguage *lang);

/**
 * Number of factors of length `k`.
 *
 * # Safety
 * `lang` must be a live handle and `out` a valid pointer.
 */
enum SsStatus ss_language_complexity(const struct SsLanguage *lang, size_t k, size_t *out);

/**
 * Is `word` a factor?
 *
 * # Safety
 * `lang` must be a live handle, `word` nul-terminated and `out` valid.
 */
enum SsStatus ss_language_contains(const struct SsLanguage *lang, const char *word, bool *out);

/**
 * Return words of `word` as JSON.
 *
 * # Safety
 * `lang` must be a live handle, `word` nul-terminated and `out` valid.
 * The string written to `out` must be released with `ss_string_free`.
 */
enum SsStatus ss_returns_json(const struct SsLanguage *lang,
                              const char *word,
                              size_t scan_budget,
                              char **out);

/**
 * Delayed return words of the split `left.right` as JSON.
 *
 * # Safety
 * As [`ss_returns_json`], with `left` and `right` nul-terminated.
 */
enum SsStatus ss_delayed_returns_json(const struct SsLanguage *lang,
                                      const char *left,
                                      const char *right,
                                      size_t scan_budget,
                                      char **out);

/**
 * Tree condition report for centers up to `max_center`, as JSON.
 *
 * # Safety
 * `lang` must be a live handle and `out` valid. Release the string with
 * `ss_string_free`.
 */
enum SsStatus ss_tree_json(const struct SsLanguage *lang, size_t max_center, char **out);

/**
 * Writes the cycle rank of `Σ_{2n}` for `n` in `lo..=hi` into `ranks`,
 * which must hold `hi - lo + 1` entries.
 *
 * # Safety
 * `lang` must be a live handle and `ranks` valid for `len` writes.
 */
enum SsStatus ss_rank_profile(const struct SsLanguage *lang,
                              size_t lo,
                              size_t hi,
                              size_t *ranks,
                              size_t len);

/**
 * Rauzy graph of the given order in DOT.
 *
 * # Safety
 * `lang` must be a live handle and `out` valid. Release the string with
 * `ss_string_free`.
 */
enum SsStatus ss_rauzy_dot(const struct SsLanguage *lang, size_t order, char **out);

/**
 * Is the set of `count` words a basis of the free group on the alphabet?
 *
 * # Safety
 * `lang` must be a live handle, `words` must point to `count`
 * nul-terminated strings and `out` must be valid.
 */
enum SsStatus ss_is_basis(const struct SsLanguage *lang,
                          const char *const *words,
                          size_t count,
                          bool *out);

/**
 * Rank of the subgroup generated by the positive words.
 *
 * # Safety
 * As [`ss_is_basis`].
 */
enum SsStatus ss_subgroup_rank(const struct SsLanguage *lang,
                               const char *const *words,
                               size_t count,
                               size_t *out);

/**
 * Runs the verification suite on a preset with default settings and the
 * given seed; writes the JSON report and whether every check passed.
 *
 * # Safety
 * `preset` must be nul-terminated; `out` and `passed` must be valid.
 */
enum SsStatus ss_verify_json(const char *preset, uint64_t seed, char **out, bool *passed);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void ss_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call on the same thread.
 */
const char *ss_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUBSHIFT_H */
