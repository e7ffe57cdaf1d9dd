#ifndef RESUMEKIT_H
#define RESUMEKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define RESUME_FORMAT_AUTO 0

#define RESUME_FORMAT_LINKEDIN 1

#define RESUME_FORMAT_GENERIC 2

typedef enum ResumeDocumentFormat {
  RESUME_DOCUMENT_FORMAT_LINKEDIN = 0,
  RESUME_DOCUMENT_FORMAT_GENERIC = 1,
} ResumeDocumentFormat;

typedef enum ResumeStatus {
  RESUME_STATUS_OK = 0,
  RESUME_STATUS_NULL_ARGUMENT = 1,
  RESUME_STATUS_INVALID_UTF8 = 2,
  RESUME_STATUS_INVALID_ARGUMENT = 3,
  RESUME_STATUS_MALFORMED_INPUT = 4,
  RESUME_STATUS_NOT_LINKEDIN_FORMAT = 5,
  RESUME_STATUS_STRUCTURE_ERROR = 6,
  RESUME_STATUS_CLASSIFIER_ERROR = 7,
  RESUME_STATUS_SCORER_ERROR = 8,
  RESUME_STATUS_PANIC = 99,
} ResumeStatus;

// Parsing pipeline with its section classifier.
typedef struct ResumeModel ResumeModel;

// Fitted lexical pair scorer.
typedef struct ResumeScorer ResumeScorer;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until
// the next failing call on the same thread; do not free.
const char *resume_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void resume_string_free(char *s);

// Pipeline with the built-in section model.
//
// # Safety
// `out` must be a valid pointer.
enum ResumeStatus resume_model_default(struct ResumeModel **out);

// Pipeline with a centroid model read from its text serialization.
//
// # Safety
// `model_text` must be a NUL-terminated string and `out` a valid pointer.
enum ResumeStatus resume_model_load(const char *model_text, struct ResumeModel **out);

// Text serialization of the built-in section model.
//
// # Safety
// `out_text` must be a valid pointer.
enum ResumeStatus resume_model_default_text(char **out_text);

// # Safety
// `model` must come from this library and not have been freed. Null is
// ignored.
void resume_model_free(struct ResumeModel *model);

// Parses one document into resume JSON. `format` is one of the
// `RESUME_FORMAT_*` constants. A null `model` uses the built-in one.
//
// # Safety
// `source_name` must be NUL-terminated, `bytes` must point to `len`
// readable bytes and `out_json` must be a valid pointer.
enum ResumeStatus resume_parse_document(const struct ResumeModel *model,
                                        const char *source_name,
                                        const uint8_t *bytes,
                                        size_t len,
                                        uint32_t format,
                                        char **out_json);

// Runs format detection with the default signature.
//
// # Safety
// `bytes` must point to `len` readable bytes and `out_format` must be a
// valid pointer.
enum ResumeStatus resume_detect_format(const uint8_t *bytes,
                                       size_t len,
                                       enum ResumeDocumentFormat *out_format);

// Fits a lexical scorer on `count` NUL-terminated texts.
//
// # Safety
// `texts` must point to `count` valid string pointers and `out` must be a
// valid pointer.
enum ResumeStatus resume_scorer_fit(const char *const *texts,
                                    size_t count,
                                    struct ResumeScorer **out);

// Similarity of two texts in [0, 1].
//
// # Safety
// `scorer` must be live, `a` and `b` NUL-terminated and `out_score` valid.
enum ResumeStatus resume_scorer_score(const struct ResumeScorer *scorer,
                                      const char *a,
                                      const char *b,
                                      double *out_score);

// # Safety
// `scorer` must come from this library and not have been freed. Null is
// ignored.
void resume_scorer_free(struct ResumeScorer *scorer);

// Ranks candidates with a lexical scorer fitted on the request.
//
// Request: `{"job_description": "...", "candidates": [{"candidate_id":
// "...", "experiences": ["..."]}]}`. Response: a JSON array of
// `{"candidate_id", "score", "rank"}` in rank order.
//
// # Safety
// `request_json` must be NUL-terminated and `out_json` a valid pointer.
enum ResumeStatus resume_rank_json(const char *request_json, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RESUMEKIT_H */
