#ifndef SSTT_H
#define SSTT_H

/* C interface to the checker. Strings returned by the library belong to the
 * session and stay valid until the next call on the same session. A session
 * must not be used from two threads at once; separate sessions are
 * independent. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define SSTT_API __attribute__((visibility("default")))
#else
#define SSTT_API
#endif

typedef struct sstt_session sstt_session;

typedef enum {
  SSTT_OK = 0,
  SSTT_CHECK_FAILED = 1, /* a declaration failed, or the sequent is not entailed */
  SSTT_USAGE_ERROR = 2,  /* bad arguments or an unparsable sequent */
  SSTT_IO_ERROR = 3,
  SSTT_INTERNAL_ERROR = 4
} sstt_status;

SSTT_API const char* sstt_version(void);

SSTT_API sstt_session* sstt_session_create(void);
SSTT_API void sstt_session_destroy(sstt_session* s);

/* Definition unfoldings allowed per declaration; must be at least 1. */
SSTT_API sstt_status sstt_set_fuel(sstt_session* s, uint64_t fuel);

/* Each call replaces the session's report. */
SSTT_API sstt_status sstt_check_files(sstt_session* s, const char* const* paths, size_t count);
SSTT_API sstt_status sstt_check_corpus(sstt_session* s, const char* dir);
/* `ledger` may be NULL (no postulates allowed). */
SSTT_API sstt_status sstt_check_source(sstt_session* s, const char* text, const char* file_id, const char* ledger);

/* Deterministic JSON document for the last check. */
SSTT_API const char* sstt_report_json(sstt_session* s);
SSTT_API const char* sstt_report_text(sstt_session* s, int color);

/* `vars | hyp |- goal`. SSTT_OK when entailed; SSTT_CHECK_FAILED otherwise,
 * with the counter-model available from sstt_tope_result. */
SSTT_API sstt_status sstt_tope_query(sstt_session* s, const char* sequent);
SSTT_API const char* sstt_tope_result(sstt_session* s);

/* Message for the last non-OK, non-CHECK_FAILED status; "" otherwise. */
SSTT_API const char* sstt_last_error(sstt_session* s);

#ifdef __cplusplus
}
#endif

#endif
