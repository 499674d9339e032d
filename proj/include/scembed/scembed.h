#ifndef SCEMBED_H
#define SCEMBED_H

/* C interface to the scembed library. Strings passed in are NUL-terminated
   UTF-8; strings handed out must be released with sce_free. Every call
   returns an sce_status; on failure sce_last_error() describes it (per
   thread, valid until the next failing call on that thread). */

#include <stddef.h>

#if defined(_WIN32)
#define SCE_API __declspec(dllexport)
#else
#define SCE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sce_status {
  SCE_OK = 0,
  SCE_VERIFY_FAILED = 1,
  SCE_INPUT_ERROR = 2,
  SCE_CAP_EXCEEDED = 3,
  SCE_INTERNAL = 4
} sce_status;

typedef struct sce_session sce_session;

SCE_API const char* sce_version(void);
SCE_API const char* sce_last_error(void);
SCE_API void sce_free(char* s);

/* config_json may be NULL for relaxed defaults. */
SCE_API sce_status sce_session_create(const char* config_json, sce_session** out);
SCE_API void sce_session_destroy(sce_session* session);

/* Sets one config key to a JSON value, e.g. ("max_stage", "2"). */
SCE_API sce_status sce_session_set(sce_session* session, const char* key, const char* json_value);
SCE_API sce_status sce_session_config_json(const sce_session* session, char** out);

/* command: family, nets, label, present, verify or pipeline. Returns
   SCE_VERIFY_FAILED when the run completed but a check failed. */
SCE_API sce_status sce_run(sce_session* session, const char* command);
/* Summary of the last sce_run ("{}" before the first). */
SCE_API sce_status sce_session_report_json(const sce_session* session, char** out);

/* Word primitives over the alphabet a, b, A = a^-1, B = b^-1. */
SCE_API sce_status sce_is_aperiodic(const char* word, unsigned exponent, int* out);
SCE_API sce_status sce_free_reduce(const char* word, char** out);
SCE_API sce_status sce_lcf_cyclic(const char* u, const char* v, size_t* out);
/* words: count cyclically reduced words; lambda as "p/q". out is 1 if the
   family satisfies the condition. */
SCE_API sce_status sce_check_cstar(const char* const* words, size_t count, const char* lambda, int* out);

#ifdef __cplusplus
}
#endif

#endif
