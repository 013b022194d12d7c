#ifndef NFM_NFM_H
#define NFM_NFM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define NFM_API __declspec(dllexport)
#else
#define NFM_API __attribute__((visibility("default")))
#endif

typedef enum nfm_status {
  NFM_OK = 0,
  NFM_EVAL_ERROR = 1,
  NFM_PARSE_ERROR = 2,
  NFM_IO_ERROR = 3,
  NFM_INVALID_ARGUMENT = 4
} nfm_status;

typedef struct nfm_options {
  size_t print_limit; /* 0 = no limit */
  int load_stdlib;
} nfm_options;

typedef struct nfm_interp nfm_interp;

/* Receives one rendered output line (no trailing newline). */
typedef void (*nfm_sink)(void* user, const char* line, size_t len);

NFM_API nfm_options nfm_options_default(void);
NFM_API nfm_interp* nfm_create(const nfm_options* options);
NFM_API void nfm_destroy(nfm_interp* interp);

NFM_API void nfm_set_output(nfm_interp* interp, nfm_sink sink, void* user);

/* Evaluates every top-level form in `src`. With `keep_going` non-zero,
 * errors are written to the sink and evaluation continues; the status is
 * that of the first error. */
NFM_API nfm_status nfm_exec(nfm_interp* interp, const char* src, size_t len, int keep_going);

/* Message of the most recent failing call, "" if none. Owned by `interp`. */
NFM_API const char* nfm_last_error(const nfm_interp* interp);

/* 1 when `src` is complete input (no unclosed group), else 0. */
NFM_API int nfm_input_complete(const char* src, size_t len);

/* Runs the golden cases in `dir`. The report goes to `sink`, one line per
 * case plus a summary. NFM_OK iff every case passes. */
NFM_API nfm_status nfm_run_golden(const char* dir, const nfm_options* options, nfm_sink sink, void* user);

NFM_API const char* nfm_version(void);

#ifdef __cplusplus
}
#endif

#endif
