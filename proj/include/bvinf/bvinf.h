#ifndef BVINF_H
#define BVINF_H

/* C interface to the bvinf library. All strings are UTF-8. Strings returned
   through char** out-parameters are owned by the caller and released with
   bvinf_string_free. */

#include <stdint.h>

#if defined(BVINF_BUILDING_LIBRARY)
#define BVINF_API __attribute__((visibility("default")))
#else
#define BVINF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bvinf_status {
  BVINF_OK = 0,
  BVINF_CHECK_FAILED = 1,
  BVINF_INPUT_ERROR = 2,
  BVINF_INTERNAL_ERROR = 3
} bvinf_status;

typedef struct bvinf_problem bvinf_problem;
typedef struct bvinf_report bvinf_report;

/* Negative values mean "use the value stored in the problem". */
typedef struct bvinf_options {
  int arity_cap;
  int degree_cap;
  int n_max;
  int has_seed;
  uint64_t seed;
  const char* cdga;    /* mc: test cdga name, or NULL */
  const char* element; /* mc: JSON array [[c, a, "p/q"], ...], or NULL */
  const char* inputs;  /* brackets: ';'-separated inputs, or NULL */
} bvinf_options;

BVINF_API const char* bvinf_version(void);
/* Message of the last failed call on this thread ("" if none). */
BVINF_API const char* bvinf_last_error(void);
BVINF_API void bvinf_options_init(bvinf_options* opts);
BVINF_API void bvinf_string_free(char* s);

BVINF_API bvinf_status bvinf_problem_parse(const char* json_text, bvinf_problem** out);
BVINF_API bvinf_status bvinf_problem_load(const char* path, bvinf_problem** out);
BVINF_API bvinf_status bvinf_problem_fixture(const char* name, bvinf_problem** out);
/* Newline-separated fixture names. */
BVINF_API bvinf_status bvinf_fixture_names(char** out);
BVINF_API bvinf_status bvinf_problem_serialize(const bvinf_problem* p, char** out);
BVINF_API void bvinf_problem_free(bvinf_problem* p);

/* command: check, brackets, mc, degeneration, transfer, main-theorem.
   Returns the command's exit status; *out is set whenever a report exists
   (also for failed checks and input errors detected by the command). */
BVINF_API bvinf_status bvinf_run(const bvinf_problem* p, const char* command, const bvinf_options* opts,
                                 bvinf_report** out);
BVINF_API int bvinf_report_exit_code(const bvinf_report* r);
/* format: "human" or "machine". */
BVINF_API bvinf_status bvinf_report_render(const bvinf_report* r, const char* format, char** out);
BVINF_API void bvinf_report_free(bvinf_report* r);

/* Report for an error raised outside bvinf_run (e.g. while loading). */
BVINF_API bvinf_status bvinf_error_report(const char* command, int exit_code, const char* message,
                                          bvinf_report** out);

#ifdef __cplusplus
}
#endif

#endif
