/* C interface to counterlab.  Machines are opaque handles; results are
 * returned as JSON strings owned by the caller (release with cl_string_free).
 * Every call returns a status; on failure cl_last_error() describes it. */
#ifndef COUNTERLAB_H
#define COUNTERLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CL_API __declspec(dllexport)
#else
#define CL_API __attribute__((visibility("default")))
#endif

typedef struct cl_machine cl_machine_t;

typedef enum cl_status {
  CL_OK = 0,
  CL_ERR_SYNTAX = 1,   /* malformed machine document */
  CL_ERR_INVALID = 2,  /* document parsed but violates an invariant */
  CL_ERR_ARGUMENT = 3, /* bad argument or unsupported operation */
  CL_ERR_IO = 4,
  CL_ERR_INTERNAL = 5
} cl_status;

/* Message of the last failing call on this thread; never NULL. */
CL_API const char* cl_last_error(void);
CL_API const char* cl_version(void);
CL_API void cl_string_free(char* s);

CL_API cl_status cl_machine_parse(const char* json, cl_machine_t** out);
CL_API cl_status cl_machine_load(const char* path, cl_machine_t** out);
CL_API void cl_machine_free(cl_machine_t* m);
CL_API cl_status cl_machine_to_json(const cl_machine_t* m, char** out);

/* Verdict of m on input; cap 0 selects the default step cap. */
CL_API cl_status cl_run(const cl_machine_t* m, const char* input, uint64_t cap, int count_paths, char** out);

/* op: "pair" | "reduce4" | "reduce3pd" | "eliminate"; params is a JSON
 * object ({"pair":[a,b]} 0-based, {"p":N}, {"max_len":L}, {"ceiling":r}) or NULL. */
CL_API cl_status cl_transform(const cl_machine_t* m, const char* op, const char* params, cl_machine_t** out);

/* options: {"mode":"exact"|"guess","seed":S,"pd":bool,"cap":N,"layers":r} or NULL. */
CL_API cl_status cl_complement(const cl_machine_t* m, const char* input, const char* options, char** out);

/* Compares verdicts on all inputs up to max_len (or, when family is not
 * NULL, on the promised instances of that family at the given index). */
CL_API cl_status cl_check_equiv(const cl_machine_t* a, const cl_machine_t* b, uint32_t max_len, uint64_t cap,
                                const char* family, uint64_t index, char** out);

/* sc, ssc (pushdown only), counters and mode. */
CL_API cl_status cl_report(const cl_machine_t* m, char** out);

/* Interval space of a pushdown machine on input with runtime bound t_x:
 * its dimensions and, when index is not UINT64_MAX, the interval at index. */
CL_API cl_status cl_intervals(const cl_machine_t* m, const char* input, uint64_t t_x, uint64_t index, char** out);

#ifdef __cplusplus
}
#endif

#endif
