/*
 * bairex C API: sup-norm-preserving extension of bounded functions sampled on
 * a subset of a finite metric space, via a truncated geometric series of
 * indicator steps with a certified error bound.
 *
 * All objects are opaque handles created and destroyed by this library.
 * Functions return BX_OK on success; on failure they return an error code and
 * leave a human-readable message in bx_last_error() (thread-local, valid
 * until the next failing call on the same thread). Strings returned through
 * char** are heap-allocated and must be released with bx_string_free().
 *
 * Documents are JSON: see the project README for the instance, result and
 * report schemas.
 */

#ifndef BAIREX_H
#define BAIREX_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bx_status {
    BX_OK = 0,
    BX_ERR_ARGUMENT = 1,   /* null handle or out-of-range argument */
    BX_ERR_PARSE = 2,      /* document is not valid JSON or violates the schema */
    BX_ERR_VALIDATION = 3, /* well-formed input that breaks a documented contract */
    BX_ERR_MISMATCH = 4,   /* result checked against an instance it does not fit */
    BX_ERR_INTERNAL = 5
} bx_status;

typedef struct bx_instance bx_instance;
typedef struct bx_result bx_result;
typedef struct bx_report bx_report;

const char* bx_version(void);
const char* bx_last_error(void);

/* --- problem instances ------------------------------------------------- */

bx_status bx_instance_parse(const char* json_text, bx_instance** out_instance);
void bx_instance_free(bx_instance* instance);

/* Option overrides (command-line flags take precedence over file options).
 * tolerance accepts decimal or fraction text ("1e-6", "1/1000000");
 * mode is "signed" or "positive"; arithmetic is "float" or "rational". */
bx_status bx_instance_set_tolerance(bx_instance* instance, const char* text);
bx_status bx_instance_set_mode(bx_instance* instance, const char* mode);
bx_status bx_instance_set_alpha(bx_instance* instance, unsigned alpha);
bx_status bx_instance_set_arithmetic(bx_instance* instance, const char* arithmetic);

/* --- extension results --------------------------------------------------- */

bx_status bx_extend(const bx_instance* instance, bx_result** out_result);
bx_status bx_result_parse(const char* json_text, bx_result** out_result);
bx_status bx_result_to_json(const bx_result* result, char** out_text);
void bx_result_free(bx_result* result);

/* --- verification -------------------------------------------------------- */

/* Produces a report even when checks fail; inspect bx_report_overall.
 * BX_ERR_MISMATCH means the result does not belong to the instance. */
bx_status bx_verify(const bx_instance* instance, const bx_result* result,
                    bx_report** out_report);
/* 1 when every check passed, 0 otherwise, -1 on a null handle. */
int bx_report_overall(const bx_report* report);
bx_status bx_report_to_json(const bx_report* report, char** out_text);
void bx_report_free(bx_report* report);

/* --- plot data ------------------------------------------------------------ */

/* Comma-separated table (id, coordinates, in-domain flag, input value,
 * extended value, partial sums); requires a coordinate-backed space. */
bx_status bx_plot_table(const bx_instance* instance, const bx_result* result,
                        char** out_text);

void bx_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* BAIREX_H */
