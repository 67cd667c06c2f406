#ifndef DPZ_DPZ_H
#define DPZ_DPZ_H

/* C interface to the dpz library. All functions return a dpz_status; on
 * failure dpz_last_error() describes the problem for the calling thread. */

#include <stdint.h>

#if defined(DPZ_BUILDING_LIBRARY)
#define DPZ_API __attribute__((visibility("default")))
#else
#define DPZ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dpz_status {
  DPZ_OK = 0,
  DPZ_ERR_INTERNAL = 1,
  DPZ_ERR_CONFIG = 2,
  DPZ_ERR_BUDGET = 3,
  DPZ_ERR_MODEL = 4
} dpz_status;

typedef struct dpz_model dpz_model;
typedef struct dpz_report dpz_report;

/* Message of the last failure on this thread; empty after success. */
DPZ_API const char* dpz_last_error(void);

DPZ_API dpz_status dpz_model_canonical(uint64_t q, int r, dpz_model** out);
/* Model text: "q p n", "r", then r lines "x y x' y'". */
DPZ_API dpz_status dpz_model_parse(const char* text, dpz_model** out);
DPZ_API dpz_status dpz_model_load(const char* path, dpz_model** out);
DPZ_API void dpz_model_free(dpz_model* model);

/* Writes the decimal count of section pairs (and of morphisms) into freshly
 * allocated strings released with dpz_free_string. mode is "naive" or
 * "accelerated"; budget 0 selects the default. */
DPZ_API dpz_status dpz_count_sections(const dpz_model* model, uint64_t a, uint64_t a_prime, const uint64_t* k,
                                      const char* mode, uint64_t budget, unsigned threads, char** sections,
                                      char** morphisms);

DPZ_API dpz_status dpz_closed_points_count(uint64_t q, uint64_t m, char** out);

/* Exact "num/den" of the Tamagawa number truncated at degree D. */
DPZ_API dpz_status dpz_tamagawa(int r, uint64_t q, uint64_t D, char** out);

/* Runs a flat key=value configuration (one pair per line). */
DPZ_API dpz_status dpz_run(const char* config_text, dpz_report** out);
/* Renders a report as "csv" or "json". */
DPZ_API dpz_status dpz_report_text(const dpz_report* report, const char* format, char** out);
DPZ_API void dpz_report_free(dpz_report* report);

DPZ_API void dpz_free_string(char* s);

#ifdef __cplusplus
}
#endif

#endif
