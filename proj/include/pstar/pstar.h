// Copyright 2026 The pstar Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PSTAR_PSTAR_H
#define PSTAR_PSTAR_H

/* C interface to libpstar.
 *
 * Objects are opaque handles created from JSON text and released with the
 * matching *_free function. Every call returns a pstar_status; on failure
 * pstar_last_error() describes the problem (per thread). Strings returned
 * through char** out-parameters are owned by the caller and released with
 * pstar_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PSTAR_BUILDING)
#    define PSTAR_API __declspec(dllexport)
#  else
#    define PSTAR_API __declspec(dllimport)
#  endif
#else
#  define PSTAR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pstar_status {
  PSTAR_OK = 0,
  PSTAR_MALFORMED_INPUT,
  PSTAR_DIMENSION_MISMATCH,
  PSTAR_NOT_HERMITIAN,
  PSTAR_NOT_PSD,
  PSTAR_NOT_COMMUTING,
  PSTAR_NOT_IN_GAMMA,
  PSTAR_ZERO_ELEMENT,
  PSTAR_NOT_IN_DOMAIN,
  PSTAR_NOT_HERMITIAN_SYMMETRIC,
  PSTAR_NOT_A_REPRESENTATION,
  PSTAR_PARTIAL_PRODUCT_UNDEFINED,
  PSTAR_NOT_COMPLETELY_POSITIVE,
  PSTAR_CORE_VIOLATION,
  PSTAR_WELL_DEFINEDNESS_VIOLATION,
  PSTAR_UNIT_NOT_IN_CORE,
  PSTAR_NOT_EQUIVALENT,
  PSTAR_ARITY_MISMATCH,
  PSTAR_NOT_POSITIVE_DEFINITE,
  PSTAR_NUMERICAL_FAILURE,
  PSTAR_IO_ERROR,
  PSTAR_INVALID_ARGUMENT,
  PSTAR_INTERNAL_ERROR
} pstar_status;

typedef enum pstar_mode { PSTAR_MODE_QUASI = 0, PSTAR_MODE_FULL = 1 } pstar_mode;

typedef enum pstar_format { PSTAR_FORMAT_JSON = 0, PSTAR_FORMAT_TEXT = 1 } pstar_format;

typedef struct pstar_policy {
  double tol_rank;          /* <= 0 selects dim * machine epsilon */
  double tol_psd;
  double tol_verify;
  uint64_t seed;
  int32_t samples;
  int64_t falsify_samples;
  pstar_mode mode;
} pstar_policy;

typedef struct pstar_algebra pstar_algebra;
typedef struct pstar_map pstar_map;
typedef struct pstar_dilation pstar_dilation;
typedef struct pstar_generators pstar_generators;
typedef struct pstar_polymatrices pstar_polymatrices;
typedef struct pstar_report pstar_report;
typedef struct pstar_file_list pstar_file_list;

PSTAR_API const char* pstar_version(void);
PSTAR_API const char* pstar_status_name(pstar_status status);
/* Message for the most recent failing call on this thread ("" if none). */
PSTAR_API const char* pstar_last_error(void);
PSTAR_API void pstar_policy_default(pstar_policy* policy);
PSTAR_API void pstar_string_free(char* s);

PSTAR_API pstar_status pstar_read_file(const char* path, char** out);
PSTAR_API pstar_status pstar_write_file(const char* path, const char* content);

PSTAR_API pstar_status pstar_algebra_from_json(const char* json, pstar_algebra** out);
PSTAR_API pstar_status pstar_algebra_to_json(const pstar_algebra* a, char** out);
PSTAR_API pstar_status pstar_algebra_dim(const pstar_algebra* a, int64_t* out);
PSTAR_API void pstar_algebra_free(pstar_algebra* a);

PSTAR_API pstar_status pstar_map_from_json(const char* json, pstar_map** out);
PSTAR_API pstar_status pstar_map_to_json(const pstar_map* m, char** out);
PSTAR_API void pstar_map_free(pstar_map* m);

PSTAR_API pstar_status pstar_dilation_from_json(const char* json, pstar_dilation** out);
PSTAR_API pstar_status pstar_dilation_to_json(const pstar_dilation* d, char** out);
PSTAR_API pstar_status pstar_dilation_h_dim(const pstar_dilation* d, int64_t* out);
PSTAR_API void pstar_dilation_free(pstar_dilation* d);

PSTAR_API pstar_status pstar_generators_from_json(const char* json, pstar_generators** out);
PSTAR_API pstar_status pstar_generators_to_json(const pstar_generators* g, char** out);
PSTAR_API void pstar_generators_free(pstar_generators* g);

PSTAR_API pstar_status pstar_polymatrices_from_json(const char* json, pstar_polymatrices** out);
PSTAR_API pstar_status pstar_polymatrices_to_json(const pstar_polymatrices* p, char** out);
PSTAR_API void pstar_polymatrices_free(pstar_polymatrices* p);

/* Commands. Each returns PSTAR_OK when a report was produced, whatever the
 * outcome of its checks; pstar_report_exit_code gives 0/1/2. */
PSTAR_API pstar_status pstar_validate(const pstar_algebra* a, const pstar_policy* policy,
                                      pstar_report** out);
PSTAR_API pstar_status pstar_cp_check(const pstar_map* m, const pstar_policy* policy,
                                      pstar_report** out);
PSTAR_API pstar_status pstar_core_check(const pstar_map* m, const pstar_policy* policy,
                                        pstar_report** out);
/* *dilation is set (may be NULL on failure) and owned by the caller. */
PSTAR_API pstar_status pstar_dilate(const pstar_map* m, const pstar_policy* policy,
                                    pstar_report** out, pstar_dilation** dilation);
PSTAR_API pstar_status pstar_verify(const pstar_map* m, const pstar_dilation* d,
                                    const pstar_policy* policy, pstar_report** out);
/* m2 may be NULL, meaning both dilations are of m1. */
PSTAR_API pstar_status pstar_equiv(const pstar_dilation* d1, const pstar_dilation* d2,
                                   const pstar_map* m1, const pstar_map* m2,
                                   const pstar_policy* policy, pstar_report** out);
PSTAR_API pstar_status pstar_largest_core(const pstar_map* m, const pstar_dilation* d,
                                          const pstar_policy* policy, pstar_report** out);
PSTAR_API pstar_status pstar_cone_check(const pstar_generators* g, const pstar_polymatrices* p,
                                        const pstar_policy* policy, pstar_report** out);
/* Report for a command that could not start (e.g. unreadable input). */
PSTAR_API pstar_status pstar_error_report(const char* command, pstar_status status,
                                          const char* message, const pstar_policy* policy,
                                          pstar_report** out);

PSTAR_API pstar_status pstar_report_set_args(pstar_report* r, const char* const* args, size_t n);
PSTAR_API pstar_status pstar_report_render(const pstar_report* r, pstar_format format, char** out);
PSTAR_API int pstar_report_exit_code(const pstar_report* r);
PSTAR_API void pstar_report_free(pstar_report* r);

/* Fixture corpus: "FIX-M2", "FIX-Q2" or "FIX-D2". */
PSTAR_API pstar_status pstar_demo_files(const char* name, pstar_file_list** out);
PSTAR_API size_t pstar_file_list_size(const pstar_file_list* l);
PSTAR_API const char* pstar_file_list_name(const pstar_file_list* l, size_t i);
PSTAR_API const char* pstar_file_list_content(const pstar_file_list* l, size_t i);
PSTAR_API void pstar_file_list_free(pstar_file_list* l);

#ifdef __cplusplus
}
#endif

#endif /* PSTAR_PSTAR_H */
