// Copyright 2026 The slocc4 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef SLOCC_SLOCC_H_
#define SLOCC_SLOCC_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SLOCC_API __declspec(dllexport)
#else
#define SLOCC_API __attribute__((visibility("default")))
#endif

typedef enum {
    SLOCC_OK = 0,
    SLOCC_ERR_PARSE = 1,
    SLOCC_ERR_INDEX_OUT_OF_RANGE = 2,
    SLOCC_ERR_INVALID_STATE = 3,
    SLOCC_ERR_DIMENSION_MISMATCH = 4,
    SLOCC_ERR_SHAPE_MISMATCH = 5,
    SLOCC_ERR_SINGULAR = 6,
    SLOCC_ERR_IRREDUCIBLE_FACTOR = 7,
    SLOCC_ERR_NO_QUBIT_AXIS = 8,
    SLOCC_ERR_ZERO_PENCIL = 9,
    SLOCC_ERR_DEGENERATE_LAMBDA = 10,
    SLOCC_ERR_MISSING_OMEGA = 11,
    SLOCC_ERR_INTERNAL = 12,
    SLOCC_ERR_NULL_ARGUMENT = 13,
    SLOCC_ERR_OUT_OF_MEMORY = 14
} slocc_status;

typedef enum {
    SLOCC_EQUIVALENT = 0,
    SLOCC_INEQUIVALENT = 1,
    SLOCC_UNDECIDED = 2
} slocc_verdict_kind;

/* Opaque state: amplitudes plus the qubit / single particle roles. */
typedef struct slocc_state slocc_state;
/* Opaque omega table for family counting; starts from the built-in entries. */
typedef struct slocc_census_table slocc_census_table;

typedef struct {
    uint64_t seed;
    int samples;
    int timeout_ms;
    int numeric; /* nonzero enables the numeric witness search */
} slocc_decide_options;

SLOCC_API const char *slocc_version(void);
SLOCC_API const char *slocc_status_name(slocc_status status);
/* Message of the last failure on the calling thread; empty after success. */
SLOCC_API const char *slocc_last_error(void);
/* Strings returned through char** out-parameters are released here. */
SLOCC_API void slocc_string_free(char *s);

SLOCC_API slocc_decide_options slocc_decide_options_default(void);

/* State file JSON (see README). Axes in the file are 1-based. */
SLOCC_API slocc_status slocc_state_from_json(const char *json, slocc_state **out);
SLOCC_API slocc_status slocc_state_from_file(const char *path, slocc_state **out);
/* Ket text with 1-based indices, e.g. "|1111> - 2|2212>". Axes 1-based. */
SLOCC_API slocc_status slocc_state_from_ket(const char *ket, const size_t dims[4], int qubit_axis,
                                            int single_axis, slocc_state **out);
SLOCC_API slocc_status slocc_state_random(const size_t dims[4], long bound, uint64_t seed, int gaussian,
                                          slocc_state **out);
/* out = (A1 x A2 x A3 x A4) state for random invertible Gaussian-integer operators. */
SLOCC_API slocc_status slocc_state_random_orbit(const slocc_state *state, long bound, uint64_t seed,
                                                slocc_state **out);
SLOCC_API slocc_status slocc_state_to_json(const slocc_state *state, char **out);
SLOCC_API slocc_status slocc_state_to_ket(const slocc_state *state, char **out);
SLOCC_API void slocc_state_free(slocc_state *state);

SLOCC_API slocc_status slocc_classify(const slocc_state *state, char **report_json);
/* kind may be NULL. Roles come from `a`. */
SLOCC_API slocc_status slocc_compare(const slocc_state *a, const slocc_state *b, const slocc_decide_options *options,
                                     slocc_verdict_kind *kind, char **report_json);

SLOCC_API slocc_status slocc_census_table_new(slocc_census_table **out);
/* Merge entries from an omega table file; later entries win. */
SLOCC_API slocc_status slocc_census_table_load(slocc_census_table *table, const char *path);
SLOCC_API void slocc_census_table_free(slocc_census_table *table);
/* table may be NULL for the built-in entries. count may be NULL. */
SLOCC_API slocc_status slocc_census(const slocc_census_table *table, size_t l, size_t m, size_t n, long long *count,
                                    char **report_json);

/* Matrix text: one row per line, whitespace-separated literals. */
SLOCC_API slocc_status slocc_realign(const char *matrix_text, size_t m, size_t n, char **report_json);
SLOCC_API slocc_status slocc_orbit(const char *lambda, char **report_json);

#ifdef __cplusplus
}
#endif

#endif  // SLOCC_SLOCC_H_
