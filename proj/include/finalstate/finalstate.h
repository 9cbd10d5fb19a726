// Copyright 2026 The finalstate Authors
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

/*
 * C interface to the finalstate simulator.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions that can fail return an fs_status; on failure a description of the
 * most recent error on the calling thread is available from fs_last_error().
 * Strings returned through char** out-parameters are owned by the caller and
 * released with fs_string_free().
 */
#ifndef FINALSTATE_FINALSTATE_H_
#define FINALSTATE_FINALSTATE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(FINALSTATE_BUILDING_LIBRARY)
#define FS_API __attribute__((visibility("default")))
#else
#define FS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fs_status {
  FS_OK = 0,
  FS_ERR_INVALID_ARGUMENT = 1,
  FS_ERR_DIMENSION_MISMATCH = 2,
  FS_ERR_NOT_UNITARY = 3,
  FS_ERR_NON_FINITE = 4,
  FS_ERR_NO_CONVERGENCE = 5,
  FS_ERR_RANK_DEFICIENT = 6,
  FS_ERR_ANNIHILATED = 7,
  FS_ERR_RESOURCE_CAP = 8,
  FS_ERR_IO = 9,
  FS_ERR_INTERNAL = 10
} fs_status;

typedef enum fs_format { FS_FORMAT_JSON = 0, FS_FORMAT_CSV = 1 } fs_format;

typedef struct fs_config fs_config;
typedef struct fs_result fs_result;
typedef struct fs_channel fs_channel;

FS_API const char* fs_version(void);
FS_API const char* fs_status_name(fs_status status);
/* Message for the last failed call on this thread; "" if none. */
FS_API const char* fs_last_error(void);
FS_API void fs_string_free(char* text);

/* ---- experiment configuration ---- */

FS_API fs_status fs_config_create(fs_config** out);
FS_API void fs_config_destroy(fs_config* cfg);

/* Names: schmidt-stats, fidelity, page, classical, hm-check, circuit-compare. */
FS_API fs_status fs_config_set_experiment(fs_config* cfg, const char* name);
FS_API fs_status fs_config_set_dim(fs_config* cfg, uint64_t dim);
FS_API fs_status fs_config_set_qubits(fs_config* cfg, uint64_t qubits_per_side);
FS_API fs_status fs_config_set_trials(fs_config* cfg, uint64_t trials);
FS_API fs_status fs_config_set_seed(fs_config* cfg, uint64_t seed);
/* hm, haar, product */
FS_API fs_status fs_config_set_final_state(fs_config* cfg, const char* name);
/* none, haar-unitary, haar-state, circuit */
FS_API fs_status fs_config_set_interaction(fs_config* cfg, const char* name);
FS_API fs_status fs_config_set_depth(fs_config* cfg, uint64_t depth);
FS_API fs_status fs_config_set_workers(fs_config* cfg, uint64_t workers);
FS_API fs_status fs_config_set_inputs_per_trial(fs_config* cfg, uint64_t inputs);
FS_API fs_status fs_config_set_per_trial(fs_config* cfg, int enabled);

/* Applies defaults and checks consistency and resource caps without running. */
FS_API fs_status fs_config_validate(const fs_config* cfg);

/* ---- running ---- */

FS_API fs_status fs_run_experiment(const fs_config* cfg, fs_result** out);
FS_API void fs_result_destroy(fs_result* result);

/* 1 if every checked metric passed, 0 otherwise (also 0 for NULL). */
FS_API int fs_result_all_pass(const fs_result* result);
FS_API fs_status fs_result_metric(const fs_result* result, const char* name, double* mean,
                                  double* theory, int* pass);
FS_API fs_status fs_result_reference(const fs_result* result, const char* name, double* value);
FS_API uint64_t fs_result_trial_count(const fs_result* result);
FS_API uint64_t fs_result_annihilations(const fs_result* result);
FS_API double fs_result_wall_seconds(const fs_result* result);

FS_API fs_status fs_result_render(const fs_result* result, fs_format format, char** out_text);
/* path NULL or "" writes to stdout. */
FS_API fs_status fs_result_write(const fs_result* result, fs_format format, const char* path);

/* ---- single channels ---- */

/* Channel from a Hilbert-Schmidt random post-interaction state drawn from
 * stream (seed, stream_id). */
FS_API fs_status fs_channel_create_random(uint64_t dim, uint64_t seed, uint64_t stream_id,
                                          fs_channel** out);
/* Channel whose post-interaction state is diag(lambdas), normalized. */
FS_API fs_status fs_channel_create_diagonal(const double* lambdas, size_t dim, fs_channel** out);
FS_API void fs_channel_destroy(fs_channel* ch);
FS_API uint64_t fs_channel_dim(const fs_channel* ch);
/* Writes dim descending Schmidt coefficients. */
FS_API fs_status fs_channel_schmidt(const fs_channel* ch, double* lambdas, size_t len);
/* mu holds dim complex amplitudes as interleaved (re, im) pairs in the
 * channel's matter Schmidt basis; it is normalized internally. */
FS_API fs_status fs_channel_escape_fidelity(const fs_channel* ch, const double* mu, size_t dim,
                                            double* fidelity);
FS_API fs_status fs_channel_classical_decode(const fs_channel* ch, uint64_t symbol,
                                             uint64_t* decoded);

/* ---- closed-form ensemble averages ---- */

FS_API double fs_page_entropy_bits(uint64_t m, uint64_t n);
FS_API double fs_lubkin_purity(uint64_t m, uint64_t n);
FS_API double fs_asymptotic_mean_trace_norm(uint64_t n);
FS_API double fs_asymptotic_fidelity(void);

#ifdef __cplusplus
}
#endif

#endif /* FINALSTATE_FINALSTATE_H_ */
