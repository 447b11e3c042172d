// Copyright 2026 The qstransfer Authors
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

/* C interface to the qstransfer library. All functions return a qst_status;
 * on failure qst_last_error() describes the problem (thread-local, valid
 * until the next failing call on the same thread). Handles are opaque and
 * released with the matching *_destroy function, which accepts NULL. */
#ifndef QST_QST_H
#define QST_QST_H

#include <stddef.h>
#include <stdint.h>

#if defined(QST_BUILDING_LIBRARY)
#define QST_API __attribute__((visibility("default")))
#else
#define QST_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qst_status {
  QST_OK = 0,
  QST_ERR_INVALID_ARGUMENT = 1,
  QST_ERR_DIMENSION_MISMATCH = 2,
  QST_ERR_PRECONDITION = 3,
  QST_ERR_NUMERICAL = 4,
  QST_ERR_CONFIG = 5,
  QST_ERR_IO = 6,
  QST_ERR_INTERNAL = 99
} qst_status;

typedef enum qst_parity { QST_PARITY_ODD = 1, QST_PARITY_EVEN = 0 } qst_parity;

typedef enum qst_noise_kind { QST_NOISE_STATIC = 0, QST_NOISE_FLUCTUATING = 1 } qst_noise_kind;

typedef struct qst_chain qst_chain;
typedef struct qst_profile qst_profile;
typedef struct qst_result qst_result;
typedef struct qst_table qst_table;

QST_API const char* qst_version(void);
QST_API const char* qst_last_error(void);
QST_API const char* qst_status_name(qst_status status);

/* Chain with N channel sites (odd). bulk may be NULL for uniform couplings,
 * otherwise it holds N-1 couplings in units of coupling_scale. */
QST_API qst_status qst_chain_create(int n_channel, const double* bulk, size_t bulk_count,
                                    double coupling_scale, qst_chain** out);
QST_API void qst_chain_destroy(qst_chain* chain);
QST_API qst_status qst_chain_central_coupling(const qst_chain* chain, double* out);
QST_API qst_status qst_chain_localization_bound(const qst_chain* chain, double epsilon, double* out);
QST_API qst_status qst_chain_transfer_time(const qst_chain* chain, double p, double alpha_max,
                                           double phase_target, double* duration,
                                           double* amplitude);

/* alpha_max * sin^p(pi t / duration) on [0, duration]. */
QST_API qst_status qst_profile_create(double p, double alpha_max, double duration, qst_profile** out);
/* Same shape with the duration fixed by the accumulated phase target. */
QST_API qst_status qst_profile_create_for_phase(const qst_chain* chain, double p, double alpha_max,
                                                double phase_target, qst_profile** out);
/* Fixed duration; alpha_max follows from the accumulated phase target. */
QST_API qst_status qst_profile_create_for_duration(const qst_chain* chain, double p, double duration,
                                                   double phase_target, qst_profile** out);
QST_API void qst_profile_destroy(qst_profile* profile);
QST_API qst_status qst_profile_duration(const qst_profile* profile, double* out);
QST_API qst_status qst_profile_alpha_max(const qst_profile* profile, double* out);
QST_API qst_status qst_profile_energy(const qst_profile* profile, const qst_chain* chain, double* out);

typedef struct qst_propagation_options {
  double dt;
  size_t report_points;
  int source_site;
  int target_site; /* -1 selects N+1 */
} qst_propagation_options;

QST_API qst_propagation_options qst_propagation_options_default(void);

/* options may be NULL for defaults; dt is capped at the stability limit. */
QST_API qst_status qst_propagate(const qst_chain* chain, const qst_profile* profile, double t_max,
                                 const qst_propagation_options* options, qst_result** out);
QST_API void qst_result_destroy(qst_result* result);
QST_API size_t qst_result_size(const qst_result* result);
QST_API qst_status qst_result_sample(const qst_result* result, size_t index, double* time,
                                     double* amplitude, double* fidelity);
QST_API qst_status qst_result_peak(const qst_result* result, double* time, double* fidelity);
QST_API qst_status qst_result_norm_drift(const qst_result* result, double* out);
QST_API qst_status qst_result_window(const qst_result* result, double threshold, double* begin,
                                     double* end);
/* path "-" writes to stdout. */
QST_API qst_status qst_result_write_csv(const qst_result* result, const char* path);

QST_API qst_status qst_infidelity_time_domain(const qst_chain* chain, const qst_profile* profile,
                                              double* out);
QST_API qst_status qst_infidelity_energy_domain(const qst_chain* chain, const qst_profile* profile,
                                                double* out);
/* values[i] = F_T(omega[i]) for one parity class. */
QST_API qst_status qst_filter_spectrum(const qst_chain* chain, const qst_profile* profile,
                                       qst_parity parity, const double* omega, size_t count,
                                       double* values);

typedef struct qst_noise_options {
  qst_noise_kind kind;
  double strength;
  double correlation_time;
  size_t realizations;
  uint64_t seed;
  int include_boundary;
  double dt;
  size_t workers; /* 0 selects QST_WORKERS or the hardware count */
} qst_noise_options;

QST_API qst_noise_options qst_noise_options_default(void);

/* per_realization may be NULL, else holds options->realizations values. */
QST_API qst_status qst_monte_carlo(const qst_chain* chain, const qst_profile* profile,
                                   const qst_noise_options* options, double duration,
                                   double* mean_fidelity, double* standard_error,
                                   double* per_realization);

/* Validates a JSON sweep config without running it. */
QST_API qst_status qst_config_check(const char* json_text);
QST_API qst_status qst_sweep_run(const char* json_text, qst_table** out);
QST_API void qst_table_destroy(qst_table* table);
QST_API size_t qst_table_rows(const qst_table* table);
QST_API size_t qst_table_columns(const qst_table* table);
/* Borrowed CSV text, valid until the table is destroyed. */
QST_API const char* qst_table_csv(const qst_table* table);
QST_API qst_status qst_table_write(const qst_table* table, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* QST_QST_H */
