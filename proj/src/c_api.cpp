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

#include "qst/qst.h"

#include <algorithm>
#include <memory>
#include <fstream>
#include <iostream>
#include <new>
#include <string>

#include "qst/chain_model.hpp"
#include "qst/control.hpp"
#include "qst/error.hpp"
#include "qst/experiments.hpp"
#include "qst/filter_theory.hpp"
#include "qst/noise.hpp"
#include "qst/propagator.hpp"
#include "qst/spectral.hpp"

struct qst_chain {
  qst::ChainSpec spec;
  qst::SpectralData data;
};

struct qst_profile {
  qst::ModulationProfile profile;
};

struct qst_result {
  qst::TransferResult result;
};

struct qst_table {
  qst::ResultTable table;
  std::string csv;
};

namespace {

thread_local std::string last_error;

qst_status map_code(qst::ErrorCode code) {
  switch (code) {
    case qst::ErrorCode::invalid_argument: return QST_ERR_INVALID_ARGUMENT;
    case qst::ErrorCode::dimension_mismatch: return QST_ERR_DIMENSION_MISMATCH;
    case qst::ErrorCode::precondition: return QST_ERR_PRECONDITION;
    case qst::ErrorCode::numerical: return QST_ERR_NUMERICAL;
    case qst::ErrorCode::config: return QST_ERR_CONFIG;
    case qst::ErrorCode::io: return QST_ERR_IO;
  }
  return QST_ERR_INTERNAL;
}

template <typename F>
qst_status guarded(F&& body) {
  try {
    body();
    return QST_OK;
  } catch (const qst::Error& e) {
    last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return QST_ERR_INTERNAL;
}

template <typename T>
void need(const T* pointer, const char* name) {
  if (pointer == nullptr) qst::fail(qst::ErrorCode::invalid_argument, std::string(name) + " must not be NULL");
}

void write_text(const char* path, const std::string& text) {
  need(path, "path");
  if (std::string(path) == "-") {
    std::cout << text << std::flush;
    if (!std::cout) qst::fail(qst::ErrorCode::io, "failed writing to stdout");
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) qst::fail(qst::ErrorCode::io, std::string("cannot open '") + path + "' for writing");
  file << text;
  if (!file) qst::fail(qst::ErrorCode::io, std::string("failed writing '") + path + "'");
}

qst::Parity central_of(const qst_chain* chain) { return chain->data.central_parity(); }

}  // namespace

extern "C" {

const char* qst_version(void) { return QST_VERSION_STRING; }

const char* qst_last_error(void) { return last_error.c_str(); }

const char* qst_status_name(qst_status status) {
  switch (status) {
    case QST_OK: return "ok";
    case QST_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QST_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case QST_ERR_PRECONDITION: return "precondition violated";
    case QST_ERR_NUMERICAL: return "numerical failure";
    case QST_ERR_CONFIG: return "configuration error";
    case QST_ERR_IO: return "i/o error";
    case QST_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

qst_status qst_chain_create(int n_channel, const double* bulk, size_t bulk_count, double coupling_scale,
                            qst_chain** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    qst::ChainSpec spec;
    spec.n_channel = n_channel;
    spec.coupling_scale = coupling_scale;
    if (bulk != nullptr) {
      spec.bulk_couplings.assign(bulk, bulk + bulk_count);
    } else {
      qst::require(n_channel >= 1, qst::ErrorCode::invalid_argument, "N must be a positive odd integer");
      spec = qst::uniform_chain(n_channel, coupling_scale);
    }
    qst::validate(spec);
    auto chain = std::make_unique<qst_chain>();
    chain->data = qst::channel_eigenmodes(spec);
    chain->spec = std::move(spec);
    *out = chain.release();
  });
}

void qst_chain_destroy(qst_chain* chain) { delete chain; }

qst_status qst_chain_central_coupling(const qst_chain* chain, double* out) {
  return guarded([&] {
    need(chain, "chain");
    need(out, "out");
    *out = chain->data.central_coupling;
  });
}

qst_status qst_chain_localization_bound(const qst_chain* chain, double epsilon, double* out) {
  return guarded([&] {
    need(chain, "chain");
    need(out, "out");
    *out = qst::localization_bound(chain->spec, epsilon);
  });
}

qst_status qst_chain_transfer_time(const qst_chain* chain, double p, double alpha_max, double phase_target,
                                   double* duration, double* amplitude) {
  return guarded([&] {
    need(chain, "chain");
    need(duration, "duration");
    const qst::OptimalTransfer best = qst::optimize_transfer_time(chain->spec, p, alpha_max, phase_target);
    *duration = best.duration;
    if (amplitude != nullptr) *amplitude = best.amplitude;
  });
}

qst_status qst_profile_create(double p, double alpha_max, double duration, qst_profile** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    *out = new qst_profile{qst::sin_power_profile(p, alpha_max, duration)};
  });
}

qst_status qst_profile_create_for_phase(const qst_chain* chain, double p, double alpha_max,
                                        double phase_target, qst_profile** out) {
  return guarded([&] {
    need(chain, "chain");
    need(out, "out");
    *out = nullptr;
    *out = new qst_profile{qst::pulse_for_phase(p, alpha_max, phase_target, chain->data.central_coupling)};
  });
}

qst_status qst_profile_create_for_duration(const qst_chain* chain, double p, double duration,
                                           double phase_target, qst_profile** out) {
  return guarded([&] {
    need(chain, "chain");
    need(out, "out");
    *out = nullptr;
    qst::require(duration > 0.0 && phase_target > 0.0, qst::ErrorCode::invalid_argument,
                 "duration and phase target must be positive");
    const double alpha =
        qst::pulse_norm_constant(p) * phase_target / (chain->data.central_coupling * duration);
    *out = new qst_profile{qst::sin_power_profile(p, alpha, duration)};
  });
}

void qst_profile_destroy(qst_profile* profile) { delete profile; }

qst_status qst_profile_alpha_max(const qst_profile* profile, double* out) {
  return guarded([&] {
    need(profile, "profile");
    need(out, "out");
    *out = profile->profile.alpha_max;
  });
}

qst_status qst_profile_duration(const qst_profile* profile, double* out) {
  return guarded([&] {
    need(profile, "profile");
    need(out, "out");
    *out = profile->profile.duration;
  });
}

qst_status qst_profile_energy(const qst_profile* profile, const qst_chain* chain, double* out) {
  return guarded([&] {
    need(profile, "profile");
    need(chain, "chain");
    need(out, "out");
    *out = qst::pulse_energy(profile->profile, chain->data.central_coupling);
  });
}

qst_propagation_options qst_propagation_options_default(void) {
  const qst::PropagationOptions d;
  return {d.dt, d.report_points, d.source_site, d.target_site};
}

qst_status qst_propagate(const qst_chain* chain, const qst_profile* profile, double t_max,
                         const qst_propagation_options* options, qst_result** out) {
  return guarded([&] {
    need(chain, "chain");
    need(profile, "profile");
    need(out, "out");
    *out = nullptr;
    const qst_propagation_options o = options != nullptr ? *options : qst_propagation_options_default();
    qst::PropagationOptions opts;
    opts.dt = std::min(o.dt, qst::step_limit(chain->spec, profile->profile.duration, t_max));
    opts.report_points = o.report_points;
    opts.source_site = o.source_site;
    opts.target_site = o.target_site;
    auto result = std::make_unique<qst_result>();
    result->result = qst::propagate(chain->spec, profile->profile, nullptr, t_max, opts);
    *out = result.release();
  });
}

void qst_result_destroy(qst_result* result) { delete result; }

size_t qst_result_size(const qst_result* result) { return result == nullptr ? 0 : result->result.times.size(); }

qst_status qst_result_sample(const qst_result* result, size_t index, double* time, double* amplitude,
                             double* fidelity) {
  return guarded([&] {
    need(result, "result");
    const auto& r = result->result;
    if (index >= r.times.size()) qst::fail(qst::ErrorCode::invalid_argument, "sample index out of range");
    if (time != nullptr) *time = r.times[index];
    if (amplitude != nullptr) *amplitude = r.amplitude[index];
    if (fidelity != nullptr) *fidelity = r.fidelity[index];
  });
}

qst_status qst_result_peak(const qst_result* result, double* time, double* fidelity) {
  return guarded([&] {
    need(result, "result");
    if (time != nullptr) *time = result->result.peak_time;
    if (fidelity != nullptr) *fidelity = result->result.peak_fidelity;
  });
}

qst_status qst_result_norm_drift(const qst_result* result, double* out) {
  return guarded([&] {
    need(result, "result");
    need(out, "out");
    *out = result->result.norm_drift;
  });
}

qst_status qst_result_window(const qst_result* result, double threshold, double* begin, double* end) {
  return guarded([&] {
    need(result, "result");
    need(begin, "begin");
    need(end, "end");
    const qst::TimeWindow w = qst::peak_window(result->result, threshold);
    *begin = w.begin;
    *end = w.end;
  });
}

qst_status qst_result_write_csv(const qst_result* result, const char* path) {
  return guarded([&] {
    need(result, "result");
    const auto& r = result->result;
    std::string text = "t,f,F\n";
    for (std::size_t i = 0; i < r.times.size(); ++i)
      text += qst::format_number(r.times[i]) + "," + qst::format_number(r.amplitude[i]) + "," +
              qst::format_number(r.fidelity[i]) + "\n";
    write_text(path, text);
  });
}

qst_status qst_infidelity_time_domain(const qst_chain* chain, const qst_profile* profile, double* out) {
  return guarded([&] {
    need(chain, "chain");
    need(profile, "profile");
    need(out, "out");
    *out = qst::infidelity_time_domain(profile->profile, chain->data);
  });
}

qst_status qst_infidelity_energy_domain(const qst_chain* chain, const qst_profile* profile, double* out) {
  return guarded([&] {
    need(chain, "chain");
    need(profile, "profile");
    need(out, "out");
    *out = qst::infidelity_energy_domain(profile->profile, chain->data);
  });
}

qst_status qst_filter_spectrum(const qst_chain* chain, const qst_profile* profile, qst_parity parity,
                               const double* omega, size_t count, double* values) {
  return guarded([&] {
    need(chain, "chain");
    need(profile, "profile");
    need(omega, "omega");
    need(values, "values");
    const qst::Parity q = parity == QST_PARITY_ODD ? qst::Parity::odd : qst::Parity::even;
    const qst::FilterSpectrum f = qst::filter_spectrum(profile->profile, q, {omega, count},
                                                       chain->data.central_coupling, central_of(chain));
    std::copy(f.values.begin(), f.values.end(), values);
  });
}

qst_noise_options qst_noise_options_default(void) {
  const qst::NoiseSpec n;
  const qst::MonteCarloOptions m;
  return {QST_NOISE_STATIC, n.strength, n.correlation_time, n.realizations, n.master_seed,
          n.include_boundary ? 1 : 0, m.dt, m.workers};
}

qst_status qst_monte_carlo(const qst_chain* chain, const qst_profile* profile, const qst_noise_options* options,
                           double duration, double* mean_fidelity, double* standard_error,
                           double* per_realization) {
  return guarded([&] {
    need(chain, "chain");
    need(profile, "profile");
    need(options, "options");
    need(mean_fidelity, "mean_fidelity");
    qst::NoiseSpec noise;
    noise.kind = options->kind == QST_NOISE_FLUCTUATING ? qst::NoiseKind::fluctuating : qst::NoiseKind::static_noise;
    noise.strength = options->strength;
    noise.correlation_time = options->correlation_time;
    noise.realizations = options->realizations;
    noise.master_seed = options->seed;
    noise.include_boundary = options->include_boundary != 0;
    qst::MonteCarloOptions mc;
    mc.dt = options->dt;
    mc.workers = options->workers;
    const qst::MonteCarloResult r = qst::monte_carlo_fidelity(chain->spec, profile->profile, noise, duration, mc);
    *mean_fidelity = r.mean_fidelity;
    if (standard_error != nullptr) *standard_error = r.standard_error;
    if (per_realization != nullptr) std::copy(r.fidelities.begin(), r.fidelities.end(), per_realization);
  });
}

qst_status qst_config_check(const char* json_text) {
  return guarded([&] {
    need(json_text, "json_text");
    (void)qst::parse_config(json_text);
  });
}

qst_status qst_sweep_run(const char* json_text, qst_table** out) {
  return guarded([&] {
    need(json_text, "json_text");
    need(out, "out");
    *out = nullptr;
    auto table = std::make_unique<qst_table>();
    table->table = qst::run_sweep(qst::parse_config(json_text));
    table->csv = qst::to_csv(table->table);
    *out = table.release();
  });
}

void qst_table_destroy(qst_table* table) { delete table; }

size_t qst_table_rows(const qst_table* table) { return table == nullptr ? 0 : table->table.rows.size(); }

size_t qst_table_columns(const qst_table* table) {
  return table == nullptr ? 0 : table->table.columns.size();
}

const char* qst_table_csv(const qst_table* table) { return table == nullptr ? "" : table->csv.c_str(); }

qst_status qst_table_write(const qst_table* table, const char* path) {
  return guarded([&] {
    need(table, "table");
    write_text(path, table->csv);
  });
}

}  // extern "C"
