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

#include "qst/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <utility>

#include "qst/control.hpp"
#include "qst/error.hpp"
#include "qst/filter_theory.hpp"
#include "qst/parallel.hpp"
#include "qst/propagator.hpp"
#include "qst/spectral.hpp"

namespace qst {

namespace {

struct Pulse {
  double p;
  double alpha;
};

std::vector<double> pulse_powers(const SweepConfig& cfg) {
  if (!cfg.p.empty()) return cfg.p;
  if (cfg.experiment == "bound_check") return {0.0};
  return {0.0, 2.0};
}

// Strong-coupling optima used when no alpha_max is given.
double default_alpha(const SweepConfig& cfg, double p) {
  if (cfg.experiment == "bound_check") return 0.02;
  return p == 0.0 ? 0.6 : 0.7;
}

// Equal-length p and alpha lists pair up, anything else is a cross product.
std::vector<Pulse> pulses(const SweepConfig& cfg) {
  const auto ps = pulse_powers(cfg);
  std::vector<Pulse> out;
  if (cfg.alpha_max.empty()) {
    for (double p : ps) out.push_back({p, default_alpha(cfg, p)});
  } else if (cfg.alpha_max.size() == ps.size()) {
    for (std::size_t i = 0; i < ps.size(); ++i) out.push_back({ps[i], cfg.alpha_max[i]});
  } else {
    for (double p : ps)
      for (double a : cfg.alpha_max) out.push_back({p, a});
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * static_cast<double>(i) /
                                         static_cast<double>(n - 1));
  return out;
}

std::size_t workers_for(const SweepConfig& cfg) {
  return cfg.workers == 0 ? default_workers() : cfg.workers;
}

double final_amplitude(const SweepConfig& cfg, double p, double alpha, double duration) {
  PropagationOptions opts;
  opts.report_points = 1;
  opts.dt = std::min(cfg.dt, step_limit(cfg.chain, duration, duration));
  return propagate(cfg.chain, sin_power_profile(p, alpha, duration), nullptr, duration, opts)
      .final_amplitude();
}

TransferSearch search_for(const SweepConfig& cfg) {
  TransferSearch search;
  search.dt = cfg.dt;
  return search;
}

ResultTable fig2a_t(const SweepConfig& cfg, double j_z) {
  ResultTable table;
  table.columns = {"p", "alpha_max", "T", "f", "infidelity"};
  std::vector<std::array<double, 3>> points;
  for (const auto& pulse : pulses(cfg)) {
    std::vector<double> grid = cfg.duration;
    if (grid.empty()) {
      const double nominal = duration_for_phase(cfg.phase_target, pulse.p, pulse.alpha, j_z);
      for (int i = 0; i <= 60; ++i) grid.push_back(nominal * (0.6 + 1.2 * i / 60.0));
    }
    for (double t : grid) points.push_back({pulse.p, pulse.alpha, t});
  }
  table.rows.resize(points.size());
  parallel_for(points.size(), workers_for(cfg), [&](std::size_t i) {
    const auto [p, alpha, t] = points[i];
    const double f = final_amplitude(cfg, p, alpha, t);
    table.rows[i] = {p, alpha, t, f, 1.0 - average_fidelity(f)};
  });
  return table;
}

ResultTable fig2a_alpha(const SweepConfig& cfg, double j_z) {
  ResultTable table;
  table.columns = {"p", "alpha_max", "T", "T_nominal", "f", "infidelity"};
  const std::vector<double> alphas = cfg.alpha_max.empty() ? log_grid(0.01, 1.0, 21) : cfg.alpha_max;
  std::vector<Pulse> points;
  for (double p : pulse_powers(cfg))
    for (double a : alphas) points.push_back({p, a});
  table.rows.resize(points.size());
  parallel_for(points.size(), workers_for(cfg), [&](std::size_t i) {
    const Pulse& pt = points[i];
    const OptimalTransfer best =
        optimize_transfer_time(cfg.chain, pt.p, pt.alpha, cfg.phase_target, search_for(cfg));
    table.rows[i] = {pt.p,          pt.alpha,
                     best.duration, duration_for_phase(cfg.phase_target, pt.p, pt.alpha, j_z),
                     best.amplitude, 1.0 - best.fidelity};
  });
  return table;
}

// Noise-free readout time for a pulse: the configured duration, or the optimum.
std::pair<double, double> readout(const SweepConfig& cfg, const Pulse& pulse) {
  if (!cfg.duration.empty()) {
    const double t = cfg.duration.front();
    return {t, final_amplitude(cfg, pulse.p, pulse.alpha, t)};
  }
  const OptimalTransfer best =
      optimize_transfer_time(cfg.chain, pulse.p, pulse.alpha, cfg.phase_target, search_for(cfg));
  return {best.duration, best.amplitude};
}

MonteCarloResult run_noise(const SweepConfig& cfg, const Pulse& pulse, double duration, NoiseSpec noise) {
  MonteCarloOptions opts;
  opts.dt = cfg.dt;
  opts.workers = workers_for(cfg);
  return monte_carlo_fidelity(cfg.chain, sin_power_profile(pulse.p, pulse.alpha, duration), noise,
                              duration, opts);
}

ResultTable fig2b_static(const SweepConfig& cfg) {
  ResultTable table;
  table.columns = {"p", "alpha_max", "T", "epsilon_j", "f_clean", "infidelity", "std_error"};
  std::vector<double> eps = cfg.epsilon_j;
  if (eps.empty())
    for (int i = 0; i <= 10; ++i) eps.push_back(0.01 * i);
  for (const auto& pulse : pulses(cfg)) {
    const auto [t, f] = readout(cfg, pulse);
    for (double e : eps) {
      NoiseSpec noise = cfg.noise;
      noise.kind = NoiseKind::static_noise;
      noise.strength = e;
      const MonteCarloResult mc = run_noise(cfg, pulse, t, noise);
      table.rows.push_back({pulse.p, pulse.alpha, t, e, f, mc.mean_infidelity(), mc.standard_error});
    }
  }
  return table;
}

ResultTable fig2b_tauc(const SweepConfig& cfg) {
  ResultTable table;
  table.columns = {"p",           "alpha_max", "T",        "epsilon_j", "tau_c",
                   "infidelity_clean", "infidelity", "std_error"};
  const double eps = cfg.epsilon_j.empty() ? 0.1 : cfg.epsilon_j.front();
  const std::vector<double> taus = cfg.tau_c.empty() ? std::vector<double>{10.0, 1.0, 0.1, 0.01} : cfg.tau_c;
  for (const auto& pulse : pulses(cfg)) {
    const auto [t, f] = readout(cfg, pulse);
    for (double tau : taus) {
      NoiseSpec noise = cfg.noise;
      noise.kind = NoiseKind::fluctuating;
      noise.strength = eps;
      noise.correlation_time = tau;
      const MonteCarloResult mc = run_noise(cfg, pulse, t, noise);
      table.rows.push_back(
          {pulse.p, pulse.alpha, t, eps, tau, 1.0 - average_fidelity(f), mc.mean_infidelity(), mc.standard_error});
    }
  }
  return table;
}

ResultTable fig1_filters(const SweepConfig& cfg, const SpectralData& data) {
  ResultTable table;
  table.columns = {"p",           "T",           "alpha_max",   "omega",
                   "filter_odd",  "filter_even", "bath_odd",    "bath_even"};
  const double j_z = data.central_coupling;
  const Parity central = data.central_parity();
  const BathSpectrumModel odd = semicircle_bath(data, Parity::odd, cfg.chain.coupling_scale);
  const BathSpectrumModel even = semicircle_bath(data, Parity::even, cfg.chain.coupling_scale);
  const std::vector<double> grid = uniform_grid(cfg.omega_min, cfg.omega_max, cfg.omega_points);
  const std::vector<double> durations = cfg.duration.empty() ? std::vector<double>{50.0} : cfg.duration;
  for (double p : pulse_powers(cfg)) {
    for (double t : durations) {
      const double alpha = pulse_norm_constant(p) * cfg.phase_target / (j_z * t);
      const ModulationProfile profile = sin_power_profile(p, alpha, t);
      const FilterSpectrum fo = filter_spectrum(profile, Parity::odd, grid, j_z, central);
      const FilterSpectrum fe = filter_spectrum(profile, Parity::even, grid, j_z, central);
      const double zeta = infidelity_energy_domain(profile, odd, even, j_z, central);
      table.metadata.push_back("zeta_semicircle p=" + format_number(p) + " T=" + format_number(t) + ": " +
                               format_number(zeta));
      for (std::size_t i = 0; i < grid.size(); ++i)
        table.rows.push_back({p, t, alpha, grid[i], fo.values[i], fe.values[i], odd.density(grid[i]),
                              even.density(grid[i])});
    }
  }
  return table;
}

ResultTable bound_check(const SweepConfig& cfg, double j_z) {
  ResultTable table;
  table.columns = {"p", "alpha_max", "T", "epsilon_j", "infidelity", "std_error", "bound", "ratio"};
  const std::vector<double> eps = cfg.epsilon_j.empty() ? std::vector<double>{0.02, 0.05, 0.1} : cfg.epsilon_j;
  for (const auto& pulse : pulses(cfg)) {
    const double t = cfg.duration.empty() ? duration_for_phase(cfg.phase_target, pulse.p, pulse.alpha, j_z)
                                          : cfg.duration.front();
    for (double e : eps) {
      NoiseSpec noise = cfg.noise;
      noise.kind = NoiseKind::static_noise;
      noise.strength = e;
      const MonteCarloResult mc = run_noise(cfg, pulse, t, noise);
      const double bound = localization_bound(cfg.chain, e);
      table.rows.push_back({pulse.p, pulse.alpha, t, e, mc.mean_infidelity(), mc.standard_error, bound,
                            bound > 0.0 ? mc.mean_infidelity() / bound : 0.0});
    }
  }
  return table;
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

ResultTable run_sweep(const SweepConfig& cfg) {
  validate(cfg.chain);
  const SpectralData data = channel_eigenmodes(cfg.chain);
  const double j_z = data.central_coupling;
  ResultTable table;
  const std::string& id = cfg.experiment;
  if (id == "fig2a_T") table = fig2a_t(cfg, j_z);
  else if (id == "fig2a_alpha") table = fig2a_alpha(cfg, j_z);
  else if (id == "fig2b_static") table = fig2b_static(cfg);
  else if (id == "fig2b_tauc") table = fig2b_tauc(cfg);
  else if (id == "fig1_filters") table = fig1_filters(cfg, data);
  else if (id == "bound_check") table = bound_check(cfg, j_z);
  else fail(ErrorCode::config, "config key '/experiment': unknown experiment '" + id + "'");

  std::vector<std::string> meta{
      std::string("code_version: ") + QST_VERSION_STRING,
      "experiment: " + id,
      "config_hash: " + config_hash(cfg),
      "seed: " + std::to_string(cfg.noise.master_seed),
      "config: " + canonical_json(cfg),
  };
  meta.insert(meta.end(), table.metadata.begin(), table.metadata.end());
  table.metadata = std::move(meta);
  return table;
}

void write_csv(const ResultTable& table, std::ostream& out) {
  for (const auto& line : table.metadata) out << "# " << line << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
  if (!out) fail(ErrorCode::io, "failed writing CSV output");
}

std::string to_csv(const ResultTable& table) {
  std::ostringstream out;
  write_csv(table, out);
  return out.str();
}

}  // namespace qst
