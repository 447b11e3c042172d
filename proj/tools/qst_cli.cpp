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

// qst: command-line front end. Every subcommand accepts --config FILE plus
// flags named after the config keys; flags override the file.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qst/qst.h"

namespace {

using nlohmann::json;

struct CommandFailure {
  qst_status status;
};

void check(qst_status status) {
  if (status != QST_OK) throw CommandFailure{status};
}

struct Inputs {
  std::string config_path;
  json overrides = json::object();
  double t_max = 0.0;
  std::string dump_path;

  json merged() const {
    json doc = json::object();
    if (!config_path.empty()) {
      std::ifstream file(config_path);
      if (!file) throw std::runtime_error("cannot read config file '" + config_path + "'");
      std::stringstream text;
      text << file.rdbuf();
      try {
        doc = json::parse(text.str());
      } catch (const json::parse_error& e) {
        throw std::runtime_error("config file '" + config_path + "' is not valid JSON: " + e.what());
      }
      if (!doc.is_object()) throw std::runtime_error("config file must hold a JSON object");
    }
    doc.update(overrides);
    check(qst_config_check(doc.dump().c_str()));
    return doc;
  }
};

void add_config_flags(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--config", in.config_path, "JSON config file")->check(CLI::ExistingFile);
  auto number = [&](const char* key, const char* help) {
    cmd->add_option_function<double>(std::string("--") + key, [&in, key](double v) { in.overrides[key] = v; }, help);
  };
  auto integer = [&](const char* key, const char* help) {
    cmd->add_option_function<long long>(std::string("--") + key, [&in, key](long long v) { in.overrides[key] = v; },
                                        help);
  };
  auto text = [&](const char* key, const char* help) {
    cmd->add_option_function<std::string>(std::string("--") + key,
                                          [&in, key](const std::string& v) { in.overrides[key] = v; }, help);
  };
  auto grid = [&](const char* key, const char* help) {
    cmd->add_option_function<std::vector<double>>(
           std::string("--") + key, [&in, key](const std::vector<double>& v) { in.overrides[key] = v; }, help)
        ->expected(1, -1);
  };
  text("experiment", "experiment id (sweep)");
  integer("n_channel", "channel length N (odd)");
  number("coupling_scale", "bulk coupling J");
  grid("p", "pulse exponents");
  grid("alpha_max", "peak boundary couplings");
  number("phase_target", "accumulated phase target");
  grid("duration", "pulse durations");
  text("noise_kind", "static | fluctuating");
  grid("epsilon_j", "relative disorder strengths");
  grid("tau_c", "noise correlation times");
  integer("realizations", "Monte-Carlo realizations");
  cmd->add_option_function<bool>("--include_boundary", [&in](bool v) { in.overrides["include_boundary"] = v; },
                                 "also disorder the boundary bonds");
  integer("seed", "master seed");
  number("dt", "time step");
  integer("report_points", "report intervals on [0, t_max]");
  number("omega_min", "filter grid lower edge");
  number("omega_max", "filter grid upper edge");
  integer("omega_points", "filter grid size");
  number("threshold", "fidelity threshold for the peak window");
  text("output", "output CSV path, '-' for stdout");
  integer("workers", "worker threads");
}

double first(const json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  const json& v = doc[key];
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && !v.empty()) return v[0].get<double>();
  if (v.is_object()) return v.at("start").get<double>();
  return fallback;
}

std::vector<double> list(const json& doc, const char* key, std::vector<double> fallback) {
  if (!doc.contains(key)) return fallback;
  const json& v = doc[key];
  if (v.is_number()) return {v.get<double>()};
  if (v.is_array()) return v.get<std::vector<double>>();
  throw std::runtime_error(std::string("--") + key + " must be a number or list for this subcommand");
}

std::string output_of(const json& doc) { return doc.value("output", std::string("-")); }

qst_chain* make_chain(const json& doc) {
  std::vector<double> bulk;
  if (doc.contains("bulk_couplings")) bulk = doc["bulk_couplings"].get<std::vector<double>>();
  qst_chain* chain = nullptr;
  check(qst_chain_create(doc.value("n_channel", 29), bulk.empty() ? nullptr : bulk.data(), bulk.size(),
                         doc.value("coupling_scale", 1.0), &chain));
  return chain;
}

const double kPhase = 3.14159265358979323846 / std::sqrt(2.0);

qst_profile* make_profile(const json& doc, qst_chain* chain, double p, double alpha_default) {
  qst_profile* profile = nullptr;
  const double phase = doc.value("phase_target", kPhase);
  if (doc.contains("duration") && !doc.contains("alpha_max")) {
    check(qst_profile_create_for_duration(chain, p, first(doc, "duration", 0.0), phase, &profile));
  } else if (doc.contains("duration")) {
    check(qst_profile_create(p, first(doc, "alpha_max", alpha_default), first(doc, "duration", 0.0), &profile));
  } else {
    check(qst_profile_create_for_phase(chain, p, first(doc, "alpha_max", alpha_default), phase, &profile));
  }
  return profile;
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(path);
  if (!file || !(file << text)) throw std::runtime_error("cannot write '" + path + "'");
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void run_simulate(const Inputs& in) {
  const json doc = in.merged();
  qst_chain* chain = make_chain(doc);
  qst_profile* profile = make_profile(doc, chain, first(doc, "p", 0.0), 0.02);
  double duration = 0.0;
  check(qst_profile_duration(profile, &duration));
  qst_propagation_options opts = qst_propagation_options_default();
  opts.dt = doc.value("dt", opts.dt);
  opts.report_points = doc.value("report_points", opts.report_points);
  qst_result* result = nullptr;
  check(qst_propagate(chain, profile, in.t_max > 0.0 ? in.t_max : duration, &opts, &result));
  double peak_t = 0.0, peak_f = 0.0, drift = 0.0, final_f = 0.0;
  check(qst_result_peak(result, &peak_t, &peak_f));
  check(qst_result_norm_drift(result, &drift));
  check(qst_result_sample(result, qst_result_size(result) - 1, nullptr, nullptr, &final_f));
  check(qst_result_write_csv(result, output_of(doc).c_str()));
  std::cerr << "duration " << num(duration) << "  F(end) " << num(final_f) << "  peak F " << num(peak_f)
            << " at t=" << num(peak_t) << "  norm drift " << num(drift) << '\n';
  qst_result_destroy(result);
  qst_profile_destroy(profile);
  qst_chain_destroy(chain);
}

void run_sweep(const Inputs& in) {
  json doc = in.merged();
  qst_table* table = nullptr;
  check(qst_sweep_run(doc.dump().c_str(), &table));
  check(qst_table_write(table, output_of(doc).c_str()));
  std::cerr << qst_table_rows(table) << " rows\n";
  qst_table_destroy(table);
}

void run_filter(const Inputs& in) {
  json doc = in.merged();
  if (!doc.contains("duration") && !doc.contains("alpha_max")) doc["duration"] = 50.0;
  qst_chain* chain = make_chain(doc);
  const double lo = doc.value("omega_min", -2.0), hi = doc.value("omega_max", 2.0);
  const std::size_t n = doc.value("omega_points", std::size_t{801});
  std::vector<double> omega(n);
  for (std::size_t i = 0; i < n; ++i) omega[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  std::string header, body = "p,T,alpha_max,omega,filter_odd,filter_even\n";
  for (double p : list(doc, "p", {0.0, 2.0})) {
    qst_profile* profile = make_profile(doc, chain, p, 0.02);
    double t = 0.0, alpha = 0.0, zeta_t = 0.0, zeta_e = 0.0;
    check(qst_profile_duration(profile, &t));
    check(qst_profile_alpha_max(profile, &alpha));
    check(qst_infidelity_time_domain(chain, profile, &zeta_t));
    check(qst_infidelity_energy_domain(chain, profile, &zeta_e));
    std::vector<double> odd(n), even(n);
    check(qst_filter_spectrum(chain, profile, QST_PARITY_ODD, omega.data(), n, odd.data()));
    check(qst_filter_spectrum(chain, profile, QST_PARITY_EVEN, omega.data(), n, even.data()));
    header += "# p=" + num(p) + " T=" + num(t) + " zeta_time=" + num(zeta_t) + " zeta_energy=" + num(zeta_e) + "\n";
    for (std::size_t i = 0; i < n; ++i)
      body += num(p) + "," + num(t) + "," + num(alpha) + "," + num(omega[i]) + "," + num(odd[i]) + "," +
              num(even[i]) + "\n";
    qst_profile_destroy(profile);
  }
  header = std::string("# code_version: ") + qst_version() + "\n" + header;
  write_output(output_of(doc), header + body);
  qst_chain_destroy(chain);
}

void run_noise(const Inputs& in) {
  const json doc = in.merged();
  qst_chain* chain = make_chain(doc);
  qst_profile* profile = make_profile(doc, chain, first(doc, "p", 0.0), 0.02);
  double duration = 0.0;
  check(qst_profile_duration(profile, &duration));
  qst_noise_options opts = qst_noise_options_default();
  opts.kind = doc.value("noise_kind", std::string("static")) == "fluctuating" ? QST_NOISE_FLUCTUATING
                                                                               : QST_NOISE_STATIC;
  opts.strength = first(doc, "epsilon_j", 0.05);
  opts.correlation_time = first(doc, "tau_c", 1.0);
  opts.realizations = doc.value("realizations", opts.realizations);
  opts.seed = doc.value("seed", opts.seed);
  opts.include_boundary = doc.value("include_boundary", false) ? 1 : 0;
  opts.dt = doc.value("dt", opts.dt);
  opts.workers = doc.value("workers", opts.workers);
  std::vector<double> fidelities(opts.realizations);
  double mean = 0.0, error = 0.0;
  check(qst_monte_carlo(chain, profile, &opts, duration, &mean, &error, fidelities.data()));
  std::string text = std::string("# code_version: ") + qst_version() + "\n# seed: " + std::to_string(opts.seed) +
                     "\n# mean_infidelity: " + num(1.0 - mean) + "\n# std_error: " + num(error) +
                     "\nrealization,F\n";
  for (std::size_t r = 0; r < fidelities.size(); ++r) text += std::to_string(r) + "," + num(fidelities[r]) + "\n";
  write_output(output_of(doc), text);
  std::cerr << "T " << num(duration) << "  1-F " << num(1.0 - mean) << " +- " << num(error) << '\n';
  qst_profile_destroy(profile);
  qst_chain_destroy(chain);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary-controlled spin-chain state transfer"};
  app.set_version_flag("--version", std::string(qst_version()));
  app.require_subcommand(1);

  Inputs simulate_in, sweep_in, filter_in, noise_in;
  auto* simulate = app.add_subcommand("simulate", "single noise-free propagation, CSV of t,f,F");
  add_config_flags(simulate, simulate_in);
  simulate->add_option("--t_max", simulate_in.t_max, "propagation end (default: pulse duration)");
  auto* sweep = app.add_subcommand("sweep", "config-driven experiment sweep");
  add_config_flags(sweep, sweep_in);
  auto* filter = app.add_subcommand("filter", "filter spectra and filter-theory infidelity");
  add_config_flags(filter, filter_in);
  auto* noise = app.add_subcommand("noise", "Monte-Carlo average under coupling disorder");
  add_config_flags(noise, noise_in);

  CLI11_PARSE(app, argc, argv);
  try {
    if (simulate->parsed()) run_simulate(simulate_in);
    if (sweep->parsed()) run_sweep(sweep_in);
    if (filter->parsed()) run_filter(filter_in);
    if (noise->parsed()) run_noise(noise_in);
  } catch (const CommandFailure& f) {
    std::cerr << "qst: " << qst_status_name(f.status) << ": " << qst_last_error() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qst: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
