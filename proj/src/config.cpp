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

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "json.hpp"

#include "qst/control.hpp"
#include "qst/error.hpp"
#include "qst/experiments.hpp"

namespace qst {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  fail(ErrorCode::config, "config key '/" + key + "': " + why);
}

const char* kind_name(const json& value) { return value.type_name(); }

double get_number(const std::string& key, const json& value) {
  if (!value.is_number()) bad(key, std::string("expected number, got ") + kind_name(value));
  const double x = value.get<double>();
  if (!std::isfinite(x)) bad(key, "value must be finite");
  return x;
}

std::uint64_t get_unsigned(const std::string& key, const json& value) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
    bad(key, std::string("expected non-negative integer, got ") + kind_name(value));
  return value.get<std::uint64_t>();
}

std::vector<double> get_grid(const std::string& key, const json& value) {
  if (value.is_number()) return {get_number(key, value)};
  if (value.is_array()) {
    std::vector<double> out;
    for (std::size_t i = 0; i < value.size(); ++i)
      out.push_back(get_number(key + "/" + std::to_string(i), value[i]));
    if (out.empty()) bad(key, "grid must not be empty");
    return out;
  }
  if (value.is_object()) {
    double start = 0.0, stop = 0.0;
    std::uint64_t count = 0;
    std::string scale = "linear";
    bool has_start = false, has_stop = false, has_count = false;
    for (const auto& [k, v] : value.items()) {
      const std::string path = key + "/" + k;
      if (k == "start") { start = get_number(path, v); has_start = true; }
      else if (k == "stop") { stop = get_number(path, v); has_stop = true; }
      else if (k == "count") { count = get_unsigned(path, v); has_count = true; }
      else if (k == "scale") {
        if (!v.is_string()) bad(path, std::string("expected string, got ") + kind_name(v));
        scale = v.get<std::string>();
        if (scale != "linear" && scale != "log") bad(path, "scale must be 'linear' or 'log'");
      } else {
        bad(path, "unknown range key");
      }
    }
    if (!has_start || !has_stop || !has_count) bad(key, "range needs start, stop and count");
    if (count == 0) bad(key + "/count", "range must not be empty");
    if (scale == "log" && (start <= 0.0 || stop <= 0.0)) bad(key, "log range needs positive bounds");
    std::vector<double> out(count);
    for (std::uint64_t i = 0; i < count; ++i) {
      const double u = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
      out[i] = scale == "log" ? std::exp(std::log(start) + u * (std::log(stop) - std::log(start)))
                              : start + u * (stop - start);
    }
    return out;
  }
  bad(key, std::string("expected number, array or range object, got ") + kind_name(value));
}

void check_grid(const std::string& key, const std::vector<double>& grid, double lo, bool strict) {
  for (double x : grid)
    if (strict ? !(x > lo) : !(x >= lo))
      bad(key, "value " + format_number(x) + (strict ? " must be > " : " must be >= ") + format_number(lo));
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids{"fig2a_T",    "fig2a_alpha", "fig2b_static",
                                            "fig2b_tauc", "fig1_filters", "bound_check"};
  return ids;
}

SweepConfig parse_config(std::string_view text) {
  json doc;
  bool blank = true;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
  if (blank) {
    doc = json::object();
  } else {
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::config, std::string("config is not valid JSON: ") + e.what());
    }
  }
  if (!doc.is_object()) fail(ErrorCode::config, "config document must be a JSON object");

  SweepConfig cfg;
  cfg.phase_target = kTransferPhase;
  bool have_bulk = false;
  for (const auto& [key, v] : doc.items()) {
    if (key == "experiment") {
      if (!v.is_string()) bad(key, std::string("expected string, got ") + kind_name(v));
      cfg.experiment = v.get<std::string>();
    } else if (key == "n_channel") {
      if (!v.is_number_integer()) bad(key, std::string("expected integer, got ") + kind_name(v));
      cfg.chain.n_channel = v.get<int>();
    } else if (key == "coupling_scale") {
      cfg.chain.coupling_scale = get_number(key, v);
    } else if (key == "bulk_couplings") {
      if (!v.is_array()) bad(key, std::string("expected array, got ") + kind_name(v));
      cfg.chain.bulk_couplings.clear();
      for (std::size_t i = 0; i < v.size(); ++i)
        cfg.chain.bulk_couplings.push_back(get_number(key + "/" + std::to_string(i), v[i]));
      have_bulk = true;
    } else if (key == "p") {
      cfg.p = get_grid(key, v);
    } else if (key == "alpha_max") {
      cfg.alpha_max = get_grid(key, v);
    } else if (key == "phase_target") {
      cfg.phase_target = get_number(key, v);
    } else if (key == "duration") {
      cfg.duration = get_grid(key, v);
    } else if (key == "noise_kind") {
      if (!v.is_string()) bad(key, std::string("expected string, got ") + kind_name(v));
      const auto s = v.get<std::string>();
      if (s == "static") cfg.noise.kind = NoiseKind::static_noise;
      else if (s == "fluctuating") cfg.noise.kind = NoiseKind::fluctuating;
      else bad(key, "expected 'static' or 'fluctuating'");
    } else if (key == "epsilon_j") {
      cfg.epsilon_j = get_grid(key, v);
    } else if (key == "tau_c") {
      cfg.tau_c = get_grid(key, v);
    } else if (key == "realizations") {
      cfg.noise.realizations = get_unsigned(key, v);
    } else if (key == "include_boundary") {
      if (!v.is_boolean()) bad(key, std::string("expected boolean, got ") + kind_name(v));
      cfg.noise.include_boundary = v.get<bool>();
    } else if (key == "seed") {
      cfg.noise.master_seed = get_unsigned(key, v);
    } else if (key == "dt") {
      cfg.dt = get_number(key, v);
    } else if (key == "report_points") {
      cfg.report_points = get_unsigned(key, v);
    } else if (key == "omega_min") {
      cfg.omega_min = get_number(key, v);
    } else if (key == "omega_max") {
      cfg.omega_max = get_number(key, v);
    } else if (key == "omega_points") {
      cfg.omega_points = get_unsigned(key, v);
    } else if (key == "threshold") {
      cfg.threshold = get_number(key, v);
    } else if (key == "output") {
      if (!v.is_string()) bad(key, std::string("expected string, got ") + kind_name(v));
      cfg.output = v.get<std::string>();
    } else if (key == "workers") {
      cfg.workers = get_unsigned(key, v);
    } else {
      bad(key, "unknown key");
    }
  }

  const auto& ids = experiment_ids();
  if (std::find(ids.begin(), ids.end(), cfg.experiment) == ids.end())
    bad("experiment", "unknown experiment '" + cfg.experiment + "'");
  if (cfg.chain.n_channel < 1 || cfg.chain.n_channel % 2 == 0) bad("n_channel", "must be a positive odd integer");
  if (!(cfg.chain.coupling_scale > 0.0)) bad("coupling_scale", "must be > 0");
  if (!have_bulk) cfg.chain.bulk_couplings.assign(static_cast<std::size_t>(cfg.chain.n_channel - 1), 1.0);
  if (cfg.chain.bulk_couplings.size() != static_cast<std::size_t>(cfg.chain.n_channel - 1))
    bad("bulk_couplings", "needs n_channel - 1 entries");
  check_grid("bulk_couplings", cfg.chain.bulk_couplings, 0.0, true);
  check_grid("p", cfg.p, 0.0, false);
  check_grid("alpha_max", cfg.alpha_max, 0.0, true);
  check_grid("duration", cfg.duration, 0.0, true);
  check_grid("epsilon_j", cfg.epsilon_j, 0.0, false);
  for (double e : cfg.epsilon_j)
    if (!(e < 1.0)) bad("epsilon_j", "value " + format_number(e) + " must be < 1");
  check_grid("tau_c", cfg.tau_c, 0.0, true);
  if (!(cfg.phase_target > 0.0)) bad("phase_target", "must be > 0");
  if (cfg.noise.realizations < 2) bad("realizations", "must be >= 2");
  if (!(cfg.dt > 0.0)) bad("dt", "must be > 0");
  if (cfg.report_points < 1) bad("report_points", "must be >= 1");
  if (!(cfg.omega_max > cfg.omega_min)) bad("omega_max", "must exceed omega_min");
  if (cfg.omega_points < 2) bad("omega_points", "must be >= 2");
  if (!(cfg.threshold > 0.5 && cfg.threshold < 1.0)) bad("threshold", "must lie in (0.5, 1)");
  if (!cfg.epsilon_j.empty()) cfg.noise.strength = cfg.epsilon_j.front();
  if (!cfg.tau_c.empty()) cfg.noise.correlation_time = cfg.tau_c.front();
  return cfg;
}

std::string canonical_json(const SweepConfig& c) {
  // nlohmann::json objects keep keys sorted, so dump() is canonical.
  json doc;
  doc["experiment"] = c.experiment;
  doc["n_channel"] = c.chain.n_channel;
  doc["coupling_scale"] = c.chain.coupling_scale;
  doc["bulk_couplings"] = c.chain.bulk_couplings;
  doc["p"] = c.p;
  doc["alpha_max"] = c.alpha_max;
  doc["phase_target"] = c.phase_target;
  doc["duration"] = c.duration;
  doc["noise_kind"] = to_string(c.noise.kind);
  doc["epsilon_j"] = c.epsilon_j;
  doc["tau_c"] = c.tau_c;
  doc["realizations"] = c.noise.realizations;
  doc["include_boundary"] = c.noise.include_boundary;
  doc["seed"] = c.noise.master_seed;
  doc["dt"] = c.dt;
  doc["report_points"] = c.report_points;
  doc["omega_min"] = c.omega_min;
  doc["omega_max"] = c.omega_max;
  doc["omega_points"] = c.omega_points;
  doc["threshold"] = c.threshold;
  // output path and worker count do not change the data rows.
  return doc.dump();
}

std::string config_hash(const SweepConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_json(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace qst
