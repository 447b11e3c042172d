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

#ifndef QST_EXPERIMENTS_HPP
#define QST_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qst/chain_model.hpp"
#include "qst/noise.hpp"

namespace qst {

// Experiment ids accepted in the "experiment" key.
const std::vector<std::string>& experiment_ids();

// Resolved sweep configuration. Empty grids mean "experiment default".
struct SweepConfig {
  std::string experiment = "fig2a_alpha";
  ChainSpec chain = uniform_chain(29);
  std::vector<double> p;
  std::vector<double> alpha_max;
  double phase_target = 0.0;  // filled with pi/sqrt2
  std::vector<double> duration;
  NoiseSpec noise;
  std::vector<double> epsilon_j;
  std::vector<double> tau_c;
  double dt = 0.01;
  std::size_t report_points = 1000;
  double omega_min = -2.0;
  double omega_max = 2.0;
  std::size_t omega_points = 801;
  double threshold = 0.97;
  std::string output;
  std::size_t workers = 0;
};

// Parses the flat JSON schema documented in README. Unknown keys, type
// mismatches and invalid values throw ErrorCode::config naming the key.
SweepConfig parse_config(std::string_view text);

// Canonical JSON of a resolved config; identical configs give identical text.
std::string canonical_json(const SweepConfig& config);

// 64-bit FNV-1a of canonical_json, as 16 hex digits.
std::string config_hash(const SweepConfig& config);

struct ResultTable {
  std::vector<std::string> metadata;  // "key: value" lines, emitted with '#'
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

ResultTable run_sweep(const SweepConfig& config);

void write_csv(const ResultTable& table, std::ostream& out);
std::string to_csv(const ResultTable& table);

// Fixed-format number used in every emitted table.
std::string format_number(double x);

}  // namespace qst

#endif  // QST_EXPERIMENTS_HPP
