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

#ifndef QST_NOISE_HPP
#define QST_NOISE_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qst/chain_model.hpp"
#include "qst/control.hpp"

namespace qst {

enum class NoiseKind { static_noise, fluctuating };

const char* to_string(NoiseKind kind);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::static_noise;
  double strength = 0.0;          // epsilon_J
  double correlation_time = 0.0;  // tau_c, fluctuating only
  std::size_t realizations = 1000;
  std::uint64_t master_seed = 0;
  bool include_boundary = false;
};

void validate(const NoiseSpec& noise);

// Uniform variate in [-1, 1] keyed by (seed, realization, bond, block).
// Bond index N is used for the left boundary bond, N+1 for the right one.
double keyed_uniform(std::uint64_t seed, std::uint64_t realization, std::uint64_t bond,
                     std::uint64_t block);

CouplingOffsets sample_static(const NoiseSpec& noise, const ChainSpec& chain, std::size_t realization);

// Renewal blocks of length tau_c covering [0, t_max]. Block 0 equals the
// static draw of the same realization.
DisorderTrajectory sample_fluctuating(const NoiseSpec& noise, const ChainSpec& chain,
                                      std::size_t realization, double t_max);

struct MonteCarloOptions {
  double dt = 0.01;  // capped at the propagator step limit
  std::size_t workers = 0;  // 0 means default_workers()
};

struct MonteCarloResult {
  double mean_fidelity = 0.0;
  double standard_error = 0.0;
  std::vector<double> fidelities;  // by realization index

  double mean_infidelity() const { return 1.0 - mean_fidelity; }
};

MonteCarloResult monte_carlo_fidelity(const ChainSpec& chain, const ModulationProfile& profile,
                                      const NoiseSpec& noise, double duration,
                                      const MonteCarloOptions& options = {});

// N epsilon^2 / 5: static-disorder infidelity floor at weak coupling.
double localization_bound(const ChainSpec& chain, double epsilon);

}  // namespace qst

#endif  // QST_NOISE_HPP
