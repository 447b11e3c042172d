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

#include "qst/noise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qst/error.hpp"
#include "qst/parallel.hpp"
#include "qst/propagator.hpp"

namespace qst {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 output function.
std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double offset(const NoiseSpec& noise, std::size_t realization, std::size_t bond, std::size_t block) {
  return noise.strength * keyed_uniform(noise.master_seed, realization, bond, block);
}

CouplingOffsets draw_block(const NoiseSpec& noise, const ChainSpec& chain, std::size_t realization,
                           std::size_t block) {
  CouplingOffsets out;
  if (noise.strength == 0.0) return out;
  const auto bonds = static_cast<std::size_t>(chain.n_channel - 1);
  out.bulk.resize(bonds);
  for (std::size_t i = 0; i < bonds; ++i) out.bulk[i] = offset(noise, realization, i, block);
  if (noise.include_boundary) {
    out.left_boundary = offset(noise, realization, bonds + 1, block);
    out.right_boundary = offset(noise, realization, bonds + 2, block);
  }
  return out;
}

}  // namespace

const char* to_string(NoiseKind kind) {
  return kind == NoiseKind::static_noise ? "static" : "fluctuating";
}

void validate(const NoiseSpec& noise) {
  require(noise.strength >= 0.0 && std::isfinite(noise.strength), ErrorCode::invalid_argument,
          "noise strength epsilon_J must be non-negative");
  require(noise.strength < 1.0, ErrorCode::invalid_argument,
          "noise strength epsilon_J must be below 1 to keep couplings positive");
  if (noise.kind == NoiseKind::fluctuating)
    require(noise.correlation_time > 0.0 && std::isfinite(noise.correlation_time),
            ErrorCode::invalid_argument, "fluctuating noise needs correlation time tau_c > 0");
}

double keyed_uniform(std::uint64_t seed, std::uint64_t realization, std::uint64_t bond,
                     std::uint64_t block) {
  std::uint64_t h = mix(seed + kGolden);
  h = mix(h ^ (realization + kGolden));
  h = mix(h ^ (bond + 2 * kGolden));
  h = mix(h ^ (block + 3 * kGolden));
  const double unit = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
  return 2.0 * unit - 1.0;
}

CouplingOffsets sample_static(const NoiseSpec& noise, const ChainSpec& chain, std::size_t realization) {
  validate(chain);
  validate(noise);
  return draw_block(noise, chain, realization, 0);
}

DisorderTrajectory sample_fluctuating(const NoiseSpec& noise, const ChainSpec& chain,
                                      std::size_t realization, double t_max) {
  validate(chain);
  require(noise.kind == NoiseKind::fluctuating, ErrorCode::invalid_argument,
          "sample_fluctuating needs a fluctuating noise spec");
  validate(noise);
  require(t_max > 0.0, ErrorCode::invalid_argument, "t_max must be positive");
  DisorderTrajectory out;
  out.block_length = noise.correlation_time;
  const auto blocks = static_cast<std::size_t>(std::max(1.0, std::ceil(t_max / noise.correlation_time)));
  out.blocks.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) out.blocks.push_back(draw_block(noise, chain, realization, b));
  return out;
}

MonteCarloResult monte_carlo_fidelity(const ChainSpec& chain, const ModulationProfile& profile,
                                      const NoiseSpec& noise, double duration,
                                      const MonteCarloOptions& options) {
  validate(chain);
  validate(noise);
  require(noise.realizations >= 2, ErrorCode::invalid_argument, "Monte-Carlo needs M >= 2 realizations");
  require(duration > 0.0, ErrorCode::invalid_argument, "readout time must be positive");

  PropagationOptions prop;
  prop.report_points = 1;
  if (noise.kind == NoiseKind::fluctuating) prop.correlation_time = noise.correlation_time;
  prop.dt = std::min(options.dt, step_limit(chain, profile.duration, duration, prop.correlation_time));

  const std::size_t m = noise.realizations;
  MonteCarloResult out;
  out.fidelities.assign(m, 0.0);
  const std::size_t workers = options.workers == 0 ? default_workers() : options.workers;
  parallel_for(m, workers, [&](std::size_t r) {
    try {
      DisorderTrajectory trajectory;
      if (noise.kind == NoiseKind::static_noise) {
        trajectory.blocks.push_back(draw_block(noise, chain, r, 0));
      } else {
        trajectory = sample_fluctuating(noise, chain, r, duration);
      }
      out.fidelities[r] = propagate(chain, profile, &trajectory, duration, prop).final_fidelity();
    } catch (const Error& e) {
      fail(e.code(), "realization " + std::to_string(r) + ": " + e.what());
    }
  });

  // Shifted accumulation: identical samples give exactly zero spread.
  const double x0 = out.fidelities[0];
  double shift = 0.0;
  for (double f : out.fidelities) shift += f - x0;
  out.mean_fidelity = x0 + shift / static_cast<double>(m);
  double ss = 0.0;
  for (double f : out.fidelities) ss += (f - out.mean_fidelity) * (f - out.mean_fidelity);
  out.standard_error = std::sqrt(ss / static_cast<double>(m - 1) / static_cast<double>(m));
  return out;
}

double localization_bound(const ChainSpec& chain, double epsilon) {
  validate(chain);
  require(epsilon >= 0.0, ErrorCode::invalid_argument, "epsilon_J must be non-negative");
  return chain.n_channel * epsilon * epsilon / 5.0;
}

}  // namespace qst
