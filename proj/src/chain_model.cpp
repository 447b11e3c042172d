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

#include "qst/chain_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qst/error.hpp"

namespace qst {

ChainSpec uniform_chain(int n_channel, double coupling_scale) {
  ChainSpec spec;
  spec.n_channel = n_channel;
  spec.coupling_scale = coupling_scale;
  if (n_channel > 1) spec.bulk_couplings.assign(static_cast<std::size_t>(n_channel - 1), 1.0);
  validate(spec);
  return spec;
}

void validate(const ChainSpec& spec) {
  if (spec.n_channel < 1 || spec.n_channel % 2 == 0)
    fail(ErrorCode::invalid_argument,
         "channel length N must be a positive odd integer, got " + std::to_string(spec.n_channel));
  if (spec.bulk_couplings.size() != static_cast<std::size_t>(spec.n_channel - 1))
    fail(ErrorCode::dimension_mismatch,
         "expected " + std::to_string(spec.n_channel - 1) + " bulk couplings, got " +
             std::to_string(spec.bulk_couplings.size()));
  if (!(spec.coupling_scale > 0.0) || !std::isfinite(spec.coupling_scale))
    fail(ErrorCode::invalid_argument, "coupling scale J must be positive");
  for (std::size_t i = 0; i < spec.bulk_couplings.size(); ++i) {
    const double j = spec.bulk_couplings[i];
    if (!(j > 0.0) || !std::isfinite(j))
      fail(ErrorCode::invalid_argument,
           "bulk coupling J_" + std::to_string(i + 1) + " must be positive");
  }
}

void fill_bonds(const ChainSpec& spec, double left_alpha, double right_alpha,
                const CouplingOffsets* disorder, std::span<double> bonds) {
  const std::size_t n = static_cast<std::size_t>(spec.n_channel);
  const double scale = spec.coupling_scale;
  double left = 0.0, right = 0.0;
  if (disorder != nullptr) {
    left = disorder->left_boundary;
    right = disorder->right_boundary;
  }
  bonds[0] = scale * left_alpha * (1.0 + left);
  bonds[n] = scale * right_alpha * (1.0 + right);
  const bool has_bulk = disorder != nullptr && !disorder->bulk.empty();
  for (std::size_t i = 1; i < n; ++i) {
    double j = scale * spec.bulk_couplings[i - 1];
    if (has_bulk) j *= 1.0 + disorder->bulk[i - 1];
    bonds[i] = j;
  }
}

InstantaneousHamiltonian build_hamiltonian(const ChainSpec& spec, double alpha,
                                           const CouplingOffsets* disorder) {
  validate(spec);
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    fail(ErrorCode::invalid_argument, "boundary coupling fraction alpha must be >= 0");
  if (disorder != nullptr && !disorder->bulk.empty() &&
      disorder->bulk.size() != spec.bulk_couplings.size())
    fail(ErrorCode::dimension_mismatch,
         "disorder has " + std::to_string(disorder->bulk.size()) + " offsets, chain has " +
             std::to_string(spec.bulk_couplings.size()) + " bulk bonds");
  InstantaneousHamiltonian h;
  h.off_diagonal.resize(static_cast<std::size_t>(spec.n_channel) + 1);
  fill_bonds(spec, alpha, alpha, disorder, h.off_diagonal);
  return h;
}

std::size_t DisorderTrajectory::block_index(double t) const {
  if (blocks.size() <= 1 || !(block_length > 0.0)) return 0;
  const double b = std::floor(std::max(t, 0.0) / block_length);
  return std::min(static_cast<std::size_t>(b), blocks.size() - 1);
}

const CouplingOffsets& DisorderTrajectory::at(double t) const {
  require(!blocks.empty(), ErrorCode::invalid_argument, "empty disorder trajectory");
  return blocks[block_index(t)];
}

std::vector<double> DisorderTrajectory::breakpoints(double t_max) const {
  std::vector<double> cuts;
  if (blocks.size() <= 1) return cuts;
  for (std::size_t b = 1; b < blocks.size(); ++b) {
    const double t = block_length * static_cast<double>(b);
    if (t >= t_max) break;
    cuts.push_back(t);
  }
  return cuts;
}

bool validate_mirror_symmetry(const ChainSpec& spec) {
  const auto& j = spec.bulk_couplings;
  const std::size_t m = j.size();
  for (std::size_t i = 0; i < m / 2; ++i) {
    const double a = j[i], b = j[m - 1 - i];
    const double scale = std::max(std::abs(a), std::abs(b));
    if (std::abs(a - b) > 1e-12 * scale) return false;
  }
  return true;
}

}  // namespace qst
