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

#include "qst/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qst/error.hpp"

namespace qst {

const char* to_string(Parity q) { return q == Parity::odd ? "odd" : "even"; }

Parity mode_parity(int k) { return k % 2 == 1 ? Parity::odd : Parity::even; }

TridiagonalEigen eigen_decompose(std::span<const double> off_diagonal) {
  const auto n = static_cast<Eigen::Index>(off_diagonal.size() + 1);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (Eigen::Index i = 0; i + 1 < n; ++i) sub(i) = off_diagonal[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::numerical, "tridiagonal eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SpectralData channel_eigenmodes(const ChainSpec& spec, const CouplingOffsets* disorder) {
  validate(spec);
  const auto n = static_cast<std::size_t>(spec.n_channel);
  if (disorder != nullptr && !disorder->bulk.empty() && disorder->bulk.size() + 1 != n)
    fail(ErrorCode::dimension_mismatch, "disorder length does not match bulk bond count");

  std::vector<double> bulk(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double j = spec.coupling_scale * spec.bulk_couplings[i];
    if (disorder != nullptr && !disorder->bulk.empty()) j *= 1.0 + disorder->bulk[i];
    bulk[i] = j;
  }
  const TridiagonalEigen eig = eigen_decompose(bulk);

  SpectralData data;
  data.eigenenergies.resize(n);
  data.mode_weights.resize(n);
  data.far_weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    // descending order
    const auto col = static_cast<Eigen::Index>(n - 1 - k);
    double first = eig.vectors(0, col);
    double last = eig.vectors(static_cast<Eigen::Index>(n - 1), col);
    if (first < 0.0) {
      first = -first;
      last = -last;
    }
    data.eigenenergies[k] = eig.values(col);
    data.mode_weights[k] = spec.coupling_scale * first;
    data.far_weights[k] = spec.coupling_scale * last;
  }
  data.central_index = static_cast<int>((n + 1) / 2);
  // Chiral symmetry pins the middle eigenvalue to zero; clean up rounding.
  data.eigenenergies[static_cast<std::size_t>(data.central_index - 1)] = 0.0;
  data.central_coupling = data.weight(data.central_index);
  return data;
}

std::complex<double> bath_correlation(const SpectralData& data, Parity parity, double tau) {
  std::complex<double> sum{0.0, 0.0};
  for (int k = 1; k <= data.n_modes(); ++k) {
    if (k == data.central_index || mode_parity(k) != parity) continue;
    const double w = data.weight(k);
    sum += w * w * std::polar(1.0, -data.energy(k) * tau);
  }
  return sum;
}

double central_gap(const SpectralData& data) {
  if (data.n_modes() < 3) return 0.0;
  return std::abs(data.energy(data.central_index) - data.energy(data.central_index + 1));
}

namespace {

double semicircle_norm(double radius, double gap) {
  const double r2 = radius * radius;
  return std::numbers::pi * r2 / 2.0 - gap * std::sqrt(r2 - gap * gap) - r2 * std::asin(gap / radius);
}

constexpr double kGaussianReach = 10.0;

}  // namespace

double BathSpectrumModel::total_weight() const {
  if (kind == Kind::semicircle_with_gap) return semicircle_weight;
  double sum = 0.0;
  for (const auto& line : lines) sum += line.weight;
  return sum;
}

double BathSpectrumModel::density(double omega) const {
  switch (kind) {
    case Kind::discrete_lines:
      return 0.0;
    case Kind::smoothed_lines: {
      const double norm = 1.0 / (smoothing * std::sqrt(2.0 * std::numbers::pi));
      double sum = 0.0;
      for (const auto& line : lines) {
        const double x = (omega - line.energy) / smoothing;
        if (std::abs(x) < kGaussianReach) sum += line.weight * norm * std::exp(-0.5 * x * x);
      }
      return sum;
    }
    case Kind::semicircle_with_gap: {
      const double a = std::abs(omega);
      if (a >= radius || a < gap_half_width) return 0.0;
      return semicircle_weight * std::sqrt(radius * radius - omega * omega) /
             semicircle_norm(radius, gap_half_width);
    }
  }
  return 0.0;
}

double BathSpectrumModel::support_min() const {
  if (kind == Kind::semicircle_with_gap) return -radius;
  double lo = 0.0;
  for (const auto& line : lines) lo = std::min(lo, line.energy);
  return lo - kGaussianReach * smoothing;
}

double BathSpectrumModel::support_max() const {
  if (kind == Kind::semicircle_with_gap) return radius;
  double hi = 0.0;
  for (const auto& line : lines) hi = std::max(hi, line.energy);
  return hi + kGaussianReach * smoothing;
}

std::vector<double> BathSpectrumModel::breakpoints() const {
  if (kind == Kind::semicircle_with_gap) {
    if (gap_half_width > 0.0) return {-radius, -gap_half_width, gap_half_width, radius};
    return {-radius, radius};
  }
  return {support_min(), support_max()};
}

BathSpectrumModel bath_spectrum(const SpectralData& data, Parity parity, double smoothing) {
  require(smoothing >= 0.0 && std::isfinite(smoothing), ErrorCode::invalid_argument,
          "smoothing width must be >= 0");
  BathSpectrumModel model;
  model.parity = parity;
  model.smoothing = smoothing;
  model.kind = smoothing > 0.0 ? BathSpectrumModel::Kind::smoothed_lines
                               : BathSpectrumModel::Kind::discrete_lines;
  for (int k = 1; k <= data.n_modes(); ++k) {
    if (k == data.central_index || mode_parity(k) != parity) continue;
    const double w = data.weight(k);
    model.lines.push_back({data.energy(k), w * w});
  }
  return model;
}

BathSpectrumModel semicircle_bath(Parity parity, double total_weight, double radius,
                                  double gap_half_width) {
  require(radius > 0.0, ErrorCode::invalid_argument, "semicircle radius must be positive");
  require(gap_half_width >= 0.0 && gap_half_width < radius, ErrorCode::invalid_argument,
          "gap half-width must lie in [0, radius)");
  require(total_weight >= 0.0, ErrorCode::invalid_argument, "bath weight must be >= 0");
  BathSpectrumModel model;
  model.kind = BathSpectrumModel::Kind::semicircle_with_gap;
  model.parity = parity;
  model.radius = radius;
  model.gap_half_width = gap_half_width;
  model.semicircle_weight = total_weight;
  return model;
}

BathSpectrumModel semicircle_bath(const SpectralData& data, Parity parity, double coupling_scale,
                                  double gap_half_width) {
  const double weight = bath_spectrum(data, parity).total_weight();
  const double gap = gap_half_width >= 0.0 ? gap_half_width : 0.5 * central_gap(data);
  return semicircle_bath(parity, weight, 2.0 * coupling_scale, gap);
}

}  // namespace qst
