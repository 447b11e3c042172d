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

#ifndef QST_SPECTRAL_HPP
#define QST_SPECTRAL_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qst/chain_model.hpp"

namespace qst {

enum class Parity { odd, even };

const char* to_string(Parity q);

// Eigenpairs of a zero-diagonal real symmetric tridiagonal matrix given by
// its off-diagonal. Eigenvalues ascending, eigenvectors in columns.
struct TridiagonalEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

TridiagonalEigen eigen_decompose(std::span<const double> off_diagonal);

// Channel (sites 1..N) eigenmodes. Index k runs 1..N over eigenenergies sorted
// descending, so the uniform chain gives omega_k = 2J cos(k pi/(N+1)).
struct SpectralData {
  std::vector<double> eigenenergies;
  // Jk_k = J * u_k(1), the coupling of the source qubit to mode k (alpha
  // excluded). Sign fixed so that u_k(1) > 0.
  std::vector<double> mode_weights;
  // J * u_k(N); equals +-mode_weights for mirror-symmetric channels.
  std::vector<double> far_weights;
  int central_index = 0;  // z = (N+1)/2, 1-based
  double central_coupling = 0.0;

  int n_modes() const { return static_cast<int>(eigenenergies.size()); }
  double energy(int k) const { return eigenenergies[static_cast<std::size_t>(k - 1)]; }
  double weight(int k) const { return mode_weights[static_cast<std::size_t>(k - 1)]; }
  Parity central_parity() const { return central_index % 2 == 1 ? Parity::odd : Parity::even; }
};

Parity mode_parity(int k);

SpectralData channel_eigenmodes(const ChainSpec& spec, const CouplingOffsets* disorder = nullptr);

// Phi_q(tau) = sum over k of parity q, k != z, of |Jk_k|^2 exp(-i omega_k tau).
std::complex<double> bath_correlation(const SpectralData& data, Parity parity, double tau);

// Spectral density rho^q(omega) of one parity class. Total weight is the
// class sum of |Jk|^2; the overlap with a filter carries the Fourier factor pi
// (see infidelity_energy_domain).
struct BathSpectrumModel {
  enum class Kind { discrete_lines, smoothed_lines, semicircle_with_gap };

  struct Line {
    double energy;
    double weight;
  };

  Kind kind = Kind::discrete_lines;
  Parity parity = Parity::odd;
  std::vector<Line> lines;
  double smoothing = 0.0;  // Gaussian sigma for smoothed_lines
  double radius = 2.0;     // semicircle support [-radius, radius]
  double gap_half_width = 0.0;
  double semicircle_weight = 0.0;

  double total_weight() const;
  double density(double omega) const;
  // Interval outside which density() is negligible (< 1e-16 relative).
  double support_min() const;
  double support_max() const;
  // Points where the density is not smooth; quadrature is split there.
  std::vector<double> breakpoints() const;
};

// smoothing == 0 gives discrete lines; smoothing > 0 convolves every line with
// a normalized Gaussian of that standard deviation.
BathSpectrumModel bath_spectrum(const SpectralData& data, Parity parity, double smoothing = 0.0);

// Wigner semicircle on [-radius, radius] with zero density for |omega| < gap,
// normalized to total_weight.
BathSpectrumModel semicircle_bath(Parity parity, double total_weight, double radius,
                                  double gap_half_width);

// Semicircle carrying the same class weight as data, radius 2J and by default
// gap half-width equal to half the nearest gap around omega_z.
BathSpectrumModel semicircle_bath(const SpectralData& data, Parity parity, double coupling_scale,
                                  double gap_half_width = -1.0);

// |omega_z - omega_{z+1}|, or 0 for a single-site channel.
double central_gap(const SpectralData& data);

}  // namespace qst

#endif  // QST_SPECTRAL_HPP
