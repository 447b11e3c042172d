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

#ifndef QST_FILTER_THEORY_HPP
#define QST_FILTER_THEORY_HPP

#include <complex>
#include <span>
#include <vector>

#include "qst/control.hpp"
#include "qst/spectral.hpp"

namespace qst {

// Omega_q(t) = alpha(t) c_q(t) with c_q = cos(sqrt2 phi(t)) for the parity
// class that contains the central mode and c_q = 1 for the other class.
double control_function(const ModulationProfile& profile, Parity parity, double t, double j_z,
                        Parity central = Parity::odd);

struct TimeDomainOptions {
  // Outer/inner trapezoid step; 0 picks min(0.1 / max|omega_k|, T / 400).
  double max_step = 0.0;
  // Refinement disagreement that triggers another halving.
  double tolerance = 0.01;
  int max_refinements = 4;
};

// zeta(T) = Re int_0^T dt int_0^t dt' sum_q Omega_q(t) Omega_q(t') Phi_q(t - t'),
// nested trapezoid with Richardson extrapolation.
double infidelity_time_domain(const ModulationProfile& profile, const SpectralData& data,
                              const TimeDomainOptions& options = {});

struct FilterSpectrum {
  Parity parity = Parity::odd;
  double duration = 0.0;
  std::vector<double> omega;
  std::vector<double> values;
  // F_T ~ tail_coefficient / |omega|^tail_exponent for |omega| -> infinity,
  // averaged over the oscillation.
  double tail_coefficient = 0.0;
  double tail_exponent = 2.0;

  // Trapezoid over the grid plus the analytic 1/omega^2 tails beyond it.
  double integrated_weight() const;
};

std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

// F_T^q(omega) = (1/2pi) |int_0^T Omega_q(t) e^{i omega t} dt|^2.
FilterSpectrum filter_spectrum(const ModulationProfile& profile, Parity parity,
                               std::span<const double> omega_grid, double j_z,
                               Parity central = Parity::odd);

// int_0^T |Omega_q(t)|^2 dt, the Parseval partner of integrated_weight().
double control_norm(const ModulationProfile& profile, Parity parity, double j_z,
                    Parity central = Parity::odd);

// zeta(T) = pi sum_q int rho^q(omega) F_T^q(omega) d omega. Discrete lines
// reduce to sum_k |Jk|^2 pi F_T(omega_k).
double infidelity_energy_domain(const ModulationProfile& profile, const BathSpectrumModel& odd,
                                const BathSpectrumModel& even, double j_z,
                                Parity central = Parity::odd);

// Convenience form using the channel's own discrete lines.
double infidelity_energy_domain(const ModulationProfile& profile, const SpectralData& data);

// Overlap on precomputed spectra; the grids must be uniform, identical, and
// cover each continuous bath's support.
double infidelity_energy_domain(const FilterSpectrum& odd_filter, const FilterSpectrum& even_filter,
                                const BathSpectrumModel& odd, const BathSpectrumModel& even);

struct PulseFamilyResult {
  double p = 0.0;
  double alpha_max = 0.0;
  double zeta = 0.0;
};

// Ranks the sin^p family (ascending zeta) at a fixed duration T and phase
// target; alpha_M follows from the phase constraint for every p.
std::vector<PulseFamilyResult> pulse_family_search(double phase_target, double duration,
                                                   const BathSpectrumModel& odd,
                                                   const BathSpectrumModel& even,
                                                   std::span<const double> p_grid, double j_z,
                                                   Parity central = Parity::odd);

}  // namespace qst

#endif  // QST_FILTER_THEORY_HPP
