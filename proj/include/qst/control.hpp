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

#ifndef QST_CONTROL_HPP
#define QST_CONTROL_HPP

#include <numbers>
#include <optional>
#include <variant>
#include <vector>

namespace qst {

// Phase that completes one resonant swap source -> central mode -> target.
inline constexpr double kTransferPhase = std::numbers::pi / std::numbers::sqrt2;

// alpha(t) = alpha_M sin^p(pi t / T)
struct SinPowerShape {
  double p = 0.0;
};

// alpha(t) = alpha_M (a + b sin^p(pi t / T)) / (a + b), peak alpha_M at T/2.
struct MarkovianShape {
  double a = 1.0 / 3.0;
  double b = 1.0;
  double p = 3.5;
};

// Piecewise-linear alpha(t) / alpha_M on knots covering [0, T].
struct TabulatedShape {
  std::vector<double> times;
  std::vector<double> values;
};

using PulseShape = std::variant<SinPowerShape, MarkovianShape, TabulatedShape>;

struct ModulationProfile {
  PulseShape shape = SinPowerShape{};
  double alpha_max = 1.0;
  double duration = 1.0;
  std::optional<double> phase_target;

  // Exponent of the sin^p factor (0 for tabulated shapes).
  double p() const;
  bool is_constant() const;
  // alpha(t) / alpha_M for t in [0, T], no range check.
  double unit_shape(double t) const;
  // alpha(t) on [0, T] and 0 once the pulse has ended.
  double coupling(double t) const;
};

ModulationProfile sin_power_profile(double p, double alpha_max, double duration);

// Duration chosen so that the accumulated phase equals phase_target.
ModulationProfile pulse_for_phase(double p, double alpha_max, double phase_target, double j_z);

ModulationProfile tabulated_profile(std::vector<double> times, std::vector<double> alpha);

// Throws qst::Error for t outside [0, T].
double evaluate_pulse(const ModulationProfile& profile, double t);

// c_p = sqrt(pi) Gamma(1 + p/2) / Gamma((1 + p)/2) = T / int_0^T sin^p(pi t/T) dt.
double pulse_norm_constant(double p);

// T_p = c_p phi / (Jz alpha_M).
double duration_for_phase(double phase_target, double p, double alpha_max, double j_z);

// phi(t) = Jz int_0^t alpha(t') dt'.
double accumulated_phase(const ModulationProfile& profile, double t, double j_z);

// E = Jz^2 int_0^T alpha(t)^2 dt.
double pulse_energy(const ModulationProfile& profile, double j_z);

// Near-optimal shape for a Markovian bath: a + b sin^3.5 with a/b = 1/3.
ModulationProfile markovian_pulse(double alpha_max, double duration);

}  // namespace qst

#endif  // QST_CONTROL_HPP
