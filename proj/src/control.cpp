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

#include "qst/control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "qst/error.hpp"

namespace qst {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double sin_power(double p, double x) {
  const double s = std::sin(x);
  if (p == 0.0) return 1.0;
  if (s <= 0.0) return 0.0;
  if (p == 1.0) return s;
  if (p == 2.0) return s * s;
  return std::pow(s, p);
}

// int_a^b f(t) dt for integrands whose derivatives may blow up at the ends
// (sin^p with fractional p).
template <class F>
double integrate(F f, double a, double b) {
  if (b <= a) return 0.0;
  thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
  return rule.integrate(f, a, b, 1e-14);
}

}  // namespace

double ModulationProfile::p() const {
  return std::visit(Overloaded{[](const SinPowerShape& s) { return s.p; },
                               [](const MarkovianShape& s) { return s.p; },
                               [](const TabulatedShape&) { return 0.0; }},
                    shape);
}

bool ModulationProfile::is_constant() const {
  if (const auto* s = std::get_if<SinPowerShape>(&shape)) return s->p == 0.0;
  if (const auto* m = std::get_if<MarkovianShape>(&shape)) return m->b == 0.0 || m->p == 0.0;
  const auto& tab = std::get<TabulatedShape>(shape);
  return std::all_of(tab.values.begin(), tab.values.end(),
                     [&](double v) { return v == tab.values.front(); });
}

double ModulationProfile::unit_shape(double t) const {
  const double x = std::numbers::pi * t / duration;
  return std::visit(
      Overloaded{[&](const SinPowerShape& s) { return sin_power(s.p, x); },
                 [&](const MarkovianShape& m) { return (m.a + m.b * sin_power(m.p, x)) / (m.a + m.b); },
                 [&](const TabulatedShape& tab) {
                   const auto& ts = tab.times;
                   if (t <= ts.front()) return tab.values.front();
                   if (t >= ts.back()) return tab.values.back();
                   const auto it = std::upper_bound(ts.begin(), ts.end(), t);
                   const auto i = static_cast<std::size_t>(it - ts.begin());
                   const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
                   return (1.0 - w) * tab.values[i - 1] + w * tab.values[i];
                 }},
      shape);
}

double ModulationProfile::coupling(double t) const {
  if (t > duration || t < 0.0) return 0.0;
  return alpha_max * unit_shape(t);
}

ModulationProfile sin_power_profile(double p, double alpha_max, double duration) {
  require(p >= 0.0 && std::isfinite(p), ErrorCode::invalid_argument, "pulse exponent p must be >= 0");
  require(alpha_max >= 0.0 && std::isfinite(alpha_max), ErrorCode::invalid_argument,
          "alpha_max must be >= 0");
  require(duration > 0.0 && std::isfinite(duration), ErrorCode::invalid_argument,
          "pulse duration must be positive");
  ModulationProfile profile;
  profile.shape = SinPowerShape{p};
  profile.alpha_max = alpha_max;
  profile.duration = duration;
  return profile;
}

ModulationProfile pulse_for_phase(double p, double alpha_max, double phase_target, double j_z) {
  ModulationProfile profile =
      sin_power_profile(p, alpha_max, duration_for_phase(phase_target, p, alpha_max, j_z));
  profile.phase_target = phase_target;
  return profile;
}

ModulationProfile tabulated_profile(std::vector<double> times, std::vector<double> alpha) {
  require(times.size() >= 2 && times.size() == alpha.size(), ErrorCode::dimension_mismatch,
          "tabulated pulse needs >= 2 knots with one value each");
  require(times.front() == 0.0, ErrorCode::invalid_argument, "tabulated pulse must start at t=0");
  for (std::size_t i = 1; i < times.size(); ++i)
    require(times[i] > times[i - 1], ErrorCode::invalid_argument,
            "tabulated pulse knots must be strictly increasing");
  const double peak = *std::max_element(alpha.begin(), alpha.end());
  require(peak > 0.0, ErrorCode::invalid_argument, "tabulated pulse must have a positive peak");
  for (double a : alpha)
    require(a >= 0.0, ErrorCode::invalid_argument, "tabulated pulse values must be >= 0");
  ModulationProfile profile;
  profile.duration = times.back();
  profile.alpha_max = peak;
  for (double& a : alpha) a /= peak;
  profile.shape = TabulatedShape{std::move(times), std::move(alpha)};
  return profile;
}

double evaluate_pulse(const ModulationProfile& profile, double t) {
  const double slack = 1e-12 * profile.duration;
  if (!(t >= -slack && t <= profile.duration + slack))
    fail(ErrorCode::precondition, "pulse evaluated at t=" + std::to_string(t) +
                                      " outside [0, " + std::to_string(profile.duration) + "]");
  return profile.alpha_max * profile.unit_shape(std::clamp(t, 0.0, profile.duration));
}

double pulse_norm_constant(double p) {
  require(p >= 0.0 && std::isfinite(p), ErrorCode::invalid_argument, "pulse exponent p must be >= 0");
  // integer p via c_{p+2} = c_p (p+2)/(p+1), so c_0 = 1 and c_1 = pi/2 exactly
  if (p == std::floor(p) && p <= 64.0) {
    double c = std::fmod(p, 2.0) == 0.0 ? 1.0 : std::numbers::pi / 2.0;
    for (double q = std::fmod(p, 2.0); q < p; q += 2.0) c *= (q + 2.0) / (q + 1.0);
    return c;
  }
  return std::sqrt(std::numbers::pi) * std::exp(std::lgamma(1.0 + 0.5 * p) - std::lgamma(0.5 * (1.0 + p)));
}

double duration_for_phase(double phase_target, double p, double alpha_max, double j_z) {
  require(phase_target > 0.0, ErrorCode::invalid_argument, "phase target must be positive");
  require(alpha_max > 0.0, ErrorCode::invalid_argument, "alpha_max must be positive");
  require(j_z > 0.0, ErrorCode::invalid_argument, "central coupling Jz must be positive");
  return pulse_norm_constant(p) * phase_target / (j_z * alpha_max);
}

namespace {

double integrate_shape(const ModulationProfile& profile, double t, int power) {
  if (const auto* tab = std::get_if<TabulatedShape>(&profile.shape)) {
    // exact for piecewise-linear segments
    double sum = 0.0;
    const auto& ts = tab->times;
    for (std::size_t i = 1; i < ts.size() && ts[i - 1] < t; ++i) {
      const double b = std::min(ts[i], t);
      const double ya = tab->values[i - 1];
      const double yb = profile.unit_shape(b);
      const double h = b - ts[i - 1];
      sum += power == 1 ? 0.5 * h * (ya + yb) : h * (ya * ya + ya * yb + yb * yb) / 3.0;
    }
    return sum;
  }
  if (profile.is_constant()) return t * std::pow(profile.unit_shape(0.0), power);
  if (power == 1) return integrate([&](double s) { return profile.unit_shape(s); }, 0.0, t);
  return integrate([&](double s) {
    const double v = profile.unit_shape(s);
    return v * v;
  }, 0.0, t);
}

}  // namespace

double accumulated_phase(const ModulationProfile& profile, double t, double j_z) {
  const double slack = 1e-12 * profile.duration;
  require(t >= -slack && t <= profile.duration + slack, ErrorCode::precondition,
          "accumulated phase requested outside [0, T]");
  t = std::clamp(t, 0.0, profile.duration);
  return j_z * profile.alpha_max * integrate_shape(profile, t, 1);
}

double pulse_energy(const ModulationProfile& profile, double j_z) {
  return j_z * j_z * profile.alpha_max * profile.alpha_max *
         integrate_shape(profile, profile.duration, 2);
}

ModulationProfile markovian_pulse(double alpha_max, double duration) {
  require(alpha_max > 0.0 && duration > 0.0, ErrorCode::invalid_argument,
          "Markovian pulse needs positive alpha_max and duration");
  ModulationProfile profile;
  profile.shape = MarkovianShape{};
  profile.alpha_max = alpha_max;
  profile.duration = duration;
  return profile;
}

}  // namespace qst
