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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qst/control.hpp"
#include "qst/error.hpp"
#include "support.hpp"

using namespace qst;
using std::numbers::pi;

namespace {

// Midpoint rule after t = (1 - cos(pi s)) / 2, which smooths the endpoint
// behaviour of sin^p for fractional p.
double mean_sin_power(double p) {
  const int n = 200'000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = (i + 0.5) / n;
    const double t = 0.5 * (1.0 - std::cos(pi * u));
    s += std::pow(std::sin(pi * t), p) * 0.5 * pi * std::sin(pi * u);
  }
  return s / n;
}

}  // namespace

TEST_CASE("pulse values") {
  CHECK(evaluate_pulse(sin_power_profile(0, 0.6, 10.0), 3.3) == 0.6);
  const auto p2 = sin_power_profile(2, 0.7, 10.0);
  CHECK(evaluate_pulse(p2, 5.0) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(evaluate_pulse(p2, 0.0) == 0.0);
  CHECK_THROWS_AS(evaluate_pulse(p2, 10.5), Error);
  CHECK_THROWS_AS(evaluate_pulse(p2, -0.1), Error);
  CHECK(p2.coupling(12.0) == 0.0);
  CHECK_THROWS_AS(sin_power_profile(-1, 0.7, 10.0), Error);
  CHECK_THROWS_AS(sin_power_profile(2, 0.7, 0.0), Error);
}

TEST_CASE("norm constants") {
  CHECK(pulse_norm_constant(0) == 1.0);
  CHECK(pulse_norm_constant(1) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(pulse_norm_constant(2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(pulse_norm_constant(4) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  for (double p : {0.5, 1.0, 2.0, 3.5, 4.0})
    CHECK(pulse_norm_constant(p) == doctest::Approx(1.0 / mean_sin_power(p)).epsilon(1e-10));
}

TEST_CASE("durations from the phase target") {
  CHECK(duration_for_phase(kTransferPhase, 0, 1.0, 1.0) == doctest::Approx(2.2214414690791831).epsilon(1e-14));
  CHECK(duration_for_phase(kTransferPhase, 2, 0.3, 0.25) ==
        doctest::Approx(2.0 * duration_for_phase(kTransferPhase, 0, 0.3, 0.25)).epsilon(1e-14));
  // weak-coupling closed form with Jz = sqrt(2/(N+1)) J
  const int n = 29;
  const double jz = std::sqrt(2.0 / (n + 1));
  for (double p : {0.0, 1.0, 2.0}) {
    const double t = duration_for_phase(kTransferPhase, p, 0.02, jz);
    CHECK(t == doctest::Approx(pulse_norm_constant(p) * pi * std::sqrt(n) / (2 * 0.02)).epsilon(0.02));
  }
  CHECK_THROWS_AS(duration_for_phase(kTransferPhase, 0, 0.0, 1.0), Error);
}

TEST_CASE("accumulated phase") {
  const auto p0 = sin_power_profile(0, 0.4, 7.0);
  CHECK(accumulated_phase(p0, 0.0, 0.3) == 0.0);
  CHECK(accumulated_phase(p0, 2.5, 0.3) == doctest::Approx(0.3 * 0.4 * 2.5).epsilon(1e-15));
  const auto p2 = sin_power_profile(2, 0.4, 7.0);
  CHECK(accumulated_phase(p2, 7.0, 0.3) == doctest::Approx(0.3 * 0.4 * 3.5).epsilon(1e-13));
}

TEST_CASE("property: phase round trip") {
  testing::Gen gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    const double p = gen.uniform(0.0, 6.0), alpha = gen.uniform(0.01, 2.0), jz = gen.uniform(0.05, 1.0);
    const double phi = gen.uniform(0.1, 5.0);
    const auto profile = pulse_for_phase(p, alpha, phi, jz);
    CHECK(std::abs(accumulated_phase(profile, profile.duration, jz) - phi) < 1e-9 * phi);
  }
}

TEST_CASE("pulse energies") {
  const double jz = 0.2582;
  const auto e0 = pulse_for_phase(0, 0.05, kTransferPhase, jz);
  const double t0 = e0.duration;
  const double e_min = pi * pi / (2 * t0);
  CHECK(pulse_energy(e0, jz) == doctest::Approx(e_min).epsilon(1e-12));
  // same duration, phase-matched amplitudes
  const auto e1 = sin_power_profile(1, pulse_norm_constant(1) * kTransferPhase / (jz * t0), t0);
  const auto e2 = sin_power_profile(2, pulse_norm_constant(2) * kTransferPhase / (jz * t0), t0);
  CHECK(pulse_energy(e1, jz) == doctest::Approx(pi * pi / 8 * e_min).epsilon(1e-10));
  CHECK(pulse_energy(e2, jz) == doctest::Approx(1.5 * e_min).epsilon(1e-10));
}

TEST_CASE("property: energy bound over random profiles") {
  testing::Gen gen(17);
  for (int trial = 0; trial < 300; ++trial) {
    const double jz = gen.uniform(0.05, 1.0), t = gen.uniform(1.0, 500.0);
    ModulationProfile profile;
    if (trial % 2 == 0) {
      profile = sin_power_profile(gen.uniform(0.0, 8.0), gen.uniform(0.01, 1.0), t);
    } else {
      const int knots = gen.integer(2, 12);
      std::vector<double> times(static_cast<std::size_t>(knots)), alpha(times.size());
      for (int i = 0; i < knots; ++i) {
        times[static_cast<std::size_t>(i)] = t * i / (knots - 1);
        alpha[static_cast<std::size_t>(i)] = gen.uniform(0.0, 1.0);
      }
      alpha[1 % alpha.size()] += 0.01;  // never identically zero
      profile = tabulated_profile(times, alpha);
    }
    const double phi = accumulated_phase(profile, profile.duration, jz);
    CHECK(pulse_energy(profile, jz) >= phi * phi / profile.duration * (1 - 1e-12));
  }
}

TEST_CASE("tabulated profiles interpolate linearly") {
  const auto tab = tabulated_profile({0.0, 1.0, 3.0}, {0.0, 0.5, 0.1});
  CHECK(tab.duration == 3.0);
  CHECK(evaluate_pulse(tab, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(evaluate_pulse(tab, 2.0) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(accumulated_phase(tab, 3.0, 1.0) == doctest::Approx(0.25 + 0.6).epsilon(1e-14));
  CHECK_THROWS_AS(tabulated_profile({0.0, 1.0}, {0.1}), Error);
  CHECK_THROWS_AS(tabulated_profile({0.0, 2.0, 1.0}, {0.1, 0.1, 0.1}), Error);
}

TEST_CASE("Markovian pulse") {
  const auto m = markovian_pulse(0.6, 20.0);
  const auto& shape = std::get<MarkovianShape>(m.shape);
  CHECK(shape.a / shape.b == doctest::Approx(1.0 / 3.0));
  CHECK(shape.p == 3.5);
  CHECK(evaluate_pulse(m, 10.0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(evaluate_pulse(m, 0.0) == doctest::Approx(0.15).epsilon(1e-15));
  for (double t = 0.0; t <= 20.0; t += 0.5) CHECK(evaluate_pulse(m, t) <= 0.6 + 1e-15);
}
