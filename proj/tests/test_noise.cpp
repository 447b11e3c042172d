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
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "qst/control.hpp"
#include "qst/error.hpp"
#include "qst/noise.hpp"
#include "qst/parallel.hpp"
#include "qst/propagator.hpp"
#include "qst/spectral.hpp"

using namespace qst;

namespace {

NoiseSpec static_noise(double eps, std::uint64_t seed = 1) {
  NoiseSpec n;
  n.strength = eps;
  n.master_seed = seed;
  return n;
}

}  // namespace

TEST_CASE("zero strength gives no offsets") {
  const auto off = sample_static(static_noise(0.0), uniform_chain(29), 3);
  for (double d : off.bulk) CHECK(d == 0.0);
  CHECK(off.left_boundary == 0.0);
}

TEST_CASE("offsets stay inside the support and have uniform variance") {
  const auto chain = uniform_chain(29);
  const double eps = 0.07;
  double sum = 0.0, sq = 0.0;
  std::size_t count = 0;
  for (std::size_t r = 0; r < 400; ++r) {
    const auto off = sample_static(static_noise(eps), chain, r);
    REQUIRE(off.bulk.size() == 28);
    for (double d : off.bulk) {
      CHECK(std::abs(d) <= eps);
      sum += d;
      sq += d * d;
      ++count;
    }
  }
  CHECK(count > 10000);
  const double mean = sum / count;
  CHECK(std::abs(mean) < 5 * eps / std::sqrt(3.0 * count));
  CHECK(sq / count == doctest::Approx(eps * eps / 3).epsilon(0.03));
}

TEST_CASE("boundary bonds are perturbed only on request") {
  NoiseSpec n = static_noise(0.1);
  CHECK(sample_static(n, uniform_chain(9), 0).left_boundary == 0.0);
  n.include_boundary = true;
  const auto off = sample_static(n, uniform_chain(9), 0);
  CHECK(off.left_boundary != 0.0);
  CHECK(off.right_boundary != 0.0);
  CHECK(std::abs(off.left_boundary) <= 0.1);
}

TEST_CASE("draws are pure functions of seed and realization") {
  const auto chain = uniform_chain(29);
  const auto a = sample_static(static_noise(0.1, 99), chain, 17);
  const auto b = sample_static(static_noise(0.1, 99), chain, 17);
  CHECK(a.bulk == b.bulk);
  CHECK(sample_static(static_noise(0.1, 98), chain, 17).bulk != a.bulk);
  CHECK(sample_static(static_noise(0.1, 99), chain, 18).bulk != a.bulk);
}

TEST_CASE("disordered channels keep the central mode") {
  const auto chain = uniform_chain(29);
  for (std::size_t r = 0; r < 200; ++r) {
    const auto off = sample_static(static_noise(0.1), chain, r);
    const auto h = build_hamiltonian(chain, 0.0, &off);
    // channel block only: drop the two zero boundary bonds
    std::vector<double> bulk(h.off_diagonal.begin() + 1, h.off_diagonal.end() - 1);
    const auto eig = eigen_decompose(bulk);
    CHECK(eig.values.cwiseAbs().minCoeff() < 1e-12);
  }
}

TEST_CASE("fluctuating trajectories") {
  const auto chain = uniform_chain(9);
  NoiseSpec n = static_noise(0.1, 5);
  n.kind = NoiseKind::fluctuating;
  n.correlation_time = 50.0;
  const auto single = sample_fluctuating(n, chain, 4, 20.0);
  CHECK(single.blocks.size() == 1);
  CHECK(single.blocks[0].bulk == sample_static(static_noise(0.1, 5), chain, 4).bulk);
  n.correlation_time = 0.5;
  const auto traj = sample_fluctuating(n, chain, 4, 20.0);
  CHECK(traj.blocks.size() == 40);
  CHECK(traj.breakpoints(20.0).size() == 39);
  n.correlation_time = 0.0;
  CHECK_THROWS_AS(sample_fluctuating(n, chain, 4, 20.0), Error);
  n.correlation_time = -1.0;
  CHECK_THROWS_AS(sample_fluctuating(n, chain, 4, 20.0), Error);
}

TEST_CASE("renewal blocks decorrelate and keep the uniform variance") {
  const auto chain = uniform_chain(9);
  NoiseSpec n = static_noise(0.1, 8);
  n.kind = NoiseKind::fluctuating;
  n.correlation_time = 1.0;
  const int m = 4000;
  double same = 0.0, apart = 0.0, var = 0.0;
  for (int r = 0; r < m; ++r) {
    const auto traj = sample_fluctuating(n, chain, static_cast<std::size_t>(r), 5.0);
    const double x = traj.at(0.2).bulk[3], y = traj.at(0.9).bulk[3], z = traj.at(2.5).bulk[3];
    same += x * y;
    apart += x * z;
    var += z * z;
  }
  const double v = 0.01 / 3;
  CHECK(same / m == doctest::Approx(v).epsilon(0.05));
  CHECK(std::abs(apart / m) < 0.1 * v);
  CHECK(var / m == doctest::Approx(v).epsilon(0.06));
}

TEST_CASE("noise-free Monte-Carlo is exact") {
  const auto chain = uniform_chain(29);
  const auto profile = sin_power_profile(0, 0.6, 18.5);
  NoiseSpec n = static_noise(0.0);
  n.realizations = 16;
  const auto mc = monte_carlo_fidelity(chain, profile, n, 18.5);
  PropagationOptions opts;
  opts.dt = step_limit(chain, 18.5, 18.5);
  opts.report_points = 1;
  const double clean = propagate(chain, profile, nullptr, 18.5, opts).final_fidelity();
  CHECK(mc.mean_fidelity == clean);
  CHECK(mc.standard_error == 0.0);
  n.realizations = 1;
  CHECK_THROWS_AS(monte_carlo_fidelity(chain, profile, n, 18.5), Error);
}

TEST_CASE("Monte-Carlo results do not depend on the worker count") {
  const auto chain = uniform_chain(15);
  const auto profile = sin_power_profile(2, 0.6, 20.0);
  NoiseSpec n = static_noise(0.08, 1234);
  n.kind = NoiseKind::fluctuating;
  n.correlation_time = 0.7;
  n.realizations = 24;
  MonteCarloOptions one, four;
  one.workers = 1;
  four.workers = 4;
  const auto a = monte_carlo_fidelity(chain, profile, n, 20.0, one);
  const auto b = monte_carlo_fidelity(chain, profile, n, 20.0, four);
  CHECK(a.fidelities == b.fidelities);
  CHECK(a.mean_fidelity == b.mean_fidelity);
  CHECK(a.standard_error == b.standard_error);
}

TEST_CASE("static infidelity grows with disorder at the strong-coupling optimum") {
  const auto chain = uniform_chain(29);
  const auto profile = sin_power_profile(0, 0.6, 18.48);
  double previous = 0.0;
  for (double eps : {0.0, 0.03, 0.06, 0.1}) {
    NoiseSpec n = static_noise(eps, 3);
    n.realizations = 200;
    const double inf = monte_carlo_fidelity(chain, profile, n, 18.48).mean_infidelity();
    CHECK(inf > previous);
    previous = inf;
  }
}

TEST_CASE("worker pool rethrows the lowest failing index") {
  for (std::size_t workers : {1u, 3u}) {
    std::vector<int> seen(50, 0);
    try {
      parallel_for(50, workers, [&](std::size_t i) {
        seen[i] = 1;
        if (i == 17 || i == 31) fail(ErrorCode::numerical, "task " + std::to_string(i));
      });
      CHECK(false);
    } catch (const Error& e) {
      CHECK(std::string(e.what()) == "task 17");
    }
    int ran = 0;
    for (int s : seen) ran += s;
    CHECK(ran == 50);
  }
}

TEST_CASE("QST_WORKERS sets the default pool size") {
  setenv("QST_WORKERS", "3", 1);
  CHECK(default_workers() == 3);
  setenv("QST_WORKERS", "zero", 1);
  CHECK_THROWS_AS(default_workers(), Error);
  unsetenv("QST_WORKERS");
  CHECK(default_workers() >= 1);
}

TEST_CASE("localization bound") {
  CHECK(localization_bound(uniform_chain(29), 0.0) == 0.0);
  CHECK(localization_bound(uniform_chain(29), 0.05) == doctest::Approx(0.0145).epsilon(1e-12));
  CHECK_THROWS_AS(localization_bound(uniform_chain(29), -0.1), Error);
}

TEST_CASE("invalid noise specs") {
  NoiseSpec n = static_noise(-0.1);
  CHECK_THROWS_AS(validate(n), Error);
  n.strength = 1.5;
  CHECK_THROWS_AS(validate(n), Error);
}
