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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qst/chain_model.hpp"
#include "qst/error.hpp"
#include "qst/spectral.hpp"
#include "support.hpp"

using namespace qst;

TEST_CASE("smallest chain assembles two unit bonds") {
  const auto h = build_hamiltonian(uniform_chain(1), 1.0);
  CHECK(h.dimension() == 3);
  CHECK(h.off_diagonal == std::vector<double>{1.0, 1.0});
}

TEST_CASE("boundary bonds carry alpha") {
  const auto h = build_hamiltonian(uniform_chain(3), 0.5);
  CHECK(h.off_diagonal == std::vector<double>{0.5, 1.0, 1.0, 0.5});
}

TEST_CASE("bulk disorder scales bonds by 1 + delta") {
  CouplingOffsets off;
  off.bulk = {0.1, -0.1};
  const auto h = build_hamiltonian(uniform_chain(3), 0.3, &off);
  REQUIRE(h.off_diagonal.size() == 4);
  CHECK(h.off_diagonal[0] == 0.3);
  CHECK(h.off_diagonal[1] == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(h.off_diagonal[2] == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(h.off_diagonal[3] == 0.3);
}

TEST_CASE("coupling scale multiplies every bond") {
  ChainSpec spec = uniform_chain(3, 2.0);
  const auto h = build_hamiltonian(spec, 0.5);
  CHECK(h.off_diagonal == std::vector<double>{1.0, 2.0, 2.0, 1.0});
}

TEST_CASE("invalid chains are rejected") {
  ChainSpec even = uniform_chain(3);
  even.n_channel = 4;
  even.bulk_couplings.assign(3, 1.0);
  CHECK_THROWS_AS(validate(even), Error);
  ChainSpec wrong_count = uniform_chain(5);
  wrong_count.bulk_couplings.pop_back();
  CHECK_THROWS_AS(validate(wrong_count), Error);
  ChainSpec negative = uniform_chain(5);
  negative.bulk_couplings[2] = -1.0;
  CHECK_THROWS_AS(validate(negative), Error);
  ChainSpec zero = uniform_chain(1);
  zero.n_channel = 0;
  zero.bulk_couplings.clear();
  CHECK_THROWS_AS(validate(zero), Error);
  CHECK_THROWS_AS(build_hamiltonian(uniform_chain(3), -0.1), Error);
  CouplingOffsets off;
  off.bulk = {0.1};
  CHECK_THROWS_AS(build_hamiltonian(uniform_chain(5), 0.1, &off), Error);
}

TEST_CASE("mirror symmetry check") {
  ChainSpec spec = uniform_chain(3);
  spec.bulk_couplings = {1.0, 1.0};
  CHECK(validate_mirror_symmetry(spec));
  spec.bulk_couplings = {1.0, 2.0};
  CHECK_FALSE(validate_mirror_symmetry(spec));
  for (int n : {1, 5, 29, 101}) CHECK(validate_mirror_symmetry(uniform_chain(n)));
}

TEST_CASE("property: zero eigenvalue and +-symmetric spectrum under any disorder") {
  testing::Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const ChainSpec spec = gen.chain(41);
    const CouplingOffsets off = gen.offsets(spec, 0.3);
    const auto h = build_hamiltonian(spec, gen.uniform(0.0, 1.5), &off);
    REQUIRE(h.dimension() % 2 == 1);
    const auto eig = eigen_decompose(h.off_diagonal);
    const double scale = spec.coupling_scale;
    double smallest = 1e300;
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) smallest = std::min(smallest, std::abs(eig.values(k)));
    CHECK(smallest < 1e-12 * scale);
    const auto n = eig.values.size();
    for (Eigen::Index k = 0; k < n; ++k)
      CHECK(std::abs(eig.values(k) + eig.values(n - 1 - k)) < 1e-12 * scale * 10);
  }
}

TEST_CASE("disorder trajectory blocks and breakpoints") {
  DisorderTrajectory traj;
  traj.block_length = 2.0;
  traj.blocks.resize(3);
  traj.blocks[1].bulk = {0.5};
  CHECK(traj.block_index(0.0) == 0);
  CHECK(traj.block_index(1.999) == 0);
  CHECK(traj.block_index(2.0) == 1);
  CHECK(traj.block_index(100.0) == 2);
  CHECK(traj.at(3.0).bulk == std::vector<double>{0.5});
  CHECK(traj.breakpoints(5.0) == std::vector<double>{2.0, 4.0});
  CHECK(traj.breakpoints(4.0) == std::vector<double>{2.0});
  DisorderTrajectory single;
  single.blocks.resize(1);
  CHECK(single.is_static());
  CHECK(single.breakpoints(10.0).empty());
}
