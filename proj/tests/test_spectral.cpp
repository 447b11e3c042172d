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
#include "qst/chain_model.hpp"
#include "qst/spectral.hpp"
#include "support.hpp"

using namespace qst;
using std::numbers::pi;

namespace {

// Composite Simpson on [a, b]; independent of the library quadrature.
template <class F>
double simpson(F f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("N=3 uniform channel energies") {
  const auto d = channel_eigenmodes(uniform_chain(3));
  REQUIRE(d.n_modes() == 3);
  CHECK(d.energy(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(d.energy(2) == 0.0);
  CHECK(d.energy(3) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
  CHECK(d.central_index == 2);
  CHECK(d.central_parity() == Parity::even);
}

TEST_CASE("uniform channel matches the closed-form modes") {
  for (int n : {1, 5, 9, 29, 63}) {
    const double j = 1.3;
    const auto d = channel_eigenmodes(uniform_chain(n, j));
    const double jz = std::sqrt(2.0 / (n + 1)) * j;
    CHECK(d.central_index == (n + 1) / 2);
    CHECK(d.energy(d.central_index) == 0.0);
    CHECK(d.central_coupling == doctest::Approx(jz).epsilon(1e-12));
    for (int k = 1; k <= n; ++k) {
      CHECK(d.energy(k) == doctest::Approx(2.0 * j * std::cos(k * pi / (n + 1))).epsilon(1e-12));
      CHECK(d.weight(k) == doctest::Approx(jz * std::sin(k * pi / (n + 1))).epsilon(1e-12));
      // mirror parity: far amplitude is +Jk for odd k and -Jk for even k
      const double sign = k % 2 == 1 ? 1.0 : -1.0;
      CHECK(d.far_weights[static_cast<std::size_t>(k - 1)] ==
            doctest::Approx(sign * d.weight(k)).epsilon(1e-10));
    }
  }
}

TEST_CASE("N=29 central coupling and gap") {
  const auto d = channel_eigenmodes(uniform_chain(29));
  CHECK(d.central_index == 15);
  CHECK(d.central_coupling == doctest::Approx(0.25820).epsilon(1e-5));
  // uniform chain: E_k = 2 cos(k pi / (N+1)), so the gap is 2 sin(pi / (N+1))
  CHECK(central_gap(d) == doctest::Approx(2.0 * std::sin(std::numbers::pi / 30.0)).epsilon(1e-12));
}

TEST_CASE("bath correlation at zero lag and bound") {
  const auto d = channel_eigenmodes(uniform_chain(29));
  double odd_sum = 0.0;
  for (int k = 1; k <= 29; k += 2)
    if (k != 15) odd_sum += d.weight(k) * d.weight(k);
  const auto phi0 = bath_correlation(d, Parity::odd, 0.0);
  CHECK(phi0.real() == doctest::Approx(odd_sum).epsilon(1e-14));
  CHECK(phi0.imag() == 0.0);
  for (double tau = 0.0; tau < 100.0; tau += 0.37) {
    CHECK(std::abs(bath_correlation(d, Parity::odd, tau)) <= odd_sum * (1 + 1e-14));
    CHECK(std::abs(bath_correlation(d, Parity::even, tau)) <=
          bath_correlation(d, Parity::even, 0.0).real() * (1 + 1e-14));
  }
}

TEST_CASE("N=3 even class is only the central mode") {
  const auto d = channel_eigenmodes(uniform_chain(3));
  CHECK(std::abs(bath_correlation(d, Parity::even, 1.7)) == 0.0);
  CHECK(bath_spectrum(d, Parity::even).lines.empty());
}

TEST_CASE("discrete bath lines are the parity-class modes") {
  const auto d = channel_eigenmodes(uniform_chain(9));
  const auto bath = bath_spectrum(d, Parity::even);
  CHECK(bath.kind == BathSpectrumModel::Kind::discrete_lines);
  REQUIRE(bath.lines.size() == 4);
  for (std::size_t i = 0; i < bath.lines.size(); ++i) {
    const int k = 2 * static_cast<int>(i) + 2;
    CHECK(bath.lines[i].energy == d.energy(k));
    CHECK(bath.lines[i].weight == doctest::Approx(d.weight(k) * d.weight(k)).epsilon(1e-15));
  }
}

TEST_CASE("smoothed bath integrates to the class weight") {
  const auto d = channel_eigenmodes(uniform_chain(29));
  for (Parity q : {Parity::odd, Parity::even}) {
    const auto sharp = bath_spectrum(d, q);
    const auto smooth = bath_spectrum(d, q, 0.05);
    const double integral =
        simpson([&](double w) { return smooth.density(w); }, smooth.support_min(), smooth.support_max(), 20000);
    CHECK(integral == doctest::Approx(sharp.total_weight()).epsilon(1e-6));
  }
}

TEST_CASE("heavily smoothed large chain approaches a semicircle") {
  const int n = 401;
  const auto d = channel_eigenmodes(uniform_chain(n));
  const auto smooth = bath_spectrum(d, Parity::odd, 0.05);
  const auto semi = semicircle_bath(Parity::odd, smooth.total_weight(), 2.0, 0.0);
  for (double w : {-1.5, -1.0, -0.5, 0.5, 1.0, 1.5})
    CHECK(smooth.density(w) == doctest::Approx(semi.density(w)).epsilon(0.05));
  CHECK(smooth.density(2.5) < 1e-6 * smooth.density(0.5));
}

TEST_CASE("gapped semicircle normalisation and gap") {
  const auto semi = semicircle_bath(Parity::odd, 0.47, 2.0, 0.1);
  CHECK(semi.density(0.05) == 0.0);
  CHECK(semi.density(-0.09) == 0.0);
  CHECK(semi.density(0.2) > 0.0);
  CHECK(semi.density(2.1) == 0.0);
  const double integral = simpson([&](double w) { return semi.density(w); }, -2.0, -0.1, 200000) +
                          simpson([&](double w) { return semi.density(w); }, 0.1, 2.0, 200000);
  CHECK(integral == doctest::Approx(0.47).epsilon(1e-6));
  const auto d = channel_eigenmodes(uniform_chain(29));
  const auto fitted = semicircle_bath(d, Parity::odd, 1.0);
  CHECK(fitted.gap_half_width == doctest::Approx(0.5 * central_gap(d)).epsilon(1e-14));
  CHECK(fitted.total_weight() == doctest::Approx(bath_spectrum(d, Parity::odd).total_weight()).epsilon(1e-14));
}

TEST_CASE("property: class weights sum to J^2 for random chains") {
  testing::Gen gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    const ChainSpec spec = gen.chain(31);
    const auto d = channel_eigenmodes(spec);
    const double total = bath_spectrum(d, Parity::odd).total_weight() +
                         bath_spectrum(d, Parity::even).total_weight() +
                         d.central_coupling * d.central_coupling;
    const double j = spec.coupling_scale;
    CHECK(total == doctest::Approx(j * j).epsilon(1e-12));
    for (int k = 1; k <= d.n_modes(); ++k) CHECK(d.weight(k) >= 0.0);
  }
}

TEST_CASE("property: central mode survives bulk disorder") {
  // Dense diagonalization of the disordered channel, independent of the
  // tridiagonal path.
  testing::Gen gen(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const ChainSpec spec = gen.chain(45);
    const CouplingOffsets off = gen.offsets(spec, 0.2);
    const int n = spec.n_channel;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i)
      h(i, i + 1) = h(i + 1, i) = spec.coupling_scale * spec.bulk_couplings[static_cast<std::size_t>(i)] *
                                  (1.0 + off.bulk[static_cast<std::size_t>(i)]);
    const Eigen::VectorXd values = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h).eigenvalues();
    CHECK(values.cwiseAbs().minCoeff() < 1e-12 * spec.coupling_scale);
    const auto d = channel_eigenmodes(spec, &off);
    CHECK(d.energy(d.central_index) == 0.0);
    if (n > 1) CHECK(d.energy(d.central_index + 1) < 0.0);
  }
}
