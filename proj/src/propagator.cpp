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

#include "qst/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "qst/error.hpp"

namespace qst {

namespace {

using Complex = std::complex<double>;

// Fourth-order commutator-free exponential integrator: Gauss points and
// mixing weights.
constexpr double kGauss1 = 0.5 - std::numbers::sqrt3 / 6.0;
constexpr double kGauss2 = 0.5 + std::numbers::sqrt3 / 6.0;
constexpr double kMixSmall = (3.0 - 2.0 * std::numbers::sqrt3) / 12.0;
constexpr double kMixLarge = (3.0 + 2.0 * std::numbers::sqrt3) / 12.0;

class Evolver {
 public:
  explicit Evolver(std::size_t dim) : term_(dim), next_(dim), coeffs_(dim) {}

  // psi <- exp(-i h A) psi by Taylor series to rounding level.
  void taylor(std::vector<Complex>& psi, std::span<const double> bonds, double h) {
    double bound = 0.0;
    for (double b : bonds) bound = std::max(bound, std::abs(b));
    bound *= 2.0 * h;
    if (bound > 0.5) {
      const int pieces = static_cast<int>(std::ceil(bound / 0.5));
      for (int i = 0; i < pieces; ++i) taylor(psi, bonds, h / pieces);
      return;
    }
    const std::size_t n = psi.size();
    term_ = psi;
    for (int k = 1; k < 64; ++k) {
      apply(bonds, term_, next_);
      const Complex factor{0.0, -h / k};
      double size = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        term_[j] = factor * next_[j];
        psi[j] += term_[j];
        size = std::max(size, std::abs(term_[j].real()) + std::abs(term_[j].imag()));
      }
      if (size < 1e-18) break;
    }
  }

  // psi <- V exp(-i Lambda h) V^T psi.
  void exact(std::vector<Complex>& psi, const TridiagonalEigen& eig, double h) {
    const auto n = static_cast<Eigen::Index>(psi.size());
    for (Eigen::Index k = 0; k < n; ++k) {
      Complex c{0.0, 0.0};
      for (Eigen::Index j = 0; j < n; ++j) c += eig.vectors(j, k) * psi[static_cast<std::size_t>(j)];
      coeffs_[static_cast<std::size_t>(k)] = c * std::polar(1.0, -eig.values(k) * h);
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      Complex s{0.0, 0.0};
      for (Eigen::Index k = 0; k < n; ++k) s += eig.vectors(j, k) * coeffs_[static_cast<std::size_t>(k)];
      psi[static_cast<std::size_t>(j)] = s;
    }
  }

 private:
  static void apply(std::span<const double> b, const std::vector<Complex>& x,
                    std::vector<Complex>& y) {
    const std::size_t n = x.size();
    y[0] = b[0] * x[1];
    for (std::size_t j = 1; j + 1 < n; ++j) y[j] = b[j - 1] * x[j - 1] + b[j] * x[j + 1];
    y[n - 1] = b[n - 2] * x[n - 2];
  }

  std::vector<Complex> term_, next_, coeffs_;
};

int resolve_site(const ChainSpec& spec, int site, int fallback) {
  const int last = spec.n_channel + 1;
  if (site < 0) site = fallback;
  if (site > last) fail(ErrorCode::invalid_argument, "site index " + std::to_string(site) + " outside chain");
  return site;
}

}  // namespace

double step_limit(const ChainSpec& spec, double duration, double t_max, double correlation_time) {
  double limit = 0.01 / spec.coupling_scale;
  limit = std::min(limit, std::min(duration, t_max) / 1e4);
  if (correlation_time > 0.0) limit = std::min(limit, correlation_time / 10.0);
  return limit;
}

double average_fidelity(double f) {
  require(f >= -1e-12 && f <= 1.0 + 1e-12, ErrorCode::invalid_argument,
          "transfer amplitude must lie in [0, 1]");
  return f * f / 6.0 + f / 3.0 + 0.5;
}

TransferResult propagate(const ChainSpec& spec, const ModulationProfile& profile,
                         const DisorderTrajectory* trajectory, double t_max,
                         const PropagationOptions& options) {
  validate(spec);
  require(t_max > 0.0 && std::isfinite(t_max), ErrorCode::invalid_argument, "t_max must be positive");
  require(options.report_points >= 1, ErrorCode::invalid_argument, "need at least one report interval");
  const double limit = step_limit(spec, profile.duration, t_max, options.correlation_time);
  if (!(options.dt > 0.0) || options.dt > limit * (1.0 + 1e-9))
    fail(ErrorCode::precondition, "time step dt=" + std::to_string(options.dt) +
                                      " exceeds the stability limit " + std::to_string(limit));
  if (trajectory != nullptr) {
    require(!trajectory->blocks.empty(), ErrorCode::invalid_argument, "empty disorder trajectory");
    for (const auto& block : trajectory->blocks)
      if (!block.bulk.empty() && block.bulk.size() != spec.bulk_couplings.size())
        fail(ErrorCode::dimension_mismatch, "disorder trajectory does not match bulk bond count");
  }

  const std::size_t dim = spec.total_sites();
  const int source = resolve_site(spec, options.source_site, 0);
  const int target = resolve_site(spec, options.target_site, spec.n_channel + 1);
  std::vector<Complex> psi(dim, Complex{0.0, 0.0});
  psi[static_cast<std::size_t>(source)] = 1.0;

  std::vector<double> cuts = trajectory != nullptr ? trajectory->breakpoints(t_max) : std::vector<double>{};
  if (profile.duration < t_max) cuts.push_back(profile.duration);
  std::sort(cuts.begin(), cuts.end());

  TransferResult result;
  const std::size_t reports = options.report_points;
  result.times.reserve(reports + 1);
  result.amplitude.reserve(reports + 1);
  auto record = [&](double t) {
    double norm = 0.0;
    for (const auto& c : psi) norm += std::norm(c);
    result.norm_drift = std::max(result.norm_drift, std::abs(1.0 - norm));
    result.times.push_back(t);
    result.amplitude.push_back(std::min(1.0, std::abs(psi[static_cast<std::size_t>(target)])));
  };
  record(0.0);

  Evolver evolver(dim);
  std::vector<double> bonds(dim - 1);
  struct Cache {
    bool valid = false;
    std::size_t block = 0;
    double alpha = 0.0;
    TridiagonalEigen eig;
  } cache;
  const bool constant_shape = profile.is_constant();
  const double pulse_end = profile.duration;

  auto advance = [&](double a, double b) {
    if (b - a <= 0.0) return;
    const double mid = 0.5 * (a + b);
    const std::size_t block = trajectory != nullptr ? trajectory->block_index(mid) : 0;
    const CouplingOffsets* offsets = trajectory != nullptr ? &trajectory->blocks[block] : nullptr;
    const auto substeps = static_cast<std::size_t>(std::ceil((b - a) / options.dt - 1e-9));
    const double h = (b - a) / static_cast<double>(std::max<std::size_t>(substeps, 1));

    if (constant_shape || a >= pulse_end) {
      const double alpha = profile.coupling(mid);
      if (cache.valid && cache.block == block && cache.alpha == alpha) {
        evolver.exact(psi, cache.eig, b - a);
        return;
      }
      fill_bonds(spec, alpha, alpha, offsets, bonds);
      if (substeps > dim) {
        cache.eig = eigen_decompose(bonds);
        cache.valid = true;
        cache.block = block;
        cache.alpha = alpha;
        evolver.exact(psi, cache.eig, b - a);
        return;
      }
      for (std::size_t s = 0; s < substeps; ++s) evolver.taylor(psi, bonds, h);
      return;
    }

    for (std::size_t s = 0; s < substeps; ++s) {
      const double t0 = a + h * static_cast<double>(s);
      const double alpha1 = profile.coupling(t0 + kGauss1 * h);
      const double alpha2 = profile.coupling(t0 + kGauss2 * h);
      // the exponential weighted toward the early node acts first
      for (const auto& [first, second] : {std::pair{kMixLarge, kMixSmall}, std::pair{kMixSmall, kMixLarge}}) {
        const double mixed = first * alpha1 + second * alpha2;
        fill_bonds(spec, mixed, mixed, offsets, bonds);
        // bulk enters both exponentials with weight (kMixSmall + kMixLarge) = 1/2
        for (std::size_t i = 1; i + 1 < bonds.size(); ++i) bonds[i] *= 0.5;
        evolver.taylor(psi, bonds, h);
      }
    }
  };

  std::size_t next_cut = 0;
  double now = 0.0;
  for (std::size_t r = 1; r <= reports; ++r) {
    const double stop = r == reports ? t_max : t_max * static_cast<double>(r) / static_cast<double>(reports);
    while (next_cut < cuts.size() && cuts[next_cut] < stop) {
      if (cuts[next_cut] > now) {
        advance(now, cuts[next_cut]);
        now = cuts[next_cut];
      }
      ++next_cut;
    }
    advance(now, stop);
    now = stop;
    record(now);
  }

  if (result.norm_drift > options.norm_budget)
    fail(ErrorCode::numerical, "norm drift " + std::to_string(result.norm_drift) +
                                   " exceeds unitarity budget");

  result.fidelity.reserve(result.amplitude.size());
  for (double f : result.amplitude) result.fidelity.push_back(average_fidelity(f));
  const auto peak = std::max_element(result.fidelity.begin(), result.fidelity.end());
  result.peak_fidelity = *peak;
  result.peak_time = result.times[static_cast<std::size_t>(peak - result.fidelity.begin())];
  return result;
}

TransferResult propagate(const ChainSpec& spec, const ModulationProfile& profile,
                         const CouplingOffsets& static_disorder, double t_max,
                         const PropagationOptions& options) {
  DisorderTrajectory trajectory;
  trajectory.blocks.push_back(static_disorder);
  return propagate(spec, profile, &trajectory, t_max, options);
}

TimeWindow peak_window(const TransferResult& result, double threshold) {
  require(threshold > 0.5 && threshold < 1.0, ErrorCode::invalid_argument,
          "window threshold must lie in (1/2, 1)");
  TimeWindow window;
  const auto& fid = result.fidelity;
  if (fid.empty()) return window;
  const auto peak = static_cast<std::size_t>(std::max_element(fid.begin(), fid.end()) - fid.begin());
  if (fid[peak] < threshold) return window;
  std::size_t lo = peak, hi = peak;
  while (lo > 0 && fid[lo - 1] >= threshold) --lo;
  while (hi + 1 < fid.size() && fid[hi + 1] >= threshold) ++hi;
  window.begin = result.times[lo];
  window.end = result.times[hi];
  window.empty = false;
  return window;
}

StationaryTransfer::StationaryTransfer(const ChainSpec& spec, double alpha,
                                       const CouplingOffsets* disorder, int source_site,
                                       int target_site) {
  const InstantaneousHamiltonian h = build_hamiltonian(spec, alpha, disorder);
  const TridiagonalEigen eig = eigen_decompose(h.off_diagonal);
  const auto src = resolve_site(spec, source_site, 0);
  const auto tgt = resolve_site(spec, target_site, spec.n_channel + 1);
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    energies_.push_back(eig.values(k));
    overlaps_.push_back(eig.vectors(tgt, k) * eig.vectors(src, k));
  }
}

double StationaryTransfer::amplitude(double t) const {
  Complex sum{0.0, 0.0};
  for (std::size_t k = 0; k < energies_.size(); ++k) sum += overlaps_[k] * std::polar(1.0, -energies_[k] * t);
  return std::min(1.0, std::abs(sum));
}

double central_splitting(const ChainSpec& spec, double alpha) {
  if (alpha == 0.0) return 0.0;
  const InstantaneousHamiltonian h = build_hamiltonian(spec, alpha);
  const auto n = static_cast<Eigen::Index>(h.dimension());
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(h.off_diagonal.data(), n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  const double floor = 1e-12 * spec.coupling_scale;
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < n; ++k)
    if (solver.eigenvalues()(k) > floor) best = std::min(best, solver.eigenvalues()(k));
  return best;
}

double dressed_duration(const ChainSpec& spec, double p, double alpha_max, double phase_target) {
  require(alpha_max > 0.0 && phase_target > 0.0, ErrorCode::invalid_argument,
          "dressed duration needs positive alpha_max and phase target");
  const ModulationProfile unit = sin_power_profile(p, alpha_max, 1.0);
  const double mean_splitting = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [&](double s) { return central_splitting(spec, unit.coupling(s)); }, 0.0, 1.0, 8, 1e-12);
  return std::numbers::sqrt2 * phase_target / mean_splitting;
}

OptimalTransfer optimize_transfer_time(const ChainSpec& spec, double p, double alpha_max,
                                       double phase_target, const TransferSearch& search) {
  require(search.window_low > 0.0 && search.window_high > search.window_low,
          ErrorCode::invalid_argument, "transfer search window must satisfy 0 < low < high");
  require(search.coarse_points >= 3, ErrorCode::invalid_argument, "transfer search needs >= 3 points");
  const SpectralData data = channel_eigenmodes(spec);
  const double nominal = duration_for_phase(phase_target, p, alpha_max, data.central_coupling);
  const double lo = search.window_low * nominal, hi = search.window_high * nominal;
  constexpr int kBits = 40;

  std::function<double(double)> amplitude;
  std::optional<StationaryTransfer> stationary;
  std::size_t coarse = search.coarse_points;
  if (p == 0.0) {
    stationary.emplace(spec, alpha_max);
    amplitude = [&](double t) { return stationary->amplitude(t); };
    coarse = std::max<std::size_t>(coarse, 4000);
  } else {
    amplitude = [&](double duration) {
      PropagationOptions opts;
      opts.report_points = 1;
      opts.dt = std::min(search.dt, step_limit(spec, duration, duration, 0.0));
      return propagate(spec, sin_power_profile(p, alpha_max, duration), nullptr, duration, opts)
          .final_amplitude();
    };
  }

  const double step = (hi - lo) / static_cast<double>(coarse - 1);
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t i = 0; i < coarse; ++i) {
    const double v = amplitude(lo + step * static_cast<double>(i));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double a = lo + step * static_cast<double>(best == 0 ? 0 : best - 1);
  const double b = lo + step * static_cast<double>(std::min(best + 1, coarse - 1));
  const auto [t_opt, neg] = boost::math::tools::brent_find_minima(
      [&](double t) { return -amplitude(t); }, a, b, kBits);
  OptimalTransfer out;
  out.duration = -neg >= best_value ? t_opt : lo + step * static_cast<double>(best);
  out.amplitude = std::max(-neg, best_value);
  out.fidelity = average_fidelity(out.amplitude);
  return out;
}

}  // namespace qst
