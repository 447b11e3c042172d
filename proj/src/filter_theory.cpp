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

#include "qst/filter_theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "qst/error.hpp"

namespace qst {

namespace {

constexpr double kPi = std::numbers::pi;

struct Nodes {
  std::vector<double> x;  // on [-1, 1]
  std::vector<double> w;
};

template <unsigned Order>
const Nodes& gauss_legendre() {
  static const Nodes nodes = [] {
    using Rule = boost::math::quadrature::gauss<double, Order>;
    Nodes n;
    const auto& a = Rule::abscissa();
    const auto& w = Rule::weights();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0.0) {
        n.x.push_back(0.0);
        n.w.push_back(w[i]);
      } else {
        n.x.push_back(-a[i]);
        n.w.push_back(w[i]);
        n.x.push_back(a[i]);
        n.w.push_back(w[i]);
      }
    }
    std::vector<std::size_t> order(n.x.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto l, auto r) { return n.x[l] < n.x[r]; });
    Nodes sorted;
    for (auto i : order) {
      sorted.x.push_back(n.x[i]);
      sorted.w.push_back(n.w[i]);
    }
    return sorted;
  }();
  return nodes;
}

// Composite Gauss-Legendre nodes on [a, b] with panels no wider than width.
template <unsigned Order>
void append_panels(double a, double b, double width, std::vector<double>& t,
                   std::vector<double>& w) {
  if (b <= a) return;
  const Nodes& gl = gauss_legendre<Order>();
  const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / width)));
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      t.push_back(lo + 0.5 * h * (gl.x[i] + 1.0));
      w.push_back(0.5 * h * gl.w[i]);
    }
  }
}

// Like append_panels, but the first and last panel are split geometrically
// toward the ends, where sin^p with fractional p has an s^p singularity.
template <int Order>
void append_graded_panels(double a, double b, double width, std::vector<double>& t,
                          std::vector<double>& w) {
  if (b <= a) return;
  constexpr int kLevels = 14;
  constexpr double kRatio = 0.25;
  const auto panels = static_cast<std::size_t>(std::max(3.0, std::ceil((b - a) / width)));
  const double h = (b - a) / static_cast<double>(panels);
  double edge = h * std::pow(kRatio, kLevels);
  append_panels<Order>(a, a + edge, edge, t, w);
  for (int k = 0; k < kLevels; ++k, edge /= kRatio) append_panels<Order>(a + edge, a + edge / kRatio, h, t, w);
  append_panels<Order>(a + h, b - h, h, t, w);
  for (int k = 0; k < kLevels; ++k) {
    edge *= kRatio;
    append_panels<Order>(b - edge / kRatio, b - edge, h, t, w);
  }
  append_panels<Order>(b - edge, b, edge, t, w);
}

// phi at each of the sorted times (all >= 0).
std::vector<double> phase_on(const ModulationProfile& profile, std::span<const double> times,
                             double j_z) {
  const Nodes& gl = gauss_legendre<8>();
  std::vector<double> phase(times.size());
  double acc = 0.0, prev = 0.0;
  const double end = profile.duration;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = std::min(times[i], end);
    const double h = t - prev;
    if (h > 0.0) {
      double s = 0.0;
      for (std::size_t j = 0; j < gl.x.size(); ++j)
        s += gl.w[j] * profile.unit_shape(prev + 0.5 * h * (gl.x[j] + 1.0));
      acc += 0.5 * h * s;
      prev = t;
    }
    phase[i] = j_z * profile.alpha_max * acc;
  }
  return phase;
}

double channel_factor(Parity parity, Parity central, double phase) {
  return parity == central ? std::cos(std::numbers::sqrt2 * phase) : 1.0;
}

// Values of Omega_odd and Omega_even on a set of sorted times.
struct ControlSamples {
  std::vector<double> t;
  std::vector<double> odd;
  std::vector<double> even;

  const std::vector<double>& of(Parity q) const { return q == Parity::odd ? odd : even; }
};

ControlSamples sample_controls(const ModulationProfile& profile, std::vector<double> t, double j_z,
                               Parity central) {
  ControlSamples s;
  const auto phase = phase_on(profile, t, j_z);
  s.odd.resize(t.size());
  s.even.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double a = profile.alpha_max * profile.unit_shape(std::min(t[i], profile.duration));
    s.odd[i] = a * channel_factor(Parity::odd, central, phase[i]);
    s.even[i] = a * channel_factor(Parity::even, central, phase[i]);
  }
  s.t = std::move(t);
  return s;
}

// Gauss-Legendre representation of int_0^T Omega_q(t) e^{i omega t} dt.
class ControlFourier {
 public:
  ControlFourier(const ModulationProfile& profile, double j_z, Parity central, double omega_max) {
    std::vector<double> t;
    const double width = std::min(profile.duration / 4.0, 1.0 / std::max(1.0, omega_max));
    append_graded_panels<16>(0.0, profile.duration, width, t, weights_);
    samples_ = sample_controls(profile, std::move(t), j_z, central);
  }

  std::complex<double> transform(Parity q, double omega) const {
    const auto& v = samples_.of(q);
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double a = weights_[i] * v[i];
      const double ph = omega * samples_.t[i];
      re += a * std::cos(ph);
      im += a * std::sin(ph);
    }
    return {re, im};
  }

  double norm(Parity q) const {
    const auto& v = samples_.of(q);
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += weights_[i] * v[i] * v[i];
    return s;
  }

 private:
  std::vector<double> weights_;
  ControlSamples samples_;
};

double max_line_energy(const BathSpectrumModel& bath) {
  if (bath.kind == BathSpectrumModel::Kind::semicircle_with_gap) return bath.radius;
  return std::max(std::abs(bath.support_min()), std::abs(bath.support_max()));
}

double overlap(const ControlFourier& fourier, const BathSpectrumModel& bath, Parity q,
               double duration) {
  if (bath.kind == BathSpectrumModel::Kind::discrete_lines) {
    double sum = 0.0;
    for (const auto& line : bath.lines) sum += line.weight * 0.5 * std::norm(fourier.transform(q, line.energy));
    return sum;
  }
  if (bath.total_weight() == 0.0) return 0.0;
  std::vector<double> omega, w;
  const auto cuts = bath.breakpoints();
  const double width = kPi / (4.0 * duration);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    // skip the empty gap of a semicircle
    if (bath.density(0.5 * (a + b)) == 0.0) continue;
    append_panels<8>(a, b, std::min(width, (b - a) / 4.0), omega, w);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const double rho = bath.density(omega[i]);
    if (rho == 0.0) continue;
    sum += w[i] * rho * 0.5 * std::norm(fourier.transform(q, omega[i]));
  }
  return sum;
}

}  // namespace

double control_function(const ModulationProfile& profile, Parity parity, double t, double j_z,
                        Parity central) {
  const double a = evaluate_pulse(profile, t);
  if (parity != central) return a;
  return a * std::cos(std::numbers::sqrt2 * accumulated_phase(profile, t, j_z));
}

double infidelity_time_domain(const ModulationProfile& profile, const SpectralData& data,
                              const TimeDomainOptions& options) {
  const double j_z = data.central_coupling;
  const Parity central = data.central_parity();
  const double duration = profile.duration;
  double omega_max = 0.0;
  for (double w : data.eigenenergies) omega_max = std::max(omega_max, std::abs(w));
  double h = options.max_step > 0.0 ? options.max_step
                                    : std::min(0.1 / std::max(omega_max, 1e-12), duration / 400.0);

  auto evaluate = [&](double step) {
    const auto n = static_cast<std::size_t>(std::ceil(duration / step));
    const double dt = duration / static_cast<double>(n);
    std::vector<double> t(n + 1);
    for (std::size_t i = 0; i <= n; ++i) t[i] = dt * static_cast<double>(i);
    const ControlSamples s = sample_controls(profile, std::move(t), j_z, central);

    double zeta = 0.0;
    for (int k = 1; k <= data.n_modes(); ++k) {
      if (k == data.central_index) continue;
      const auto& omega_q = s.of(mode_parity(k));
      const double w = data.energy(k);
      // inner(t_i) = int_0^{t_i} Omega(t') e^{i w t'} dt'
      std::complex<double> inner{0.0, 0.0}, outer{0.0, 0.0};
      std::complex<double> prev = omega_q[0];
      for (std::size_t i = 1; i <= n; ++i) {
        const std::complex<double> cur = omega_q[i] * std::polar(1.0, w * s.t[i]);
        inner += 0.5 * dt * (prev + cur);
        const double weight = i == n ? 0.5 * dt : dt;
        outer += weight * std::conj(cur) * inner;
        prev = cur;
      }
      const double jk = data.weight(k);
      zeta += jk * jk * outer.real();
    }
    return zeta;
  };

  double coarse = evaluate(h);
  h *= 0.5;
  double fine = evaluate(h);
  int refinements = 1;
  while (std::abs(fine - coarse) > options.tolerance * std::abs(fine) && fine != coarse) {
    if (refinements >= options.max_refinements)
      fail(ErrorCode::numerical,
           "time-domain infidelity grid too coarse: refinement changed result by more than " +
               std::to_string(options.tolerance * 100.0) + "%");
    coarse = fine;
    h *= 0.5;
    fine = evaluate(h);
    ++refinements;
  }
  return (4.0 * fine - coarse) / 3.0;
}

double FilterSpectrum::integrated_weight() const {
  if (omega.size() < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 1; i < omega.size(); ++i)
    sum += 0.5 * (omega[i] - omega[i - 1]) * (values[i] + values[i - 1]);
  const double lo = std::abs(omega.front()), hi = std::abs(omega.back());
  // int_W^inf C w^-s dw = C W^(1-s) / (s-1)
  const double s = tail_exponent;
  if (omega.front() < 0.0 && lo > 0.0) sum += tail_coefficient * std::pow(lo, 1.0 - s) / (s - 1.0);
  if (omega.back() > 0.0 && hi > 0.0) sum += tail_coefficient * std::pow(hi, 1.0 - s) / (s - 1.0);
  return sum;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  require(points >= 2 && hi > lo, ErrorCode::invalid_argument,
          "frequency grid needs >= 2 points and hi > lo");
  std::vector<double> grid(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo + step * static_cast<double>(i);
  grid.back() = hi;
  return grid;
}

FilterSpectrum filter_spectrum(const ModulationProfile& profile, Parity parity,
                               std::span<const double> omega_grid, double j_z, Parity central) {
  require(!omega_grid.empty(), ErrorCode::invalid_argument, "empty frequency grid");
  double omega_max = 0.0;
  for (double w : omega_grid) omega_max = std::max(omega_max, std::abs(w));
  const ControlFourier fourier(profile, j_z, central, omega_max);
  FilterSpectrum spectrum;
  spectrum.parity = parity;
  spectrum.duration = profile.duration;
  spectrum.omega.assign(omega_grid.begin(), omega_grid.end());
  spectrum.values.reserve(omega_grid.size());
  for (double w : omega_grid)
    spectrum.values.push_back(std::norm(fourier.transform(parity, w)) / (2.0 * kPi));
  // Endpoint asymptotics: Omega ~ A s^p at distance s from either end gives
  // |Omega^(w)| ~ A Gamma(1+p) / |w|^(1+p); the cross term averages out.
  const double start = control_function(profile, parity, 0.0, j_z, central);
  const double end = control_function(profile, parity, profile.duration, j_z, central);
  const double p = profile.p();
  if (std::holds_alternative<SinPowerShape>(profile.shape) && p > 0.0) {
    const double edge = profile.alpha_max * std::pow(kPi / profile.duration, p) * std::tgamma(1.0 + p);
    const double c_q_end =
        parity == central
            ? std::cos(std::numbers::sqrt2 * accumulated_phase(profile, profile.duration, j_z))
            : 1.0;
    spectrum.tail_coefficient = edge * edge * (1.0 + c_q_end * c_q_end) / (2.0 * kPi);
    spectrum.tail_exponent = 2.0 + 2.0 * p;
  } else {
    spectrum.tail_coefficient = (start * start + end * end) / (2.0 * kPi);
  }
  return spectrum;
}

double control_norm(const ModulationProfile& profile, Parity parity, double j_z, Parity central) {
  return ControlFourier(profile, j_z, central, 1.0).norm(parity);
}

double infidelity_energy_domain(const ModulationProfile& profile, const BathSpectrumModel& odd,
                                const BathSpectrumModel& even, double j_z, Parity central) {
  require(odd.parity == Parity::odd && even.parity == Parity::even, ErrorCode::invalid_argument,
          "bath models passed in the wrong parity slots");
  const double omega_max = std::max(max_line_energy(odd), max_line_energy(even));
  const ControlFourier fourier(profile, j_z, central, omega_max);
  return overlap(fourier, odd, Parity::odd, profile.duration) +
         overlap(fourier, even, Parity::even, profile.duration);
}

double infidelity_energy_domain(const ModulationProfile& profile, const SpectralData& data) {
  return infidelity_energy_domain(profile, bath_spectrum(data, Parity::odd),
                                  bath_spectrum(data, Parity::even), data.central_coupling,
                                  data.central_parity());
}

double infidelity_energy_domain(const FilterSpectrum& odd_filter, const FilterSpectrum& even_filter,
                                const BathSpectrumModel& odd, const BathSpectrumModel& even) {
  const auto& grid = odd_filter.omega;
  if (grid.size() < 2 || grid != even_filter.omega || odd_filter.duration != even_filter.duration)
    fail(ErrorCode::dimension_mismatch, "filter spectra are not on the same frequency grid");
  if (odd_filter.parity != Parity::odd || even_filter.parity != Parity::even ||
      odd.parity != Parity::odd || even.parity != Parity::even)
    fail(ErrorCode::invalid_argument, "filter/bath parity slots do not match");
  const double step = grid[1] - grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (std::abs(grid[i] - grid[i - 1] - step) > 1e-9 * std::abs(step))
      fail(ErrorCode::dimension_mismatch, "filter frequency grid is not uniform");
  double sum = 0.0;
  for (const auto* pair : {&odd, &even}) {
    const BathSpectrumModel& bath = *pair;
    if (bath.kind == BathSpectrumModel::Kind::discrete_lines)
      fail(ErrorCode::invalid_argument,
           "grid overlap needs a continuous bath; use the profile form for discrete lines");
    if (bath.total_weight() == 0.0) continue;
    if (grid.front() > bath.support_min() || grid.back() < bath.support_max())
      fail(ErrorCode::dimension_mismatch, "filter grid does not cover the bath support");
    const auto& f = (pair == &odd ? odd_filter : even_filter).values;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double weight = (i == 0 || i + 1 == grid.size()) ? 0.5 * step : step;
      sum += kPi * weight * bath.density(grid[i]) * f[i];
    }
  }
  return sum;
}

std::vector<PulseFamilyResult> pulse_family_search(double phase_target, double duration,
                                                   const BathSpectrumModel& odd,
                                                   const BathSpectrumModel& even,
                                                   std::span<const double> p_grid, double j_z,
                                                   Parity central) {
  require(!p_grid.empty(), ErrorCode::invalid_argument, "pulse family search needs p values");
  require(duration > 0.0 && phase_target > 0.0 && j_z > 0.0, ErrorCode::invalid_argument,
          "pulse family search needs positive duration, phase and Jz");
  std::vector<PulseFamilyResult> results;
  for (double p : p_grid) {
    const double alpha_max = pulse_norm_constant(p) * phase_target / (j_z * duration);
    ModulationProfile profile = sin_power_profile(p, alpha_max, duration);
    profile.phase_target = phase_target;
    results.push_back({p, alpha_max, infidelity_energy_domain(profile, odd, even, j_z, central)});
  }
  std::stable_sort(results.begin(), results.end(),
                   [](const auto& a, const auto& b) { return a.zeta < b.zeta; });
  return results;
}

}  // namespace qst
