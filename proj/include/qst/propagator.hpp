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

#ifndef QST_PROPAGATOR_HPP
#define QST_PROPAGATOR_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "qst/chain_model.hpp"
#include "qst/control.hpp"
#include "qst/spectral.hpp"

namespace qst {

struct PropagationOptions {
  double dt = 0.01;
  // Uniform report grid on [0, t_max] has report_points intervals.
  std::size_t report_points = 1000;
  int source_site = 0;
  int target_site = -1;  // -1 means N+1
  double norm_budget = 1e-10;
  // Set when the trajectory is fluctuating noise with this correlation time;
  // enforces dt <= tau_c / 10.
  double correlation_time = 0.0;
};

struct TransferResult {
  std::vector<double> times;
  std::vector<double> amplitude;  // f(t) = |<target|psi(t)>|
  std::vector<double> fidelity;   // F(t) = f^2/6 + f/3 + 1/2
  double peak_time = 0.0;
  double peak_fidelity = 0.5;
  double norm_drift = 0.0;

  double final_amplitude() const { return amplitude.back(); }
  double final_fidelity() const { return fidelity.back(); }
};

// Single-excitation Schroedinger evolution from the source site. Steps never
// straddle report times, renewal instants or the pulse end. Time-independent
// segments are applied through an exact (cached) eigendecomposition; others
// through fourth-order commutator-free exponential steps. The boundary
// coupling is zero once t exceeds the profile duration.
// Largest admissible dt: min(0.01/J, min(duration, t_max)/1e4, tau_c/10 when
// correlation_time > 0).
double step_limit(const ChainSpec& spec, double duration, double t_max, double correlation_time = 0.0);

TransferResult propagate(const ChainSpec& spec, const ModulationProfile& profile,
                         const DisorderTrajectory* trajectory, double t_max,
                         const PropagationOptions& options = {});

TransferResult propagate(const ChainSpec& spec, const ModulationProfile& profile,
                         const CouplingOffsets& static_disorder, double t_max,
                         const PropagationOptions& options = {});

double average_fidelity(double f);

struct TimeWindow {
  double begin = 0.0;
  double end = 0.0;
  bool empty = true;

  double width() const { return empty ? 0.0 : end - begin; }
};

// Largest contiguous run of report points around the peak with F >= threshold.
TimeWindow peak_window(const TransferResult& result, double threshold);

// Exact evolution under a frozen Hamiltonian; amplitude(t) for any t.
class StationaryTransfer {
 public:
  StationaryTransfer(const ChainSpec& spec, double alpha, const CouplingOffsets* disorder = nullptr,
                     int source_site = 0, int target_site = -1);

  double amplitude(double t) const;

 private:
  std::vector<double> energies_;
  std::vector<double> overlaps_;
};

// Smallest positive eigenvalue of the frozen Hamiltonian: the splitting of the
// source/central/target triplet, sqrt2 Jz alpha at weak coupling.
double central_splitting(const ChainSpec& spec, double alpha);

// Duration T solving int_0^T splitting(alpha(t)) dt = sqrt2 phase_target.
// Reduces to c_p phase_target / (Jz alpha_M) as alpha_M -> 0.
double dressed_duration(const ChainSpec& spec, double p, double alpha_max, double phase_target);

struct OptimalTransfer {
  double duration = 0.0;
  double amplitude = 0.0;
  double fidelity = 0.5;
};

struct TransferSearch {
  double window_low = 0.6;   // search window in units of the nominal T_p
  double window_high = 2.5;
  std::size_t coarse_points = 25;
  double dt = 0.01;
};

// Maximizes F(T) over the duration of alpha_M sin^p(pi t/T). For p = 0 the
// readout time is scanned directly.
OptimalTransfer optimize_transfer_time(const ChainSpec& spec, double p, double alpha_max,
                                       double phase_target, const TransferSearch& search = {});

}  // namespace qst

#endif  // QST_PROPAGATOR_HPP
