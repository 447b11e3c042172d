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

#ifndef QST_CHAIN_MODEL_HPP
#define QST_CHAIN_MODEL_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace qst {

// Boundary-controlled XX chain. Sites are numbered 0..N+1: site 0 is the
// source qubit, N+1 the target, and 1..N form the channel. Energies are in
// units of the coupling scale J.
struct ChainSpec {
  int n_channel = 29;
  // J_1..J_{N-1}, in units of J.
  std::vector<double> bulk_couplings;
  double coupling_scale = 1.0;

  std::size_t total_sites() const { return static_cast<std::size_t>(n_channel) + 2; }
};

ChainSpec uniform_chain(int n_channel, double coupling_scale = 1.0);

// Throws qst::Error if N is not a positive odd integer, the bulk coupling count
// is not N-1, or any coupling is non-positive.
void validate(const ChainSpec& spec);

// Relative offsets Delta applied as J_i -> J_i (1 + Delta_i). The boundary
// offsets are normally zero since those bonds carry the control.
struct CouplingOffsets {
  std::vector<double> bulk;
  double left_boundary = 0.0;
  double right_boundary = 0.0;

  bool empty() const {
    return bulk.empty() && left_boundary == 0.0 && right_boundary == 0.0;
  }
};

// Piecewise-constant offsets: block b covers [b L, (b+1) L) with L =
// block_length. A static realization is one block of infinite length.
struct DisorderTrajectory {
  double block_length = 0.0;
  std::vector<CouplingOffsets> blocks;

  bool is_static() const { return blocks.size() <= 1; }
  std::size_t block_index(double t) const;
  const CouplingOffsets& at(double t) const;
  // Renewal instants strictly inside (0, t_max).
  std::vector<double> breakpoints(double t_max) const;
};

// Single-excitation Hamiltonian frozen at one instant: real symmetric,
// tridiagonal, zero diagonal.
struct InstantaneousHamiltonian {
  // N+1 bond amplitudes: [0] = J alpha, [1..N-1] = bulk, [N] = J alpha.
  std::vector<double> off_diagonal;

  std::size_t dimension() const { return off_diagonal.size() + 1; }
};

InstantaneousHamiltonian build_hamiltonian(const ChainSpec& spec, double alpha,
                                           const CouplingOffsets* disorder = nullptr);

// Same, writing into a preallocated bond buffer of size N+1; the propagator
// calls this once per sub-step.
void fill_bonds(const ChainSpec& spec, double left_alpha, double right_alpha,
                const CouplingOffsets* disorder, std::span<double> bonds);

// J_i == J_{N-i} for all i, relative tolerance 1e-12.
bool validate_mirror_symmetry(const ChainSpec& spec);

}  // namespace qst

#endif  // QST_CHAIN_MODEL_HPP
