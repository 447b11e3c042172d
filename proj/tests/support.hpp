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

// Input generators for the property tests.
#ifndef QST_TESTS_SUPPORT_HPP
#define QST_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "qst/chain_model.hpp"

namespace qst::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  int odd(int lo, int hi) {
    int n = integer(lo, hi);
    return n % 2 == 0 ? n + 1 : n;
  }

  // Random odd-N chain with positive couplings in [lo, hi].
  ChainSpec chain(int max_n, double lo = 0.5, double hi = 1.5) {
    ChainSpec spec;
    spec.n_channel = odd(1, max_n);
    spec.coupling_scale = uniform(0.5, 2.0);
    spec.bulk_couplings.resize(static_cast<std::size_t>(spec.n_channel - 1));
    for (auto& j : spec.bulk_couplings) j = uniform(lo, hi);
    return spec;
  }

  CouplingOffsets offsets(const ChainSpec& spec, double eps) {
    CouplingOffsets off;
    off.bulk.resize(spec.bulk_couplings.size());
    for (auto& d : off.bulk) d = uniform(-eps, eps);
    return off;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qst::testing

#endif  // QST_TESTS_SUPPORT_HPP
