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

#ifndef QST_PARALLEL_HPP
#define QST_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace qst {

// Worker count from QST_WORKERS, else hardware concurrency (at least 1).
std::size_t default_workers();

// Runs task(i) for i in [0, count) on up to `workers` threads. Tasks must
// write only to slot i of caller-owned storage. The first exception (lowest
// index) is rethrown after all threads join.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& task);

}  // namespace qst

#endif  // QST_PARALLEL_HPP
