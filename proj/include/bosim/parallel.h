// Copyright 2026 The bosim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOSIM_PARALLEL_H
#define BOSIM_PARALLEL_H

#include <cstddef>
#include <functional>

namespace bosim {

/// Number of worker threads used by the parallel kernels.
///
/// Defaults to std::thread::hardware_concurrency(), capped by the
/// BOSIM_THREADS environment variable when it is set.
size_t max_threads();

/// Overrides max_threads() for the current process. Zero restores the default.
void set_max_threads(size_t n);

/// Calls body(i) for every i in [0, count), distributing indices across
/// threads. Each index is visited exactly once; callers write results into
/// slot i so the assembled output never depends on the thread count.
void parallel_for(size_t count, const std::function<void(size_t)> &body);

}  // namespace bosim

#endif
