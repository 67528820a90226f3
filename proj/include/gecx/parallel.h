// Copyright 2026 The gecx Authors. All Rights Reserved.
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

#ifndef GECX_PARALLEL_H_
#define GECX_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace gecx {

// Worker count: GEC_XFORM_THREADS when set to a positive integer, otherwise
// the hardware concurrency.
std::size_t worker_count();

// Runs fn(0) .. fn(n - 1) across worker threads. Callers write results into
// per-index slots so output order never depends on scheduling. The first
// exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace gecx

#endif  // GECX_PARALLEL_H_
