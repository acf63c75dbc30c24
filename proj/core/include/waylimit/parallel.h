// Copyright 2026 The waylimit Authors
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

#ifndef WAYLIMIT_PARALLEL_H_
#define WAYLIMIT_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace waylimit {

// Worker count: WAYLIMIT_THREADS when set to a positive integer, otherwise
// the hardware concurrency (at least 1).
int max_threads();

// Calls body(i) for every i in [0, n). Each index must write only its own
// output slot; callers reduce afterwards in index order, so results do not
// depend on scheduling. The first exception thrown by any body is rethrown.
template <typename Body>
void parallel_for(int n, Body&& body, int threads = 0) {
  if (n <= 0) return;
  if (threads <= 0) threads = max_threads();
  threads = std::min(threads, n);
  if (threads == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace waylimit

#endif  // WAYLIMIT_PARALLEL_H_
