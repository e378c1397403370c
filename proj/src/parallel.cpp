/*
 * Copyright 2026 The GES Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "ges/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ges {
namespace {

int initial_workers() {
  if (const char* env = std::getenv("GES_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

std::atomic<int>& workers() {
  static std::atomic<int> n{initial_workers()};
  return n;
}

thread_local bool inside_pool = false;

}  // namespace

int worker_count() noexcept { return workers().load(); }

void set_worker_count(int n) noexcept { workers().store(std::max(1, n)); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const auto nworkers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
  // Nested calls run inline on the calling worker.
  if (nworkers <= 1 || inside_pool) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::size_t first_index = n;
  std::mutex error_mu;
  auto work = [&] {
    inside_pool = true;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (i < first_index) {
          first_index = i;
          first_error = std::current_exception();
        }
      }
    }
    inside_pool = false;
  };
  std::vector<std::jthread> pool;
  pool.reserve(nworkers - 1);
  for (std::size_t w = 1; w < nworkers; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  // The lowest failing index wins, as in a serial run.
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ges
