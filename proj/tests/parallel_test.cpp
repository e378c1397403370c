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

#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>
#include <string>
#include <vector>

namespace ges {
namespace {

struct Workers {
  explicit Workers(int n) : saved(worker_count()) { set_worker_count(n); }
  ~Workers() { set_worker_count(saved); }
  int saved;
};

TEST(Parallel, EachIndexRunsOnce) {
  Workers w(4);
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Parallel, SlotResultsMatchSerial) {
  std::vector<double> serial(257), threaded(257);
  auto fn = [](std::vector<double>& out) {
    return [&out](std::size_t i) { out[i] = static_cast<double>(i) * 0.5 + 1.0 / (i + 1.0); };
  };
  {
    Workers w(1);
    parallel_for(serial.size(), fn(serial));
  }
  {
    Workers w(8);
    parallel_for(threaded.size(), fn(threaded));
  }
  EXPECT_EQ(serial, threaded);
}

TEST(Parallel, LowestFailingIndexWins) {
  Workers w(4);
  try {
    parallel_for(100, [](std::size_t i) {
      if (i % 10 == 7) throw std::runtime_error(std::to_string(i));
    });
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "7");
  }
}

TEST(Parallel, NestedCallsComplete) {
  Workers w(3);
  std::vector<int> out(40, 0);
  parallel_for(4, [&](std::size_t i) {
    parallel_for(10, [&](std::size_t j) { out[i * 10 + j] = static_cast<int>(i * 10 + j); });
  });
  for (int i = 0; i < 40; ++i) EXPECT_EQ(out[i], i);
}

TEST(Parallel, WorkerCountClampsToOne) {
  Workers w(0);
  EXPECT_EQ(worker_count(), 1);
}

}  // namespace
}  // namespace ges
