// Copyright 2026 The agentmap Authors
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

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "agentmap/rng.hpp"

namespace agentmap {
namespace {

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(Rng, StreamsDiffer) {
  Rng a(42, 0), b(42, 1), c(43, 0);
  EXPECT_NE(a(), b());
  EXPECT_NE(Rng(42, 0)(), c());
  EXPECT_NE(mix_seed(1, 2), mix_seed(2, 1));
}

TEST(Rng, SplitIsPureFunctionOfParentKey) {
  Rng parent(9);
  Rng x = parent.split(3);
  parent();  // advancing the parent does not change its children
  Rng y = parent.split(3);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(x(), y());
  EXPECT_NE(parent.split(3)(), parent.split(4)());
}

TEST(Rng, UniformRange) {
  Rng r(5);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.01);
}

TEST(Rng, BelowIsUnbiased) {
  Rng r(11);
  std::array<int, 7> hist{};
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) ++hist[r.below(7)];
  // chi-square, 6 dof; 22.46 is the 0.999 quantile
  double chi = 0;
  for (int h : hist) chi += std::pow(h - draws / 7.0, 2) / (draws / 7.0);
  EXPECT_LT(chi, 22.46);
  EXPECT_EQ(r.below(1), 0u);
  EXPECT_THROW(r.below(0), std::invalid_argument);
}

TEST(Rng, ShuffleIsPermutation) {
  Rng r(3);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  r.shuffle(std::span<int>(v));
  std::set<int> s(v.begin(), v.end());
  EXPECT_EQ(s.size(), 50u);
  std::vector<int> sorted(50);
  std::iota(sorted.begin(), sorted.end(), 0);
  EXPECT_NE(v, sorted);
}

TEST(Rng, ShuffleCoversAllOrders) {
  Rng r(8);
  std::set<std::vector<int>> seen;
  for (int i = 0; i < 2000; ++i) {
    std::vector<int> v{0, 1, 2, 3};
    r.shuffle(std::span<int>(v));
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 24u);
}

}  // namespace
}  // namespace agentmap
