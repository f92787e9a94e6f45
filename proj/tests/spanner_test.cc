// Copyright 2026 The mapinfer Authors
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

#include "mapinfer/spanner.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "mapinfer/error.h"
#include "test_util.h"

namespace mapinfer {
namespace {

using testing::kDoha;
using testing::NodeAt;

constexpr double kInf = std::numeric_limits<double>::infinity();

RoadGraph RandomGraph(std::mt19937_64& rng, int max_n, int max_m) {
  std::uniform_int_distribution<int> nd(2, max_n);
  const int n = nd(rng);
  std::uniform_int_distribution<int> md(1, max_m);
  const int m = md(rng);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_real_distribution<double> w(1.0, 500.0);
  RoadGraph g;
  for (int i = 0; i < n; ++i) g.AddNode(NodeAt(kDoha));
  for (int k = 0; k < m; ++k) {
    const int a = pick(rng), b = pick(rng);
    if (a != b && !g.HasEdge(a, b)) g.AddEdge({a, b, w(rng)});
  }
  return g;
}

TEST(GreedySpannerTest, SquareDiagonalIsRejected) {
  RoadGraph g;
  for (int i = 0; i < 3; ++i) g.AddNode(NodeAt(kDoha));
  g.AddEdge({0, 1, 100.0});
  g.AddEdge({1, 2, 100.0});
  g.AddEdge({0, 2, 100.0 * std::sqrt(2.0)});
  const auto keep = GreedySpannerKeepMask(g, std::sqrt(2.0));
  EXPECT_EQ(keep, (std::vector<bool>{true, true, false}));
  // A slightly shorter chord is a genuine shortcut.
  g.mutable_edge(2).weight_m = 141.0;
  EXPECT_EQ(GreedySpannerKeepMask(g, std::sqrt(2.0)), (std::vector<bool>{true, true, true}));
}

TEST(GreedySpannerTest, TreeIsKeptWhole) {
  RoadGraph g;
  for (int i = 0; i < 7; ++i) g.AddNode(NodeAt(kDoha));
  for (int i = 1; i < 7; ++i) g.AddEdge({(i - 1) / 2, i, 10.0 * i});
  const RoadGraph h = GreedySpanner(g, SpannerConfig{});
  EXPECT_EQ(h.num_edges(), g.num_edges());
}

TEST(GreedySpannerTest, InactiveEdgesAreIgnoredAndKept) {
  RoadGraph g;
  for (int i = 0; i < 3; ++i) g.AddNode(NodeAt(kDoha));
  MapEdge stale{0, 1, 1.0};
  stale.active = false;
  g.AddEdge(stale);
  g.AddEdge({1, 2, 1.0});
  g.AddEdge({0, 2, 1.5});
  EXPECT_EQ(GreedySpannerKeepMask(g, 2.0), (std::vector<bool>{true, true, true}));
}

TEST(GreedySpannerTest, RejectsInvalidStretch) {
  SpannerConfig cfg;
  cfg.alpha = 1.0;
  EXPECT_THROW(GreedySpanner(RoadGraph{}, cfg), Error);
}

class SpannerPropertyTest : public ::testing::TestWithParam<double> {};

TEST_P(SpannerPropertyTest, StretchBoundAndReachability) {
  const double alpha = GetParam();
  std::mt19937_64 rng(1000 + static_cast<uint64_t>(alpha * 1000));
  SpannerConfig cfg;
  cfg.alpha = alpha;
  for (int trial = 0; trial < 40; ++trial) {
    const RoadGraph g = RandomGraph(rng, 30, 150);
    const RoadGraph h = GreedySpanner(g, cfg);
    EXPECT_LE(h.num_edges(), g.num_edges());
    const auto dg = testing::AllPairs(g);
    const auto dh = testing::AllPairs(h);
    for (std::size_t u = 0; u < g.num_nodes(); ++u) {
      for (std::size_t v = 0; v < g.num_nodes(); ++v) {
        ASSERT_EQ(dg[u][v] == kInf, dh[u][v] == kInf);
        if (dg[u][v] == kInf) continue;
        EXPECT_GE(dh[u][v], dg[u][v] - 1e-9);
        EXPECT_LE(dh[u][v], alpha * dg[u][v] + 1e-6);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Stretches, SpannerPropertyTest,
                         ::testing::Values(1.2, std::sqrt(2.0), 2.0));

}  // namespace
}  // namespace mapinfer
