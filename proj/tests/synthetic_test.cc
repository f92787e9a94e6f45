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

#include "mapinfer/synthetic.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mapinfer/error.h"
#include "mapinfer/map_io.h"
#include "test_util.h"

namespace mapinfer {
namespace {

// Planar distance from p to segment ab, in metres.
double SegmentDistance(const LatLon& p, const LatLon& a, const LatLon& b) {
  const EastNorth ab = ToEastNorth(a, b);
  const EastNorth ap = ToEastNorth(a, p);
  const double len2 = ab.east * ab.east + ab.north * ab.north;
  double t = len2 > 0 ? (ap.east * ab.east + ap.north * ab.north) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(ap.east - t * ab.east, ap.north - t * ab.north);
}

SyntheticConfig Noiseless() {
  SyntheticConfig cfg;
  cfg.noise_sigma_m = 0.0;
  cfg.heading_noise_deg = 0.0;
  cfg.n_trajectories = 50;
  cfg.rng_seed = 17;
  return cfg;
}

TEST(SyntheticTest, TwoWayGridShape) {
  const SyntheticData d = GenerateSynthetic(SyntheticConfig{});
  EXPECT_EQ(d.truth.num_nodes(), 25u);
  EXPECT_EQ(d.truth.num_edges(), 80u);
  for (const MapEdge& e : d.truth.edges()) {
    EXPECT_TRUE(d.truth.HasEdge(e.to, e.from));
    EXPECT_NEAR(e.weight_m, 100.0, 0.5);
  }
  const auto all = testing::AllPairs(d.truth);
  for (const auto& row : all) {
    for (double x : row) EXPECT_LT(x, std::numeric_limits<double>::infinity());
  }
  EXPECT_EQ(d.trajectories.size(), 200u);
}

TEST(SyntheticTest, OneWayStreetsAndRoundabouts) {
  SyntheticConfig cfg;
  cfg.world.rows = 6;
  cfg.world.cols = 6;
  cfg.world.oneway_fraction = 1.0;
  cfg.world.roundabouts = 4;
  const SyntheticData d = GenerateSynthetic(cfg);
  EXPECT_EQ(d.truth.num_nodes(), 36u + 7u * 4u);
  std::size_t two_way = 0;
  for (const MapEdge& e : d.truth.edges()) {
    if (d.truth.HasEdge(e.to, e.from)) ++two_way;
  }
  EXPECT_EQ(two_way, 0u);
  // Ring chords are 2 r sin(22.5 deg) = 15.3 m; street segments are longer.
  std::size_t ring = 0;
  for (const MapEdge& e : d.truth.edges()) {
    if (e.weight_m < 2.0 * kRoundaboutRadiusM) {
      EXPECT_NEAR(e.weight_m, 2.0 * kRoundaboutRadiusM * std::sin(DegToRad(22.5)), 0.05);
      ++ring;
    }
  }
  EXPECT_EQ(ring, 32u);
}

TEST(SyntheticTest, NoiselessPointsLieOnTruthEdges) {
  const SyntheticConfig cfg = Noiseless();
  const SyntheticData d = GenerateSynthetic(cfg);
  ASSERT_EQ(d.trajectories.size(), cfg.n_trajectories);
  for (const Trajectory& tr : d.trajectories) {
    ASSERT_GE(tr.points.size(), 2u);
    for (std::size_t i = 0; i < tr.points.size(); ++i) {
      const GpsPoint& p = tr.points[i];
      double best = std::numeric_limits<double>::infinity();
      bool heading_ok = false;
      for (const MapEdge& e : d.truth.edges()) {
        const LatLon a = d.truth.node(e.from).centroid.location;
        const LatLon b = d.truth.node(e.to).centroid.location;
        const double dist = SegmentDistance(p.location, a, b);
        best = std::min(best, dist);
        if (dist < 0.01 && AngleDistance(*p.heading, InitialBearing(a, b)) < 0.5) {
          heading_ok = true;
        }
      }
      EXPECT_LT(best, 0.01);
      EXPECT_TRUE(heading_ok);
      EXPECT_GE(*p.speed_kmh, 0.8 * kLocalSpeedKmh - 1e-3);
      EXPECT_LE(*p.speed_kmh, kLocalSpeedKmh + 1e-3);
      if (i > 0) {
        EXPECT_GT(p.timestamp, tr.points[i - 1].timestamp);
        EXPECT_LE(VincentyDistance(tr.points[i - 1].location, p.location),
                  cfg.max_spacing_m + 0.01);
      }
    }
  }
}

std::string Serialize(const SyntheticData& d) {
  std::ostringstream os;
  WriteEdgeList(os, d.truth);
  WriteTrajectoriesCsv(os, d.trajectories);
  return os.str();
}

TEST(SyntheticTest, SeedDeterminesOutput) {
  SyntheticConfig cfg;
  cfg.world.oneway_fraction = 0.4;
  cfg.world.roundabouts = 2;
  cfg.rng_seed = 99;
  const std::string a = Serialize(GenerateSynthetic(cfg));
  EXPECT_EQ(a, Serialize(GenerateSynthetic(cfg)));
  cfg.rng_seed = 100;
  EXPECT_NE(a, Serialize(GenerateSynthetic(cfg)));
}

TEST(SyntheticTest, RejectsDegenerateWorlds) {
  SyntheticConfig cfg;
  cfg.world.rows = 1;
  EXPECT_THROW(GenerateSynthetic(cfg), Error);
  cfg = SyntheticConfig{};
  cfg.world.block_m = 40.0;
  EXPECT_THROW(GenerateSynthetic(cfg), Error);
  cfg = SyntheticConfig{};
  cfg.world.oneway_fraction = 1.5;
  EXPECT_THROW(GenerateSynthetic(cfg), Error);
  cfg = SyntheticConfig{};
  cfg.world.roundabouts = 10;  // only 9 interior intersections on 5x5
  EXPECT_THROW(GenerateSynthetic(cfg), Error);
  cfg = SyntheticConfig{};
  cfg.min_spacing_m = 200.0;
  EXPECT_THROW(GenerateSynthetic(cfg), Error);
}

}  // namespace
}  // namespace mapinfer
