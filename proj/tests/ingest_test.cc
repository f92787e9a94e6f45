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

#include "mapinfer/ingest.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "mapinfer/error.h"
#include "test_util.h"

namespace mapinfer {
namespace {

using testing::Fix;
using testing::StraightTrajectory;

constexpr char kHeader[] = "vehicle_id,timestamp,lat,lon,speed_kmh,heading_deg\n";

std::vector<Trajectory> Parse(const std::string& body, ParseStats* stats = nullptr) {
  std::istringstream in(kHeader + body);
  return ParseTrajectories(in, IngestConfig{}, stats);
}

TEST(ParseTest, OneVehicleFiveRows) {
  const auto trs = Parse(
      "a,100,25.0,51.0,30,0\n"
      "a,110,25.001,51.0,30,0\n"
      "a,120,25.002,51.0,30,0\n"
      "a,130,25.003,51.0,30,0\n"
      "a,140,25.004,51.0,30,0\n");
  ASSERT_EQ(trs.size(), 1u);
  EXPECT_EQ(trs[0].vehicle_id, "a");
  EXPECT_EQ(trs[0].points.size(), 5u);
}

TEST(ParseTest, InterleavedVehiclesAndSorting) {
  const auto trs = Parse(
      "a,120,25.002,51.0,30,0\n"
      "b,100,25.0,51.1,30,90\n"
      "a,100,25.0,51.0,30,0\n"
      "b,110,25.0,51.101,30,90\n"
      "a,110,25.001,51.0,30,0\n");
  ASSERT_EQ(trs.size(), 2u);
  EXPECT_EQ(trs[0].vehicle_id, "a");
  EXPECT_EQ(trs[1].vehicle_id, "b");
  ASSERT_EQ(trs[0].points.size(), 3u);
  EXPECT_DOUBLE_EQ(trs[0].points[0].timestamp, 100.0);
  EXPECT_DOUBLE_EQ(trs[0].points[2].timestamp, 120.0);
}

TEST(ParseTest, LongGapSplitsTrajectory) {
  const auto trs = Parse(
      "a,0,25.0,51.0,30,0\n"
      "a,10,25.001,51.0,30,0\n"
      "a,610,25.002,51.0,30,0\n"
      "a,620,25.003,51.0,30,0\n");
  ASSERT_EQ(trs.size(), 2u);
  EXPECT_EQ(trs[0].points.size(), 2u);
  EXPECT_EQ(trs[1].points.size(), 2u);
}

TEST(ParseTest, GapAtThresholdDoesNotSplit) {
  const auto trs = Parse("a,0,25.0,51.0,30,0\na,300,25.001,51.0,30,0\n");
  EXPECT_EQ(trs.size(), 1u);
}

TEST(ParseTest, MalformedRowsAreCountedAndSkipped) {
  ParseStats stats;
  const auto trs = Parse(
      "a,0,25.0,51.0,30,0\n"
      "a,10,95.0,51.0,30,0\n"       // latitude out of range
      "a,20,25.0,51.0,-3,0\n"       // negative speed
      "a,30,25.0,51.0,30\n"         // missing column
      "a,abc,25.0,51.0,30,0\n"      // bad timestamp
      "a,40,25.0,51.001,,\n",       // location only is fine
      &stats);
  EXPECT_EQ(stats.valid_rows, 2u);
  EXPECT_EQ(stats.malformed_rows, 4u);
  ASSERT_EQ(trs.size(), 1u);
  EXPECT_FALSE(trs[0].points[1].heading.has_value());
  EXPECT_FALSE(trs[0].points[1].speed_kmh.has_value());
}

TEST(ParseTest, MissingHeaderNamesLine) {
  std::istringstream in("\na,0,25,51,30,0\n");
  try {
    ParseTrajectories(in, IngestConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), Error::Kind::kFormat);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(ParseTest, NoValidRowsIsEmptyInput) {
  ParseStats stats;
  try {
    Parse("a,0,99,51,30,0\n", &stats);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), Error::Kind::kEmptyInput);
  }
  std::istringstream blank("");
  EXPECT_THROW(ParseTrajectories(blank, IngestConfig{}), Error);
}

TEST(ParseTest, UnreadableFileIsIoError) {
  try {
    ParseTrajectories(std::filesystem::path("/nonexistent/tr.csv"), IngestConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), Error::Kind::kIo);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/tr.csv"), std::string::npos);
  }
}

TEST(ParseTest, IsoTimestampsDetectedAndEnforced) {
  ParseStats stats;
  const auto trs = Parse(
      "a,2023-07-01T08:30:15Z,25.0,51.0,30,0\n"
      "a,2023-07-01 08:30:25,25.001,51.0,30,0\n"
      "a,1688200235,25.002,51.0,30,0\n",  // epoch after ISO: rejected
      &stats);
  EXPECT_EQ(stats.valid_rows, 2u);
  EXPECT_EQ(stats.malformed_rows, 1u);
  EXPECT_DOUBLE_EQ(trs[0].points[0].timestamp, 1688200215.0);
  EXPECT_DOUBLE_EQ(trs[0].points[1].timestamp, 1688200225.0);
}

TEST(ParseIso8601Test, Variants) {
  EXPECT_DOUBLE_EQ(*ParseIso8601("1970-01-01T00:00:00Z"), 0.0);
  EXPECT_DOUBLE_EQ(*ParseIso8601("2024-02-29T12:00:00.5+01:00"), 1709204400.5);
  EXPECT_DOUBLE_EQ(*ParseIso8601("2023-07-01T08:30:15-05:30"), 1688220015.0);
  EXPECT_FALSE(ParseIso8601("2023-02-30T00:00:00"));
  EXPECT_FALSE(ParseIso8601("2023-07-01T25:00:00"));
  EXPECT_FALSE(ParseIso8601("20230701T000000"));
  EXPECT_FALSE(ParseIso8601("2023-07-01T00:00:00+0100"));
}

TEST(InferSpeedHeadingTest, NorthboundTrack) {
  // 100 m every 10 s = 36 km/h, due north.
  Trajectory tr = StraightTrajectory("v", testing::kDoha, 0.0, 100.0, 6, 0.0, 10.0);
  for (auto& p : tr.points) {
    p.heading.reset();
    p.speed_kmh.reset();
  }
  const auto out = InferSpeedHeading(tr);
  ASSERT_TRUE(out);
  ASSERT_EQ(out->points.size(), 6u);
  for (const auto& p : out->points) {
    EXPECT_LE(AngleDistance(*p.heading, Heading(0)), 0.5);
    EXPECT_NEAR(*p.speed_kmh, 36.0, 1.0);
  }
}

TEST(InferSpeedHeadingTest, CompleteTrajectoryUnchanged) {
  Trajectory tr;
  tr.points = {Fix({25, 51}, 17, 0, 50), Fix({25, 51}, 18, 0, 50)};  // even with dt = 0
  const auto out = InferSpeedHeading(tr);
  ASSERT_TRUE(out);
  ASSERT_EQ(out->points.size(), 2u);
  EXPECT_DOUBLE_EQ(out->points[1].heading->degrees(), 18.0);
}

TEST(InferSpeedHeadingTest, ZeroDtDropsSecondPoint) {
  Trajectory tr = StraightTrajectory("v", testing::kDoha, 90.0, 50.0, 3, 0.0, 5.0);
  tr.points[1].timestamp = tr.points[0].timestamp;
  for (auto& p : tr.points) p.speed_kmh.reset();
  const auto out = InferSpeedHeading(tr);
  ASSERT_TRUE(out);
  ASSERT_EQ(out->points.size(), 2u);
  EXPECT_EQ(out->points[1].location, tr.points[2].location);
}

TEST(InferSpeedHeadingTest, TooShortIsDropped) {
  Trajectory tr;
  GpsPoint p;
  p.location = {25, 51};
  tr.points = {p};
  EXPECT_FALSE(InferSpeedHeading(tr));
}

TEST(FilterSlowPointsTest, ThresholdIsInclusive) {
  Trajectory tr;
  tr.points = {Fix({25, 51}, 0, 0, 3), Fix({25, 51}, 0, 1, 10), Fix({25, 51}, 0, 2, 4),
               Fix({25, 51}, 0, 3, 20), Fix({25, 51}, 0, 4, 5)};
  const Trajectory out = FilterSlowPoints(tr, 5.0);
  ASSERT_EQ(out.points.size(), 2u);
  EXPECT_DOUBLE_EQ(*out.points[0].speed_kmh, 10.0);
  EXPECT_DOUBLE_EQ(*out.points[1].speed_kmh, 20.0);

  Trajectory fast;
  fast.points = {Fix({25, 51}, 0, 0, 6), Fix({25, 51}, 0, 1, 7)};
  EXPECT_EQ(FilterSlowPoints(fast, 5.0).points.size(), 2u);
  Trajectory slow;
  slow.points = {Fix({25, 51}, 0, 0, 1), Fix({25, 51}, 0, 1, 5)};
  EXPECT_TRUE(FilterSlowPoints(slow, 5.0).points.empty());
}

TEST(DensifyTest, InsertsFloorOfDistanceOverSpacing) {
  const Trajectory tr = StraightTrajectory("v", testing::kDoha, 45.0, 170.0, 2, 0.0, 10.0);
  const Trajectory out = Densify(tr, IngestConfig{});
  ASSERT_EQ(out.points.size(), 10u);  // 2 originals + 8
  EXPECT_EQ(out.points.front().location, tr.points[0].location);
  EXPECT_EQ(out.points.back().location, tr.points[1].location);
  const Heading bearing = InitialBearing(tr.points[0].location, tr.points[1].location);
  for (std::size_t i = 1; i + 1 < out.points.size(); ++i) {
    EXPECT_EQ(*out.points[i].heading, bearing);
    EXPECT_GT(out.points[i].timestamp, out.points[i - 1].timestamp);
    EXPECT_NEAR(VincentyDistance(out.points[i - 1].location, out.points[i].location),
                170.0 / 9.0, 0.05);
  }
}

TEST(DensifyTest, ShortPairUntouched) {
  const Trajectory tr = StraightTrajectory("v", testing::kDoha, 0.0, 15.0, 2);
  EXPECT_EQ(Densify(tr, IngestConfig{}).points.size(), 2u);
}

TEST(DensifyTest, HeadingGateBlocksTurns) {
  Trajectory tr = StraightTrajectory("v", testing::kDoha, 0.0, 500.0, 2);
  tr.points[1].heading = Heading(30.0);
  EXPECT_EQ(Densify(tr, IngestConfig{}).points.size(), 2u);
}

TEST(DensifyTest, LengthGeometryAndIdempotence) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> step(5.0, 400.0);
  std::uniform_real_distribution<double> jitter(-3.0, 3.0);
  const IngestConfig cfg;
  Trajectory tr;
  LatLon p = testing::kDoha;
  double heading = 60.0;
  for (int i = 0; i < 40; ++i) {
    tr.points.push_back(Fix(p, heading, i * 10.0));
    heading += jitter(rng);
    const double d = step(rng);
    const double b = DegToRad(heading);
    p = FromEastNorth(p, {d * std::sin(b), d * std::cos(b)});
  }
  std::size_t expected = tr.points.size();
  for (std::size_t i = 0; i + 1 < tr.points.size(); ++i) {
    const auto& a = tr.points[i];
    const auto& b = tr.points[i + 1];
    if (AngleDistance(*a.heading, *b.heading) < cfg.densify_angle_gate_deg) {
      expected += static_cast<std::size_t>(
          std::floor(VincentyDistance(a.location, b.location) / cfg.densify_spacing_m));
    }
  }
  const Trajectory out = Densify(tr, cfg);
  EXPECT_EQ(out.points.size(), expected);

  // Inserted points stay on the chord of their generating pair.
  std::size_t j = 0;
  for (std::size_t i = 0; i + 1 < tr.points.size(); ++i) {
    ASSERT_EQ(out.points[j].location, tr.points[i].location);
    const LatLon a = tr.points[i].location;
    const EastNorth ab = ToEastNorth(a, tr.points[i + 1].location);
    for (++j; !(out.points[j].location == tr.points[i + 1].location); ++j) {
      const EastNorth q = ToEastNorth(a, out.points[j].location);
      const double cross = std::abs(q.east * ab.north - q.north * ab.east) / std::hypot(ab.east, ab.north);
      EXPECT_LT(cross, 1.0);
    }
  }

  // Already-dense input is a fixed point.
  const Trajectory dense = StraightTrajectory("v", testing::kDoha, 10.0, 19.0, 30);
  const Trajectory again = Densify(dense, cfg);
  ASSERT_EQ(again.points.size(), dense.points.size());
  for (std::size_t i = 0; i < dense.points.size(); ++i) {
    EXPECT_EQ(again.points[i].location, dense.points[i].location);
  }
}

TEST(PreprocessTest, DropsEmptyAndShortTrajectories) {
  Trajectory slow = StraightTrajectory("s", testing::kDoha, 0.0, 1.0, 4, 0.0, 10.0);
  Trajectory single;
  single.vehicle_id = "x";
  GpsPoint lone;
  lone.location = testing::kDoha;
  single.points = {lone};
  const Trajectory ok = StraightTrajectory("o", testing::kDoha, 0.0, 50.0, 4);
  PreprocessStats stats;
  const auto out = Preprocess({slow, single, ok}, IngestConfig{}, &stats);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].vehicle_id, "o");
  EXPECT_EQ(stats.dropped_trajectories, 1u);
  EXPECT_EQ(stats.slow_points_removed, 4u);
}

TEST(IngestConfigTest, RejectsNonPositive) {
  IngestConfig cfg;
  cfg.densify_spacing_m = 0.0;
  EXPECT_THROW(cfg.Validate(), Error);
}

}  // namespace
}  // namespace mapinfer
