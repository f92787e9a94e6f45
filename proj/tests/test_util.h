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

// Shared fixtures and brute-force oracles for the unit tests.

#ifndef MAPINFER_TESTS_TEST_UTIL_H_
#define MAPINFER_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "mapinfer/geo.h"
#include "mapinfer/ingest.h"
#include "mapinfer/road_graph.h"

namespace mapinfer::testing {

inline constexpr LatLon kDoha{25.28, 51.50};

inline GpsPoint Fix(LatLon p, double heading, double t, double speed = 36.0) {
  GpsPoint g;
  g.location = p;
  g.heading = Heading(heading);
  g.timestamp = t;
  g.speed_kmh = speed;
  return g;
}

// Noiseless trajectory starting at `start` moving along `bearing` with fixes
// every `spacing_m`, `n` fixes, one fix every `dt` seconds.
inline Trajectory StraightTrajectory(const std::string& id, LatLon start, double bearing_deg,
                                     double spacing_m, std::size_t n, double t0 = 1000.0,
                                     double dt = 2.0) {
  Trajectory tr;
  tr.vehicle_id = id;
  const double b = DegToRad(bearing_deg);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = spacing_m * static_cast<double>(i);
    const LatLon p = FromEastNorth(start, {d * std::sin(b), d * std::cos(b)});
    tr.points.push_back(Fix(p, bearing_deg, t0 + dt * static_cast<double>(i),
                            spacing_m / dt * 3.6));
  }
  return tr;
}

inline ClusterCentroid NodeAt(LatLon p, double heading = 0.0, double max_speed = 30.0) {
  ClusterCentroid c;
  c.location = p;
  c.heading = Heading(heading);
  c.support = 1;
  c.max_speed_kmh = max_speed;
  return c;
}

// Floyd-Warshall over active edges using stored weights.
inline std::vector<std::vector<double>> AllPairs(const RoadGraph& g) {
  const std::size_t n = g.num_nodes();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const MapEdge& e : g.edges()) {
    if (e.active) d[e.from][e.to] = std::min(d[e.from][e.to], e.weight_m);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] == inf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }
  return d;
}

// Grid-search minimiser of sum(1 - cos(h - m)) over m in 0.1 degree steps.
inline double BruteForceCircularMean(const std::vector<double>& headings) {
  double best_m = 0.0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3600; ++k) {
    const double m = 0.1 * k;
    double cost = 0.0;
    for (double h : headings) cost += 1.0 - std::cos((h - m) * M_PI / 180.0);
    if (cost < best_cost) {
      best_cost = cost;
      best_m = m;
    }
  }
  return best_m;
}

}  // namespace mapinfer::testing

#endif  // MAPINFER_TESTS_TEST_UTIL_H_
