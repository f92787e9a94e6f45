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

#ifndef MAPINFER_SYNTHETIC_H_
#define MAPINFER_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mapinfer/geo.h"
#include "mapinfer/ingest.h"
#include "mapinfer/road_graph.h"

namespace mapinfer {

// Orthogonal street grid. Each street line is one-way (in a random direction)
// with probability oneway_fraction. Roundabouts replace randomly chosen
// interior intersections with an 8-node ring of radius 20 m.
struct SyntheticWorld {
  int rows = 5;
  int cols = 5;
  double block_m = 100.0;
  double oneway_fraction = 0.0;
  int roundabouts = 0;
  LatLon origin{25.28, 51.50};

  void Validate() const;
};

struct SyntheticConfig {
  SyntheticWorld world;
  std::size_t n_trajectories = 200;
  double noise_sigma_m = 5.0;
  double heading_noise_deg = 5.0;
  double min_spacing_m = 20.0;
  double max_spacing_m = 170.0;
  uint64_t rng_seed = 0;

  void Validate() const;
};

inline constexpr double kArterialSpeedKmh = 70.0;    // one-way streets
inline constexpr double kLocalSpeedKmh = 40.0;       // two-way streets
inline constexpr double kRoundaboutSpeedKmh = 30.0;
inline constexpr double kRoundaboutRadiusM = 20.0;

struct SyntheticData {
  RoadGraph truth;
  std::vector<Trajectory> trajectories;
};

// Truth graph plus one trajectory per random shortest-path route. Each
// trajectory samples its route every `spacing` metres (drawn per trajectory
// from [min_spacing_m, max_spacing_m]) starting at a random offset, then adds
// isotropic Gaussian position noise and Gaussian heading noise. Speeds are
// drawn from 80-100% of the road class speed.
SyntheticData GenerateSynthetic(const SyntheticConfig& cfg);

}  // namespace mapinfer

#endif  // MAPINFER_SYNTHETIC_H_
