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

#ifndef MAPINFER_EVAL_H_
#define MAPINFER_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mapinfer/geo.h"
#include "mapinfer/ingest.h"
#include "mapinfer/road_graph.h"

namespace mapinfer {

struct EvalConfig {
  double sample_spacing_m = 5.0;
  std::vector<double> matching_thresholds_m = {5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
  double topo_radius_m = 2000.0;
  std::size_t topo_samples = 200;
  double start_match_distance_m = 1.0;
  double start_angle_tolerance_deg = 10.0;
  // A truth edge counts as visited when a trajectory point lies within this
  // distance of the segment.
  double prune_distance_m = 30.0;
  std::size_t max_start_draws = 1000;
  uint64_t rng_seed = 0;

  void Validate() const;
};

struct ThresholdScore {
  double threshold_m = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
};

struct EvalReport {
  // One entry per matching threshold, in config order. TOPO entries hold the
  // mean over the samples that found a start pair.
  std::vector<ThresholdScore> geo;
  std::vector<ThresholdScore> topo;
  std::size_t marbles = 0;
  std::size_t holes = 0;
  std::size_t topo_samples_used = 0;
  std::size_t topo_samples_skipped = 0;
  std::size_t truth_edges_pruned = 0;
  bool empty_inferred = false;
  uint64_t seed = 0;
};

// 2pr / (p + r), or 0 when both are 0.
double FScore(double precision, double recall);

// Point on an active edge: the edge is split into ceil(len / spacing) equal
// pieces and a sample is placed at the start of each piece.
struct MapSample {
  LatLon location;
  Heading heading;  // bearing of the edge
  std::size_t edge = 0;
  double fraction = 0.0;  // position along the edge in [0, 1)
};

std::vector<MapSample> SampleMap(const RoadGraph& g, double spacing_m);

// Fills report.geo. Throws InvalidArgument when truth has no active edge; an
// empty inferred map scores 0 and sets empty_inferred.
EvalReport GeoScore(const RoadGraph& inferred, const RoadGraph& truth, const EvalConfig& cfg);

// Removes truth edges that no trajectory point comes within `distance_m` of.
RoadGraph PruneUnvisitedEdges(const RoadGraph& truth,
                              std::span<const Trajectory> trajectories, double distance_m);

// Fills report.topo. Throws Runtime when every sample fails to find a start
// pair.
EvalReport TopoScore(const RoadGraph& inferred, const RoadGraph& truth,
                     std::span<const Trajectory> trajectories, const EvalConfig& cfg);

}  // namespace mapinfer

#endif  // MAPINFER_EVAL_H_
