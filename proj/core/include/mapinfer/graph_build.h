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

#ifndef MAPINFER_GRAPH_BUILD_H_
#define MAPINFER_GRAPH_BUILD_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mapinfer/clustering.h"
#include "mapinfer/ingest.h"
#include "mapinfer/road_graph.h"
#include "mapinfer/spanner.h"

namespace mapinfer {

// f_e >= max(1, ln(min(f_u, f_v)) - 1), with real-valued threshold.
bool PassesSpuriousEdgeFilter(std::size_t traj_count, std::size_t support_u,
                              std::size_t support_v);

struct CandidateEdgeStats {
  std::size_t distinct_edges = 0;   // before the spurious-edge filter
  std::size_t rejected_spurious = 0;
};

// Maps every trajectory point to its nearest centroid (combined metric, same
// theta as clustering) and records an edge for each consecutive pair of
// distinct centroids. traj_count counts trajectories, not traversals. Edges
// failing the spurious-edge filter are dropped. Edge order is (from, to).
RoadGraph InferCandidateEdges(std::span<const Trajectory> trajectories,
                              std::span<const ClusterCentroid> centroids,
                              const ClusterConfig& cfg,
                              CandidateEdgeStats* stats = nullptr);

// Adds (v, u) for every edge (u, v) whose endpoints both have
// max_speed <= duplex_speed_kmh and whose reverse is absent.
RoadGraph Duplexify(const RoadGraph& g, const SpannerConfig& cfg);

struct StageReport {
  std::string name;
  double seconds = 0.0;
  std::size_t count = 0;  // stage output size (points, nodes or edges)
};

struct PipelineReport {
  std::vector<StageReport> stages;
};

// Preprocess -> densify -> distinct points -> seeds -> k-means -> split ->
// candidate edges -> spanner -> duplexify.
RoadGraph RunOfflinePipeline(const std::vector<Trajectory>& trajectories,
                             const IngestConfig& ingest_cfg,
                             const ClusterConfig& cluster_cfg,
                             const SpannerConfig& spanner_cfg,
                             PipelineReport* report = nullptr);

}  // namespace mapinfer

#endif  // MAPINFER_GRAPH_BUILD_H_
