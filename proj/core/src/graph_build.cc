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

#include "mapinfer/graph_build.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>

namespace mapinfer {
namespace {

struct EdgeTally {
  std::size_t traj_count = 0;
  double last_seen = 0.0;
};

class StageTimer {
 public:
  explicit StageTimer(PipelineReport* report) : report_(report) {}

  void Finish(const std::string& name, std::size_t count) {
    const auto now = std::chrono::steady_clock::now();
    if (report_ != nullptr) {
      report_->stages.push_back(
          {name, std::chrono::duration<double>(now - start_).count(), count});
    }
    start_ = now;
  }

 private:
  PipelineReport* report_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

bool PassesSpuriousEdgeFilter(std::size_t traj_count, std::size_t support_u,
                              std::size_t support_v) {
  const double min_support = static_cast<double>(std::min(support_u, support_v));
  const double threshold = std::max(1.0, std::log(min_support) - 1.0);
  return static_cast<double>(traj_count) >= threshold;
}

RoadGraph InferCandidateEdges(std::span<const Trajectory> trajectories,
                              std::span<const ClusterCentroid> centroids,
                              const ClusterConfig& cfg, CandidateEdgeStats* stats) {
  RoadGraph g;
  for (const auto& c : centroids) g.AddNode(c);
  if (centroids.empty()) return g;

  CentroidIndex index(centroids, cfg.theta_m, cfg.seed_radius_m + cfg.theta_m);
  std::map<std::pair<int32_t, int32_t>, EdgeTally> tally;
  std::set<std::pair<int32_t, int32_t>> seen_in_trajectory;
  for (const auto& tr : trajectories) {
    seen_in_trajectory.clear();
    int32_t prev = -1;
    for (const auto& p : tr.points) {
      if (!p.heading) continue;
      const int32_t cur = index.Nearest({p.location, *p.heading}).first;
      if (prev >= 0 && cur != prev) {
        const auto key = std::make_pair(prev, cur);
        EdgeTally& t = tally[key];
        if (seen_in_trajectory.insert(key).second) ++t.traj_count;
        t.last_seen = std::max(t.last_seen, p.timestamp);
      }
      prev = cur;
    }
  }

  CandidateEdgeStats local;
  local.distinct_edges = tally.size();
  for (const auto& [key, t] : tally) {
    const auto [u, v] = key;
    if (!PassesSpuriousEdgeFilter(t.traj_count, centroids[u].support, centroids[v].support)) {
      ++local.rejected_spurious;
      continue;
    }
    MapEdge e;
    e.from = u;
    e.to = v;
    e.weight_m = EdgeWeight(centroids[u].location, centroids[v].location);
    e.traj_count = t.traj_count;
    e.last_seen = t.last_seen;
    g.AddEdge(e);
  }
  if (stats != nullptr) *stats = local;
  return g;
}

RoadGraph Duplexify(const RoadGraph& g, const SpannerConfig& cfg) {
  RoadGraph out = g;
  const std::size_t original = g.num_edges();
  for (std::size_t i = 0; i < original; ++i) {
    const MapEdge& e = g.edge(i);
    const double top_speed = std::max(g.node(e.from).centroid.max_speed_kmh,
                                      g.node(e.to).centroid.max_speed_kmh);
    if (top_speed > cfg.duplex_speed_kmh || out.HasEdge(e.to, e.from)) continue;
    MapEdge rev = e;
    std::swap(rev.from, rev.to);
    rev.traj_count = 0;
    out.AddEdge(rev);
  }
  return out;
}

RoadGraph RunOfflinePipeline(const std::vector<Trajectory>& trajectories,
                             const IngestConfig& ingest_cfg,
                             const ClusterConfig& cluster_cfg,
                             const SpannerConfig& spanner_cfg, PipelineReport* report) {
  ingest_cfg.Validate();
  cluster_cfg.Validate();
  spanner_cfg.Validate();
  StageTimer timer(report);

  const std::vector<Trajectory> prepared = Preprocess(trajectories, ingest_cfg);
  std::size_t prepared_points = 0;
  for (const auto& tr : prepared) prepared_points += tr.points.size();
  timer.Finish("preprocess", prepared_points);

  std::vector<Trajectory> densified;
  densified.reserve(prepared.size());
  std::size_t densified_points = 0;
  for (const auto& tr : prepared) {
    densified.push_back(Densify(tr, ingest_cfg));
    densified_points += densified.back().points.size();
  }
  timer.Finish("densify", densified_points);

  const std::vector<GpsPoint> points = DistinctPoints(densified);
  timer.Finish("distinct_points", points.size());
  if (points.empty()) return RoadGraph();

  std::vector<ClusterCentroid> seeds = SelectSeeds(points, cluster_cfg);
  timer.Finish("select_seeds", seeds.size());

  ClusteringResult clusters = KMeans(points, std::move(seeds), cluster_cfg);
  timer.Finish("kmeans", clusters.centroids.size());

  clusters = SplitHeterogeneous(points, std::move(clusters), cluster_cfg);
  timer.Finish("split", clusters.centroids.size());

  RoadGraph candidates = InferCandidateEdges(densified, clusters.centroids, cluster_cfg);
  timer.Finish("candidate_edges", candidates.num_edges());

  RoadGraph spanner = GreedySpanner(candidates, spanner_cfg);
  timer.Finish("spanner", spanner.num_edges());

  RoadGraph map = Duplexify(spanner, spanner_cfg);
  timer.Finish("duplexify", map.num_edges());
  return map;
}

}  // namespace mapinfer
