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

#include "mapinfer/road_graph.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "mapinfer/error.h"

namespace mapinfer {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double EdgeWeight(const LatLon& a, const LatLon& b) {
  return std::max(VincentyDistance(a, b), kMinEdgeWeightM);
}

int32_t RoadGraph::AddNode(const ClusterCentroid& centroid, bool active) {
  nodes_.push_back({centroid, active});
  out_.emplace_back();
  in_.emplace_back();
  return static_cast<int32_t>(nodes_.size() - 1);
}

std::size_t RoadGraph::AddEdge(const MapEdge& edge) {
  const auto n = static_cast<int32_t>(nodes_.size());
  if (edge.from < 0 || edge.from >= n || edge.to < 0 || edge.to >= n) {
    throw InvalidArgumentError("edge endpoint does not reference an existing node");
  }
  if (edge.from == edge.to) throw InvalidArgumentError("self-loops are not allowed");
  if (!(edge.weight_m > 0.0) || !std::isfinite(edge.weight_m)) {
    throw InvalidArgumentError("edge weight must be positive and finite");
  }
  const std::size_t idx = edges_.size();
  if (!index_.try_emplace(Key(edge.from, edge.to), idx).second) {
    throw InvalidArgumentError("duplicate edge " + std::to_string(edge.from) + "->" +
                               std::to_string(edge.to));
  }
  edges_.push_back(edge);
  out_[edge.from].push_back(idx);
  in_[edge.to].push_back(idx);
  return idx;
}

std::optional<std::size_t> RoadGraph::FindEdge(int32_t from, int32_t to) const {
  auto it = index_.find(Key(from, to));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void RoadGraph::RemoveEdges(const std::vector<bool>& keep) {
  if (keep.size() != edges_.size()) {
    throw InvalidArgumentError("keep mask size does not match the edge count");
  }
  std::vector<MapEdge> kept;
  kept.reserve(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (keep[i]) kept.push_back(edges_[i]);
  }
  edges_ = std::move(kept);
  Reindex();
}

RoadGraph RoadGraph::NodesOnly() const {
  RoadGraph g;
  g.nodes_ = nodes_;
  g.out_.resize(nodes_.size());
  g.in_.resize(nodes_.size());
  return g;
}

std::size_t RoadGraph::num_active_edges() const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [](const MapEdge& e) { return e.active; }));
}

void RoadGraph::Reindex() {
  index_.clear();
  for (auto& v : out_) v.clear();
  for (auto& v : in_) v.clear();
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    index_[Key(edges_[i].from, edges_[i].to)] = i;
    out_[edges_[i].from].push_back(i);
    in_[edges_[i].to].push_back(i);
  }
}

void ShortestPathSearcher::Reset(std::size_t num_nodes) {
  for (int32_t v : touched_) dist_[v] = kInf;
  touched_.clear();
  if (dist_.size() < num_nodes) dist_.resize(num_nodes, kInf);
}

double ShortestPathSearcher::Run(const RoadGraph& graph, int32_t from, int32_t target,
                                 double cutoff) {
  Reset(graph.num_nodes());
  using Item = std::pair<double, int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist_[from] = 0.0;
  touched_.push_back(from);
  heap.push({0.0, from});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist_[u]) continue;
    if (u == target) return d;
    for (std::size_t ei : graph.out_edges(u)) {
      const MapEdge& e = graph.edge(ei);
      if (!e.active) continue;
      const double nd = d + e.weight_m;
      if (nd > cutoff || nd >= dist_[e.to]) continue;
      if (dist_[e.to] == kInf) touched_.push_back(e.to);
      dist_[e.to] = nd;
      heap.push({nd, e.to});
    }
  }
  return target >= 0 ? kInf : 0.0;
}

double ShortestPathSearcher::Distance(const RoadGraph& graph, int32_t from, int32_t to,
                                      double cutoff) {
  if (from == to) return 0.0;
  return Run(graph, from, to, cutoff);
}

const std::vector<double>& ShortestPathSearcher::DistancesWithin(const RoadGraph& graph,
                                                                 int32_t from,
                                                                 double cutoff) {
  Run(graph, from, -1, cutoff);
  return dist_;
}

}  // namespace mapinfer
