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

#ifndef MAPINFER_ROAD_GRAPH_H_
#define MAPINFER_ROAD_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "mapinfer/clustering.h"
#include "mapinfer/geo.h"

namespace mapinfer {

// Edges shorter than this (coincident centroids of a split cluster) are
// stored with this weight so that all weights stay positive.
inline constexpr double kMinEdgeWeightM = 1e-3;

// Geodesic edge weight between two node locations, clamped below at
// kMinEdgeWeightM.
double EdgeWeight(const LatLon& a, const LatLon& b);

struct MapNode {
  ClusterCentroid centroid;
  bool active = true;
};

struct MapEdge {
  int32_t from = 0;
  int32_t to = 0;
  double weight_m = 0.0;
  std::size_t traj_count = 0;
  double last_seen = 0.0;
  bool active = true;
};

// Directed weighted geometric graph. Node ids are dense indices that never
// change; edge indices are stable until RemoveEdges. No self-loops and at
// most one edge per ordered pair.
class RoadGraph {
 public:
  RoadGraph() = default;

  int32_t AddNode(const ClusterCentroid& centroid, bool active = true);
  // Throws InvalidArgument on self-loops, unknown endpoints, non-positive
  // weights and duplicates. Returns the new edge index.
  std::size_t AddEdge(const MapEdge& edge);

  std::optional<std::size_t> FindEdge(int32_t from, int32_t to) const;
  bool HasEdge(int32_t from, int32_t to) const { return FindEdge(from, to).has_value(); }

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const MapNode& node(int32_t id) const { return nodes_[id]; }
  MapNode& mutable_node(int32_t id) { return nodes_[id]; }
  const MapEdge& edge(std::size_t i) const { return edges_[i]; }
  // Attributes only; endpoints must not be modified through this reference.
  MapEdge& mutable_edge(std::size_t i) { return edges_[i]; }

  std::span<const MapNode> nodes() const { return nodes_; }
  std::span<const MapEdge> edges() const { return edges_; }

  const std::vector<std::size_t>& out_edges(int32_t node) const { return out_[node]; }
  const std::vector<std::size_t>& in_edges(int32_t node) const { return in_[node]; }

  // Removes every edge whose `keep` flag is false; survivors keep their
  // relative order.
  void RemoveEdges(const std::vector<bool>& keep);

  // Copy with the same nodes and no edges.
  RoadGraph NodesOnly() const;

  std::size_t num_active_edges() const;

 private:
  static uint64_t Key(int32_t from, int32_t to) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(from)) << 32) |
           static_cast<uint32_t>(to);
  }
  void Reindex();

  std::vector<MapNode> nodes_;
  std::vector<MapEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::unordered_map<uint64_t, std::size_t> index_;
};

// Reusable bounded Dijkstra. Holds per-node scratch so that repeated queries
// cost only what they touch; the graph may grow between calls.
class ShortestPathSearcher {
 public:
  // Directed distance from `from` to `to` using active edges only, or
  // +infinity if it exceeds `cutoff` (or `to` is unreachable).
  double Distance(const RoadGraph& graph, int32_t from, int32_t to, double cutoff);

  // Distances from `from` to every node within `cutoff`; untouched nodes are
  // +infinity. The returned reference is valid until the next call.
  const std::vector<double>& DistancesWithin(const RoadGraph& graph, int32_t from,
                                             double cutoff);

 private:
  void Reset(std::size_t num_nodes);
  double Run(const RoadGraph& graph, int32_t from, int32_t target, double cutoff);

  std::vector<double> dist_;
  std::vector<int32_t> touched_;
};

}  // namespace mapinfer

#endif  // MAPINFER_ROAD_GRAPH_H_
