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

#ifndef MAPINFER_ONLINE_H_
#define MAPINFER_ONLINE_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mapinfer/geo.h"
#include "mapinfer/road_graph.h"
#include "mapinfer/spatial_grid.h"

namespace mapinfer {

struct OnlineConfig {
  double clustering_radius_m = 20.0;     // cr
  double sampling_rate_m = 20.0;         // sr
  double heading_tolerance_deg = 45.0;   // ha
  double alpha = std::sqrt(2.0);
  double staleness_horizon_s = 7.0 * 86400.0;
  std::size_t resparsify_interval = 100000;  // pairs

  void Validate() const;
};

// Incremental map state for streaming inference. All mutation goes through
// one writer; copies are independent snapshots.
class StreamState {
 public:
  explicit StreamState(const OnlineConfig& cfg);

  // Consumes one pair of consecutive fixes from `vehicle_id`. When `a` is the
  // vehicle's previous `b`, the pair continues the vehicle's trajectory;
  // otherwise the pair starts a new one (no edge into its first point).
  void ProcessPair(const std::string& vehicle_id, const GpsPoint& a, const GpsPoint& b);

  // Marks nodes and edges not seen since `now - staleness_horizon_s` as
  // inactive. Reactivation happens when a later point or traversal hits them.
  void MarkStale(double now);

  // Re-runs the greedy spanner over active edges and deletes the rejects.
  // Returns the number of edges removed.
  std::size_t Resparsify();

  // Optional per-element horizon as a function of prior traffic (node
  // support or edge traj_count). When unset, staleness_horizon_s applies.
  using HorizonHook = std::function<double(int64_t traffic)>;
  void set_horizon_hook(HorizonHook hook) { horizon_hook_ = std::move(hook); }

  // Forgets the vehicle's previous node so its next pair starts fresh.
  void ResetVehicle(const std::string& vehicle_id);

  const RoadGraph& graph() const { return graph_; }
  std::size_t pairs_processed() const { return pairs_processed_; }
  const OnlineConfig& config() const { return cfg_; }
  // Previous node of a vehicle, or -1.
  int32_t prev_node(const std::string& vehicle_id) const;

 private:
  struct NodeSums {
    double sum_lat = 0.0;
    double sum_lon = 0.0;
    double sum_sin = 0.0;
    double sum_cos = 0.0;
  };
  struct VehicleState {
    int32_t node = -1;
    GpsPoint last_point;
  };

  // Nearest node whose heading is within ha of `heading`, if it lies within
  // cr. Returns -1 otherwise.
  int32_t FindNode(const LatLon& location, Heading heading) const;
  int32_t CreateNode(const GpsPoint& p);
  void AssignToNode(int32_t node, const GpsPoint& p);
  void LinkNodes(int32_t prev, int32_t cur, const LatLon& prev_point,
                 const GpsPoint& cur_point);

  OnlineConfig cfg_;
  RoadGraph graph_;
  std::vector<NodeSums> sums_;
  SpatialGrid grid_;
  std::unordered_map<std::string, VehicleState> vehicles_;
  std::size_t pairs_processed_ = 0;
  ShortestPathSearcher searcher_;
  HorizonHook horizon_hook_;
};

// Splits the segment a->b into floor(d / sr) equal steps (at least one), so
// consecutive points are between sr and 2 sr apart when d >= sr. Both
// endpoints are included. Missing headings and speeds are taken from the
// segment.
std::vector<GpsPoint> DensifyPair(const GpsPoint& a, const GpsPoint& b, double sr);

// Drives a StreamState from arrival-ordered records: forms per-vehicle pairs,
// restarts a vehicle after a gap, drops slow fixes and resparsifies every
// resparsify_interval pairs.
class OnlineRunner {
 public:
  OnlineRunner(const OnlineConfig& cfg, double min_speed_kmh, double new_trajectory_gap_s);

  void Observe(const std::string& vehicle_id, const GpsPoint& point);
  // Final stale marking at the latest observed time. Resparsification only
  // happens on the pair interval.
  void Finish();

  const StreamState& state() const { return state_; }
  double latest_timestamp() const { return latest_; }
  std::size_t dropped_slow() const { return dropped_slow_; }

 private:
  StreamState state_;
  double min_speed_kmh_;
  double gap_s_;
  double latest_ = -INFINITY;
  std::size_t dropped_slow_ = 0;
  std::unordered_map<std::string, GpsPoint> last_;
};

}  // namespace mapinfer

#endif  // MAPINFER_ONLINE_H_
