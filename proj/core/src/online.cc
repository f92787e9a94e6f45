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

#include "mapinfer/online.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mapinfer/error.h"
#include "mapinfer/spanner.h"

namespace mapinfer {
namespace {

bool SameFix(const GpsPoint& a, const GpsPoint& b) {
  return a.timestamp == b.timestamp && a.location == b.location;
}

}  // namespace

void OnlineConfig::Validate() const {
  if (!(clustering_radius_m > 0.0)) throw InvalidArgumentError("cr must be positive");
  if (!(sampling_rate_m > 0.0)) throw InvalidArgumentError("sr must be positive");
  if (!(heading_tolerance_deg > 0.0 && heading_tolerance_deg <= 180.0)) {
    throw InvalidArgumentError("ha must be in (0, 180]");
  }
  if (!(alpha > 1.0)) throw InvalidArgumentError("alpha must be > 1");
  if (!(staleness_horizon_s > 0.0)) throw InvalidArgumentError("staleness horizon must be positive");
  if (resparsify_interval == 0) throw InvalidArgumentError("resparsify interval must be positive");
}

std::vector<GpsPoint> DensifyPair(const GpsPoint& a, const GpsPoint& b, double sr) {
  const double d = VincentyDistance(a.location, b.location);
  const std::size_t steps =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(d / sr)));
  std::optional<Heading> bearing;
  if (!(a.location == b.location)) bearing = InitialBearing(a.location, b.location);
  const double dt = b.timestamp - a.timestamp;
  const std::optional<double> seg_speed =
      dt > 0.0 ? std::optional<double>(d / dt * 3.6) : std::nullopt;

  std::vector<GpsPoint> out;
  out.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(steps);
    GpsPoint p;
    if (k == 0) {
      p = a;
    } else if (k == steps) {
      p = b;
    } else {
      p.location = Interpolate(a.location, b.location, t);
      p.timestamp = a.timestamp + dt * t;
      p.heading = bearing;
      if (a.speed_kmh && b.speed_kmh) {
        p.speed_kmh = *a.speed_kmh + (*b.speed_kmh - *a.speed_kmh) * t;
      }
    }
    if (!p.heading) p.heading = bearing ? *bearing : a.heading.value_or(Heading(0.0));
    if (!p.speed_kmh) p.speed_kmh = seg_speed;
    out.push_back(p);
  }
  return out;
}

StreamState::StreamState(const OnlineConfig& cfg)
    : cfg_(cfg), grid_(cfg.clustering_radius_m * 2.0) {
  cfg_.Validate();
}

int32_t StreamState::prev_node(const std::string& vehicle_id) const {
  auto it = vehicles_.find(vehicle_id);
  return it == vehicles_.end() ? -1 : it->second.node;
}

void StreamState::ResetVehicle(const std::string& vehicle_id) { vehicles_.erase(vehicle_id); }

int32_t StreamState::FindNode(const LatLon& location, Heading heading) const {
  const double radius = cfg_.clustering_radius_m * (1.0 - kRadiusSlack);
  int32_t best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  grid_.ForEachCandidate(location, cfg_.clustering_radius_m, [&](int32_t id) {
    const ClusterCentroid& c = graph_.node(id).centroid;
    if (AngleDistance(c.heading, heading) > cfg_.heading_tolerance_deg) return;
    const double d = VincentyDistance(location, c.location);
    if (d < best_d || (d == best_d && id < best)) {
      best_d = d;
      best = id;
    }
  });
  return best_d < radius ? best : -1;
}

int32_t StreamState::CreateNode(const GpsPoint& p) {
  ClusterCentroid c;
  c.location = p.location;
  c.heading = *p.heading;
  c.support = 1;
  c.max_speed_kmh = p.speed_kmh.value_or(0.0);
  c.last_seen = p.timestamp;
  const int32_t id = graph_.AddNode(c);
  const double r = DegToRad(c.heading.degrees());
  sums_.push_back({p.location.lat, p.location.lon, std::sin(r), std::cos(r)});
  grid_.Insert(id, p.location);
  return id;
}

void StreamState::AssignToNode(int32_t id, const GpsPoint& p) {
  NodeSums& s = sums_[id];
  MapNode& node = graph_.mutable_node(id);
  ClusterCentroid& c = node.centroid;
  const LatLon old_location = c.location;

  const double r = DegToRad(p.heading->degrees());
  s.sum_lat += p.location.lat;
  s.sum_lon += p.location.lon;
  s.sum_sin += std::sin(r);
  s.sum_cos += std::cos(r);
  c.support += 1;
  const double n = static_cast<double>(c.support);
  c.location = {s.sum_lat / n, s.sum_lon / n};
  if (std::abs(s.sum_sin) > 1e-12 || std::abs(s.sum_cos) > 1e-12) {
    c.heading = Heading(RadToDeg(std::atan2(s.sum_sin, s.sum_cos)));
  }
  // Running approximation: each member's deviation is taken against the mean
  // at the time it joined.
  c.heading_var = (c.heading_var * (n - 1.0) + AngleDistance(*p.heading, c.heading)) / n;
  c.max_speed_kmh = std::max(c.max_speed_kmh, p.speed_kmh.value_or(0.0));
  c.last_seen = std::max(c.last_seen, p.timestamp);
  node.active = true;

  grid_.Move(id, old_location, c.location);
  for (std::size_t ei : graph_.out_edges(id)) {
    MapEdge& e = graph_.mutable_edge(ei);
    e.weight_m = EdgeWeight(c.location, graph_.node(e.to).centroid.location);
  }
  for (std::size_t ei : graph_.in_edges(id)) {
    MapEdge& e = graph_.mutable_edge(ei);
    e.weight_m = EdgeWeight(graph_.node(e.from).centroid.location, c.location);
  }
}

void StreamState::LinkNodes(int32_t prev, int32_t cur, const LatLon& prev_point,
                            const GpsPoint& cur_point) {
  if (prev == cur) return;
  if (auto existing = graph_.FindEdge(prev, cur)) {
    MapEdge& e = graph_.mutable_edge(*existing);
    e.traj_count += 1;
    e.last_seen = std::max(e.last_seen, cur_point.timestamp);
    e.active = true;
    return;
  }
  const ClusterCentroid& from = graph_.node(prev).centroid;
  const ClusterCentroid& to = graph_.node(cur).centroid;
  if (AngleDistance(from.heading, to.heading) > cfg_.heading_tolerance_deg) return;
  if (!(prev_point == cur_point.location)) {
    const Heading travel = InitialBearing(prev_point, cur_point.location);
    if (AngleDistance(from.heading, travel) > cfg_.heading_tolerance_deg) return;
  }
  const double w = EdgeWeight(from.location, to.location);
  const double bound = cfg_.alpha * w + kSpannerSlackM;
  if (searcher_.Distance(graph_, prev, cur, bound) <= bound) return;

  MapEdge e;
  e.from = prev;
  e.to = cur;
  e.weight_m = w;
  e.traj_count = 1;
  e.last_seen = cur_point.timestamp;
  graph_.AddEdge(e);
}

void StreamState::ProcessPair(const std::string& vehicle_id, const GpsPoint& a,
                              const GpsPoint& b) {
  const std::vector<GpsPoint> points = DensifyPair(a, b, cfg_.sampling_rate_m);
  auto [it, inserted] = vehicles_.try_emplace(vehicle_id);
  VehicleState& vs = it->second;
  const bool continues = !inserted && vs.node >= 0 && SameFix(vs.last_point, a);

  int32_t prev = continues ? vs.node : -1;
  LatLon prev_location = a.location;
  for (std::size_t k = continues ? 1 : 0; k < points.size(); ++k) {
    const GpsPoint& p = points[k];
    int32_t node = FindNode(p.location, *p.heading);
    if (node < 0) {
      node = CreateNode(p);
    } else {
      AssignToNode(node, p);
    }
    if (prev >= 0) LinkNodes(prev, node, prev_location, p);
    prev = node;
    prev_location = p.location;
  }
  vs.node = prev;
  vs.last_point = b;
  ++pairs_processed_;
}

void StreamState::MarkStale(double now) {
  auto horizon = [&](std::size_t traffic) {
    return horizon_hook_ ? horizon_hook_(static_cast<int64_t>(traffic))
                         : cfg_.staleness_horizon_s;
  };
  for (std::size_t i = 0; i < graph_.num_nodes(); ++i) {
    MapNode& n = graph_.mutable_node(static_cast<int32_t>(i));
    if (n.centroid.last_seen < now - horizon(n.centroid.support)) n.active = false;
  }
  for (std::size_t i = 0; i < graph_.num_edges(); ++i) {
    MapEdge& e = graph_.mutable_edge(i);
    if (e.last_seen < now - horizon(e.traj_count)) e.active = false;
  }
}

std::size_t StreamState::Resparsify() {
  const std::vector<bool> keep = GreedySpannerKeepMask(graph_, cfg_.alpha);
  const auto removed = static_cast<std::size_t>(std::count(keep.begin(), keep.end(), false));
  if (removed > 0) graph_.RemoveEdges(keep);
  return removed;
}

OnlineRunner::OnlineRunner(const OnlineConfig& cfg, double min_speed_kmh,
                           double new_trajectory_gap_s)
    : state_(cfg), min_speed_kmh_(min_speed_kmh), gap_s_(new_trajectory_gap_s) {}

void OnlineRunner::Observe(const std::string& vehicle_id, const GpsPoint& point) {
  latest_ = std::max(latest_, point.timestamp);
  auto it = last_.find(vehicle_id);
  if (it == last_.end()) {
    if (point.speed_kmh && *point.speed_kmh <= min_speed_kmh_) {
      ++dropped_slow_;
      return;
    }
    last_.emplace(vehicle_id, point);
    return;
  }
  GpsPoint& prev = it->second;
  const double dt = point.timestamp - prev.timestamp;
  if (dt <= 0.0) return;
  if (dt > gap_s_) {
    state_.ResetVehicle(vehicle_id);
    prev = point;
    return;
  }
  const double speed = point.speed_kmh.value_or(
      VincentyDistance(prev.location, point.location) / dt * 3.6);
  if (speed <= min_speed_kmh_) {
    ++dropped_slow_;
    return;
  }
  state_.ProcessPair(vehicle_id, prev, point);
  prev = point;
  if (state_.pairs_processed() % state_.config().resparsify_interval == 0) {
    state_.MarkStale(latest_);
    state_.Resparsify();
  }
}

void OnlineRunner::Finish() {
  if (std::isfinite(latest_)) state_.MarkStale(latest_);
}

}  // namespace mapinfer
