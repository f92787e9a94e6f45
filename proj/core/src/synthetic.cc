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

#include "mapinfer/synthetic.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <utility>

#include "mapinfer/error.h"

namespace mapinfer {
namespace {

constexpr double kStartEpoch = 1700000000.0;
constexpr double kTripStaggerS = 600.0;
constexpr int kMaxRouteDraws = 1000;

enum Dir { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3 };

struct World {
  RoadGraph graph;
  std::vector<double> edge_speed_kmh;
};

class WorldBuilder {
 public:
  WorldBuilder(const SyntheticWorld& spec, std::mt19937_64& rng) : spec_(spec), rng_(rng) {}

  World Build() {
    const int rows = spec_.rows;
    const int cols = spec_.cols;
    ring_.assign(static_cast<std::size_t>(rows * cols), {});
    plain_.assign(static_cast<std::size_t>(rows * cols), -1);
    std::vector<char> is_roundabout(static_cast<std::size_t>(rows * cols), 0);
    std::vector<int> interior;
    for (int r = 1; r + 1 < rows; ++r) {
      for (int c = 1; c + 1 < cols; ++c) interior.push_back(r * cols + c);
    }
    std::shuffle(interior.begin(), interior.end(), rng_);
    for (int k = 0; k < spec_.roundabouts; ++k) is_roundabout[interior[k]] = 1;

    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const int cell = r * cols + c;
        const LatLon center = FromEastNorth(spec_.origin, {c * spec_.block_m, r * spec_.block_m});
        if (!is_roundabout[cell]) {
          plain_[cell] = AddNode(center);
          continue;
        }
        for (int k = 0; k < 8; ++k) {
          const double b = DegToRad(45.0 * k);
          ring_[cell][k] = AddNode(FromEastNorth(
              center, {kRoundaboutRadiusM * std::sin(b), kRoundaboutRadiusM * std::cos(b)}));
        }
        // Counterclockwise seen from above: bearing decreases along the ring.
        for (int k = 0; k < 8; ++k) {
          AddEdge(ring_[cell][k], ring_[cell][(k + 7) % 8], kRoundaboutSpeedKmh);
        }
      }
    }

    std::bernoulli_distribution oneway(spec_.oneway_fraction);
    std::bernoulli_distribution coin(0.5);
    auto line_mode = [&]() {
      // 0 = two-way, 1 = forward only, 2 = backward only.
      if (!oneway(rng_)) return 0;
      return coin(rng_) ? 1 : 2;
    };
    for (int r = 0; r < rows; ++r) {
      const int mode = line_mode();
      for (int c = 0; c + 1 < cols; ++c) {
        Connect(Port(r, c, kEast), Port(r, c + 1, kWest), mode);
      }
    }
    for (int c = 0; c < cols; ++c) {
      const int mode = line_mode();
      for (int r = 0; r + 1 < rows; ++r) {
        Connect(Port(r, c, kNorth), Port(r + 1, c, kSouth), mode);
      }
    }
    return std::move(world_);
  }

 private:
  int32_t AddNode(const LatLon& p) {
    ClusterCentroid c;
    c.location = p;
    c.support = 1;
    return world_.graph.AddNode(c);
  }

  void AddEdge(int32_t from, int32_t to, double speed_kmh) {
    MapEdge e;
    e.from = from;
    e.to = to;
    e.weight_m = EdgeWeight(world_.graph.node(from).centroid.location,
                            world_.graph.node(to).centroid.location);
    world_.graph.AddEdge(e);
    world_.edge_speed_kmh.push_back(speed_kmh);
    for (int32_t id : {from, to}) {
      double& m = world_.graph.mutable_node(id).centroid.max_speed_kmh;
      m = std::max(m, speed_kmh);
    }
  }

  void Connect(int32_t a, int32_t b, int mode) {
    const double speed = mode == 0 ? kLocalSpeedKmh : kArterialSpeedKmh;
    if (mode != 2) AddEdge(a, b, speed);
    if (mode != 1) AddEdge(b, a, speed);
  }

  int32_t Port(int r, int c, Dir d) const {
    const int cell = r * spec_.cols + c;
    if (plain_[cell] >= 0) return plain_[cell];
    return ring_[cell][2 * d];
  }

  const SyntheticWorld& spec_;
  std::mt19937_64& rng_;
  World world_;
  std::vector<int32_t> plain_;
  std::vector<std::array<int32_t, 8>> ring_;
};

// Edge indices of a shortest path, or empty when `to` is unreachable.
std::vector<std::size_t> ShortestPath(const RoadGraph& g, int32_t from, int32_t to) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.num_nodes(), inf);
  std::vector<std::size_t> via(g.num_nodes(), 0);
  using Item = std::pair<double, int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[from] = 0.0;
  heap.push({0.0, from});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    if (u == to) break;
    for (std::size_t ei : g.out_edges(u)) {
      const MapEdge& e = g.edge(ei);
      const double nd = d + e.weight_m;
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        via[e.to] = ei;
        heap.push({nd, e.to});
      }
    }
  }
  std::vector<std::size_t> path;
  if (dist[to] == inf) return path;
  for (int32_t v = to; v != from; v = g.edge(via[v]).from) path.push_back(via[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

double RoundMillis(double t) { return std::round(t * 1000.0) / 1000.0; }

}  // namespace

void SyntheticWorld::Validate() const {
  if (rows < 2 || cols < 2) throw InvalidArgumentError("grid needs at least 2 rows and 2 cols");
  if (!(block_m > 2.0 * kRoundaboutRadiusM)) {
    throw InvalidArgumentError("block length must exceed the roundabout diameter");
  }
  if (!(oneway_fraction >= 0.0 && oneway_fraction <= 1.0)) {
    throw InvalidArgumentError("one-way fraction must be in [0, 1]");
  }
  if (roundabouts < 0 || roundabouts > (rows - 2) * (cols - 2)) {
    throw InvalidArgumentError("roundabout count exceeds interior intersections");
  }
  if (!IsValid(origin)) throw InvalidArgumentError("invalid grid origin");
}

void SyntheticConfig::Validate() const {
  world.Validate();
  if (!(noise_sigma_m >= 0.0)) throw InvalidArgumentError("noise sigma must be >= 0");
  if (!(heading_noise_deg >= 0.0)) throw InvalidArgumentError("heading noise must be >= 0");
  if (!(min_spacing_m > 0.0 && max_spacing_m >= min_spacing_m)) {
    throw InvalidArgumentError("spacing range must satisfy 0 < min <= max");
  }
}

SyntheticData GenerateSynthetic(const SyntheticConfig& cfg) {
  cfg.Validate();
  std::mt19937_64 rng(cfg.rng_seed);
  World world = WorldBuilder(cfg.world, rng).Build();
  const RoadGraph& g = world.graph;

  SyntheticData out;
  std::uniform_int_distribution<int32_t> pick_node(0, static_cast<int32_t>(g.num_nodes()) - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> pos_noise(0.0, cfg.noise_sigma_m > 0 ? cfg.noise_sigma_m : 1.0);
  std::normal_distribution<double> hdg_noise(0.0,
                                             cfg.heading_noise_deg > 0 ? cfg.heading_noise_deg : 1.0);

  for (std::size_t i = 0; i < cfg.n_trajectories; ++i) {
    std::vector<std::size_t> path;
    std::vector<double> cum{0.0};
    double spacing = 0.0;
    double offset = 0.0;
    for (int draw = 0;; ++draw) {
      if (draw == kMaxRouteDraws) throw RuntimeError("could not draw a usable route");
      const int32_t a = pick_node(rng);
      const int32_t b = pick_node(rng);
      spacing = cfg.min_spacing_m + (cfg.max_spacing_m - cfg.min_spacing_m) * unit(rng);
      offset = spacing * unit(rng);
      if (a == b) continue;
      path = ShortestPath(g, a, b);
      if (path.empty()) continue;
      cum.assign(1, 0.0);
      for (std::size_t ei : path) cum.push_back(cum.back() + g.edge(ei).weight_m);
      if (cum.back() >= offset + spacing) break;
    }

    std::vector<double> speed(path.size());
    std::vector<double> time_at{kStartEpoch + kTripStaggerS * static_cast<double>(i)};
    for (std::size_t k = 0; k < path.size(); ++k) {
      speed[k] = world.edge_speed_kmh[path[k]] * (0.8 + 0.2 * unit(rng));
      time_at.push_back(time_at.back() + g.edge(path[k]).weight_m / (speed[k] / 3.6));
    }

    Trajectory tr;
    char id[32];
    std::snprintf(id, sizeof(id), "veh%05zu", i);
    tr.vehicle_id = id;
    std::size_t seg = 0;
    for (double s = offset; s <= cum.back(); s += spacing) {
      while (seg + 1 < path.size() && s > cum[seg + 1]) ++seg;
      const MapEdge& e = g.edge(path[seg]);
      const LatLon a = g.node(e.from).centroid.location;
      const LatLon b = g.node(e.to).centroid.location;
      const double len = cum[seg + 1] - cum[seg];
      const double t = len > 0.0 ? std::clamp((s - cum[seg]) / len, 0.0, 1.0) : 0.0;
      GpsPoint p;
      p.location = Interpolate(a, b, t);
      double heading = InitialBearing(a, b).degrees();
      if (cfg.noise_sigma_m > 0.0) {
        const double de = pos_noise(rng);
        const double dn = pos_noise(rng);
        p.location = FromEastNorth(p.location, {de, dn});
      }
      if (cfg.heading_noise_deg > 0.0) heading += hdg_noise(rng);
      p.heading = Heading(heading);
      p.speed_kmh = RoundMillis(speed[seg]);
      p.timestamp = RoundMillis(time_at[seg] + (time_at[seg + 1] - time_at[seg]) * t);
      tr.points.push_back(p);
    }
    out.trajectories.push_back(std::move(tr));
  }
  out.truth = std::move(world.graph);
  return out;
}

}  // namespace mapinfer
