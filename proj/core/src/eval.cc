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

#include "mapinfer/eval.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include "mapinfer/error.h"
#include "mapinfer/spatial_grid.h"

namespace mapinfer {
namespace {

struct Neighbour {
  int32_t id;
  double distance_m;
};

// For each query sample, the targets within `radius_m` sorted by distance
// (ties by id).
std::vector<std::vector<Neighbour>> NeighbourLists(const std::vector<MapSample>& queries,
                                                   const std::vector<MapSample>& targets,
                                                   double radius_m) {
  std::vector<std::vector<Neighbour>> out(queries.size());
  if (targets.empty()) return out;
  SpatialGrid grid(std::max(radius_m, 1.0), targets.front().location.lat);
  for (std::size_t j = 0; j < targets.size(); ++j) {
    grid.Insert(static_cast<int32_t>(j), targets[j].location);
  }
  for (std::size_t i = 0; i < queries.size(); ++i) {
    auto& list = out[i];
    grid.ForEachCandidate(queries[i].location, radius_m, [&](int32_t j) {
      const double d = VincentyDistance(queries[i].location, targets[j].location);
      if (d <= radius_m) list.push_back({j, d});
    });
    std::sort(list.begin(), list.end(), [](const Neighbour& a, const Neighbour& b) {
      return a.distance_m != b.distance_m ? a.distance_m < b.distance_m : a.id < b.id;
    });
  }
  return out;
}

// Distance to the nearest target with `allowed[id]` set, or +infinity.
double NearestAllowed(const std::vector<Neighbour>& list, const std::vector<char>& allowed) {
  for (const Neighbour& n : list) {
    if (allowed[n.id]) return n.distance_m;
  }
  return std::numeric_limits<double>::infinity();
}

double MaxThreshold(const EvalConfig& cfg) {
  return *std::max_element(cfg.matching_thresholds_m.begin(), cfg.matching_thresholds_m.end());
}

// Fraction of `members` whose nearest allowed counterpart is within t.
double MatchedFraction(const std::vector<double>& nearest, double t) {
  if (nearest.empty()) return 0.0;
  const auto hits = std::count_if(nearest.begin(), nearest.end(),
                                  [t](double d) { return d <= t; });
  return static_cast<double>(hits) / static_cast<double>(nearest.size());
}

// Samples reachable from a start sample within `radius_m` of directed graph
// distance, as a mask over `samples`.
class Reachability {
 public:
  Reachability(const RoadGraph& g, const std::vector<MapSample>& samples)
      : g_(g), samples_(samples) {}

  std::vector<char> From(const MapSample& start, double radius_m) {
    std::vector<char> mask(samples_.size(), 0);
    const MapEdge& e = g_.edge(start.edge);
    const double rest = (1.0 - start.fraction) * e.weight_m;
    const std::vector<double>* dist = nullptr;
    if (rest <= radius_m) dist = &searcher_.DistancesWithin(g_, e.to, radius_m - rest);
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      const MapSample& s = samples_[i];
      if (s.edge == start.edge && s.fraction >= start.fraction &&
          (s.fraction - start.fraction) * e.weight_m <= radius_m) {
        mask[i] = 1;
        continue;
      }
      if (dist == nullptr) continue;
      const MapEdge& f = g_.edge(s.edge);
      const double d = rest + (*dist)[f.from] + s.fraction * f.weight_m;
      if (d <= radius_m) mask[i] = 1;
    }
    return mask;
  }

 private:
  const RoadGraph& g_;
  const std::vector<MapSample>& samples_;
  ShortestPathSearcher searcher_;
};

}  // namespace

void EvalConfig::Validate() const {
  if (!(sample_spacing_m > 0.0)) throw InvalidArgumentError("sample spacing must be positive");
  if (matching_thresholds_m.empty()) throw InvalidArgumentError("no matching thresholds");
  for (double t : matching_thresholds_m) {
    if (!(t > 0.0)) throw InvalidArgumentError("matching thresholds must be positive");
  }
  if (!(topo_radius_m > 0.0)) throw InvalidArgumentError("topo radius must be positive");
  if (topo_samples == 0) throw InvalidArgumentError("topo samples must be positive");
  if (!(start_match_distance_m > 0.0)) {
    throw InvalidArgumentError("start match distance must be positive");
  }
  if (!(start_angle_tolerance_deg > 0.0)) {
    throw InvalidArgumentError("start angle tolerance must be positive");
  }
  if (!(prune_distance_m > 0.0)) throw InvalidArgumentError("prune distance must be positive");
  if (max_start_draws == 0) throw InvalidArgumentError("max start draws must be positive");
}

double FScore(double precision, double recall) {
  const double s = precision + recall;
  return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
}

std::vector<MapSample> SampleMap(const RoadGraph& g, double spacing_m) {
  std::vector<MapSample> out;
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const MapEdge& e = g.edge(i);
    if (!e.active) continue;
    const ClusterCentroid& a = g.node(e.from).centroid;
    const ClusterCentroid& b = g.node(e.to).centroid;
    const double len = VincentyDistance(a.location, b.location);
    const Heading bearing =
        a.location == b.location ? a.heading : InitialBearing(a.location, b.location);
    const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / spacing_m)));
    for (std::size_t k = 0; k < n; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(n);
      out.push_back({Interpolate(a.location, b.location, t), bearing, i, t});
    }
  }
  return out;
}

EvalReport GeoScore(const RoadGraph& inferred, const RoadGraph& truth, const EvalConfig& cfg) {
  cfg.Validate();
  const std::vector<MapSample> holes = SampleMap(truth, cfg.sample_spacing_m);
  if (holes.empty()) throw InvalidArgumentError("ground-truth map has no active edges");
  const std::vector<MapSample> marbles = SampleMap(inferred, cfg.sample_spacing_m);

  EvalReport report;
  report.seed = cfg.rng_seed;
  report.marbles = marbles.size();
  report.holes = holes.size();
  report.empty_inferred = marbles.empty();

  const double tmax = MaxThreshold(cfg);
  const auto marble_lists = NeighbourLists(marbles, holes, tmax);
  const auto hole_lists = NeighbourLists(holes, marbles, tmax);
  std::vector<double> marble_nearest(marbles.size());
  std::vector<double> hole_nearest(holes.size());
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < marbles.size(); ++i) {
    marble_nearest[i] = marble_lists[i].empty() ? inf : marble_lists[i].front().distance_m;
  }
  for (std::size_t j = 0; j < holes.size(); ++j) {
    hole_nearest[j] = hole_lists[j].empty() ? inf : hole_lists[j].front().distance_m;
  }
  for (double t : cfg.matching_thresholds_m) {
    ThresholdScore s;
    s.threshold_m = t;
    s.precision = MatchedFraction(marble_nearest, t);
    s.recall = report.empty_inferred ? 0.0 : MatchedFraction(hole_nearest, t);
    s.f_score = FScore(s.precision, s.recall);
    report.geo.push_back(s);
  }
  return report;
}

RoadGraph PruneUnvisitedEdges(const RoadGraph& truth,
                              std::span<const Trajectory> trajectories, double distance_m) {
  std::vector<LatLon> points;
  for (const Trajectory& tr : trajectories) {
    for (const GpsPoint& p : tr.points) points.push_back(p.location);
  }
  RoadGraph out = truth;
  if (truth.num_edges() == 0) return out;
  SpatialGrid grid(std::max(distance_m, 1.0),
                   points.empty() ? 0.0 : points.front().lat);
  for (std::size_t i = 0; i < points.size(); ++i) grid.Insert(static_cast<int32_t>(i), points[i]);

  std::vector<bool> keep(truth.num_edges(), false);
  for (std::size_t i = 0; i < truth.num_edges(); ++i) {
    const MapEdge& e = truth.edge(i);
    const LatLon a = truth.node(e.from).centroid.location;
    const LatLon b = truth.node(e.to).centroid.location;
    const EastNorth ab = ToEastNorth(a, b);
    const double len2 = ab.east * ab.east + ab.north * ab.north;
    const double half = std::sqrt(len2) / 2.0;
    const LatLon mid = Interpolate(a, b, 0.5);
    bool visited = false;
    grid.ForEachCandidate(mid, half + distance_m + 1.0, [&](int32_t id) {
      if (visited) return;
      const EastNorth p = ToEastNorth(a, points[id]);
      double t = len2 > 0.0 ? (p.east * ab.east + p.north * ab.north) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const double dx = p.east - t * ab.east;
      const double dy = p.north - t * ab.north;
      if (std::hypot(dx, dy) <= distance_m) visited = true;
    });
    keep[i] = visited;
  }
  out.RemoveEdges(keep);
  return out;
}

EvalReport TopoScore(const RoadGraph& inferred, const RoadGraph& truth,
                     std::span<const Trajectory> trajectories, const EvalConfig& cfg) {
  cfg.Validate();
  const RoadGraph pruned = PruneUnvisitedEdges(truth, trajectories, cfg.prune_distance_m);
  const std::vector<MapSample> holes = SampleMap(pruned, cfg.sample_spacing_m);
  if (holes.empty()) {
    throw InvalidArgumentError("ground-truth map has no visited active edges");
  }
  const std::vector<MapSample> marbles = SampleMap(inferred, cfg.sample_spacing_m);

  EvalReport report;
  report.seed = cfg.rng_seed;
  report.marbles = marbles.size();
  report.holes = holes.size();
  report.truth_edges_pruned = truth.num_edges() - pruned.num_edges();
  report.empty_inferred = marbles.empty();
  std::vector<ThresholdScore> sums(cfg.matching_thresholds_m.size());
  for (std::size_t k = 0; k < sums.size(); ++k) sums[k].threshold_m = cfg.matching_thresholds_m[k];
  if (report.empty_inferred) {
    report.topo = sums;
    report.topo_samples_skipped = cfg.topo_samples;
    return report;
  }

  const double tmax = MaxThreshold(cfg);
  const auto marble_lists = NeighbourLists(marbles, holes, tmax);
  const auto hole_lists = NeighbourLists(holes, marbles, tmax);
  const auto start_lists = NeighbourLists(marbles, holes, cfg.start_match_distance_m);
  Reachability marble_reach(inferred, marbles);
  Reachability hole_reach(pruned, holes);

  std::vector<double> marble_nearest;
  std::vector<double> hole_nearest;
  for (std::size_t sample = 0; sample < cfg.topo_samples; ++sample) {
    std::seed_seq seq{static_cast<uint32_t>(cfg.rng_seed), static_cast<uint32_t>(cfg.rng_seed >> 32),
                      static_cast<uint32_t>(sample)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::size_t> pick(0, marbles.size() - 1);
    int32_t start_marble = -1;
    int32_t start_hole = -1;
    for (std::size_t draw = 0; draw < cfg.max_start_draws && start_hole < 0; ++draw) {
      const std::size_t m = pick(rng);
      for (const Neighbour& n : start_lists[m]) {
        if (AngleDistance(marbles[m].heading, holes[n.id].heading) <=
            cfg.start_angle_tolerance_deg) {
          start_marble = static_cast<int32_t>(m);
          start_hole = n.id;
          break;
        }
      }
    }
    if (start_hole < 0) {
      ++report.topo_samples_skipped;
      continue;
    }
    ++report.topo_samples_used;

    const std::vector<char> m_mask = marble_reach.From(marbles[start_marble], cfg.topo_radius_m);
    const std::vector<char> h_mask = hole_reach.From(holes[start_hole], cfg.topo_radius_m);
    marble_nearest.clear();
    hole_nearest.clear();
    for (std::size_t i = 0; i < marbles.size(); ++i) {
      if (m_mask[i]) marble_nearest.push_back(NearestAllowed(marble_lists[i], h_mask));
    }
    for (std::size_t j = 0; j < holes.size(); ++j) {
      if (h_mask[j]) hole_nearest.push_back(NearestAllowed(hole_lists[j], m_mask));
    }
    for (std::size_t k = 0; k < sums.size(); ++k) {
      const double p = MatchedFraction(marble_nearest, sums[k].threshold_m);
      const double r = MatchedFraction(hole_nearest, sums[k].threshold_m);
      sums[k].precision += p;
      sums[k].recall += r;
      sums[k].f_score += FScore(p, r);
    }
  }
  if (report.topo_samples_used == 0) {
    throw RuntimeError("no TOPO sample found a matching start pair");
  }
  const double n = static_cast<double>(report.topo_samples_used);
  for (ThresholdScore& s : sums) {
    s.precision /= n;
    s.recall /= n;
    s.f_score /= n;
  }
  report.topo = sums;
  return report;
}

}  // namespace mapinfer
