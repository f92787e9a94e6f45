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

#include "mapinfer/clustering.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "mapinfer/error.h"

namespace mapinfer {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Running sums for one cluster's centroid and member statistics.
struct ClusterAccumulator {
  double sum_lat = 0.0;
  double sum_lon = 0.0;
  std::vector<Heading> headings;
  double max_speed = 0.0;
  double last_seen = -kInf;

  void Add(const GpsPoint& p) {
    sum_lat += p.location.lat;
    sum_lon += p.location.lon;
    headings.push_back(*p.heading);
    max_speed = std::max(max_speed, p.speed_kmh.value_or(0.0));
    last_seen = std::max(last_seen, p.timestamp);
  }

  ClusterCentroid Finish() const {
    ClusterCentroid c;
    const double n = static_cast<double>(headings.size());
    c.location = {sum_lat / n, sum_lon / n};
    c.heading = CircularMean(headings).mean;
    c.support = headings.size();
    c.heading_var = HeadingVariability(headings, c.heading);
    c.max_speed_kmh = max_speed;
    c.last_seen = last_seen;
    return c;
  }
};

ClusterCentroid CentroidOf(std::span<const GpsPoint> points,
                           std::span<const std::size_t> members) {
  ClusterAccumulator acc;
  for (std::size_t i : members) acc.Add(points[i]);
  return acc.Finish();
}

OrientedPoint Oriented(const GpsPoint& p) { return {p.location, *p.heading}; }

void RequireHeadings(std::span<const GpsPoint> points) {
  for (const auto& p : points) {
    if (!p.heading) throw InvalidArgumentError("clustering requires headings on all points");
  }
}

}  // namespace

void ClusterConfig::Validate() const {
  if (!(seed_radius_m > 0.0)) throw InvalidArgumentError("seed radius (cr) must be positive");
  if (!(theta_m >= 0.0)) throw InvalidArgumentError("theta must be non-negative");
  if (!(split_threshold_deg > 0.0)) throw InvalidArgumentError("split threshold must be positive");
  if (!(convergence_ratio > 0.0)) throw InvalidArgumentError("convergence ratio must be positive");
  if (max_iterations <= 0) throw InvalidArgumentError("max iterations must be positive");
}

std::vector<GpsPoint> DistinctPoints(std::span<const Trajectory> trajectories) {
  struct KeyHash {
    std::size_t operator()(const std::array<uint64_t, 3>& k) const {
      uint64_t h = 1469598103934665603ull;
      for (uint64_t v : k) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };
  std::unordered_map<std::array<uint64_t, 3>, std::size_t, KeyHash> seen;
  std::vector<GpsPoint> out;
  for (const auto& tr : trajectories) {
    for (const auto& p : tr.points) {
      if (!p.heading) continue;
      const std::array<uint64_t, 3> key{std::bit_cast<uint64_t>(p.location.lat),
                                        std::bit_cast<uint64_t>(p.location.lon),
                                        std::bit_cast<uint64_t>(p.heading->degrees())};
      auto [it, inserted] = seen.try_emplace(key, out.size());
      if (inserted) {
        out.push_back(p);
        continue;
      }
      GpsPoint& kept = out[it->second];
      kept.timestamp = std::max(kept.timestamp, p.timestamp);
      if (p.speed_kmh) {
        kept.speed_kmh = std::max(kept.speed_kmh.value_or(0.0), *p.speed_kmh);
      }
    }
  }
  return out;
}

std::vector<ClusterCentroid> SelectSeeds(std::span<const GpsPoint> points,
                                         const ClusterConfig& cfg) {
  RequireHeadings(points);
  std::vector<ClusterCentroid> seeds;
  SpatialGrid grid(cfg.seed_radius_m + cfg.theta_m,
                   points.empty() ? 0.0 : points.front().location.lat);
  const double radius = cfg.seed_radius_m * (1.0 - kRadiusSlack);
  for (const auto& p : points) {
    const OrientedPoint q = Oriented(p);
    bool covered = false;
    grid.ForEachCandidate(p.location, cfg.seed_radius_m, [&](int32_t id) {
      if (!covered && CombinedDistance(q, seeds[id].oriented(), cfg.theta_m) < radius) {
        covered = true;
      }
    });
    if (covered) continue;
    ClusterCentroid seed;
    seed.location = p.location;
    seed.heading = *p.heading;
    seed.support = 1;
    seed.max_speed_kmh = p.speed_kmh.value_or(0.0);
    seed.last_seen = p.timestamp;
    grid.Insert(static_cast<int32_t>(seeds.size()), p.location);
    seeds.push_back(seed);
  }
  return seeds;
}

CentroidIndex::CentroidIndex(std::span<const ClusterCentroid> centroids,
                             double theta_m, double cell_size_m)
    : centroids_(centroids),
      theta_m_(theta_m),
      grid_(cell_size_m, centroids.empty() ? 0.0 : centroids.front().location.lat) {
  for (std::size_t i = 0; i < centroids.size(); ++i) {
    grid_.Insert(static_cast<int32_t>(i), centroids[i].location);
  }
}

std::pair<int32_t, double> CentroidIndex::Nearest(const OrientedPoint& q) const {
  if (centroids_.empty()) return {-1, kInf};
  // Cheap flat-earth lower bound used to skip exact evaluations. Only trusted
  // below 5 km and away from the poles, where the local scale error stays far
  // below the 1% margin.
  const bool trust_flat = std::abs(q.location.lat) < 80.0;
  const double m_lat = MetersPerDegreeLat(q.location.lat);
  const double m_lon = MetersPerDegreeLon(q.location.lat);
  double radius = grid_.cell_size_m();
  std::vector<Candidate>& candidates = scratch_;
  while (true) {
    candidates.clear();
    grid_.ForEachCandidate(q.location, radius, [&](int32_t id) {
      const ClusterCentroid& c = centroids_[id];
      const double ang = theta_m_ * AngleDistance(q.heading, c.heading) / 180.0;
      const double dx = (c.location.lon - q.location.lon) * m_lon;
      const double dy = (c.location.lat - q.location.lat) * m_lat;
      const double flat = std::sqrt(dx * dx + dy * dy);
      const double lb_geo = trust_flat && flat < 5000.0 ? 0.99 * flat : 0.0;
      candidates.push_back({std::sqrt(lb_geo * lb_geo + ang * ang), ang, id});
    });
    // Exact distances in lower-bound order; stop once no remaining candidate
    // can beat the best.
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      return a.lower_bound < b.lower_bound;
    });
    int32_t best = -1;
    double best_d = kInf;
    for (const Candidate& cand : candidates) {
      if (cand.lower_bound > best_d) break;
      const double v = VincentyDistance(q.location, centroids_[cand.id].location);
      const double d = std::sqrt(v * v + cand.ang * cand.ang);
      if (d < best_d || (d == best_d && cand.id < best)) {
        best_d = d;
        best = cand.id;
      }
    }
    if (best >= 0 && (best_d <= radius || candidates.size() == centroids_.size())) {
      return {best, best_d};
    }
    radius *= 2.0;
  }
}

ClusteringResult KMeans(std::span<const GpsPoint> points,
                        std::vector<ClusterCentroid> seeds,
                        const ClusterConfig& cfg) {
  RequireHeadings(points);
  if (seeds.empty()) throw InvalidArgumentError("k-means needs at least one seed");
  ClusteringResult result;
  result.centroids = std::move(seeds);
  result.assignment.assign(points.size(), -1);
  const double cell = cfg.seed_radius_m + cfg.theta_m;

  // Assigns every point and drops empty clusters; returns the total cost.
  auto assign = [&]() {
    CentroidIndex index(result.centroids, cfg.theta_m, cell);
    double cost = 0.0;
    std::vector<std::size_t> counts(result.centroids.size(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      auto [c, d] = index.Nearest(Oriented(points[i]));
      result.assignment[i] = c;
      ++counts[c];
      cost += d * d;
    }
    std::vector<int32_t> remap(result.centroids.size(), -1);
    std::vector<ClusterCentroid> kept;
    for (std::size_t c = 0; c < counts.size(); ++c) {
      if (counts[c] == 0) continue;
      remap[c] = static_cast<int32_t>(kept.size());
      kept.push_back(result.centroids[c]);
    }
    if (kept.size() != result.centroids.size()) {
      result.centroids = std::move(kept);
      for (auto& a : result.assignment) a = remap[a];
    }
    return cost;
  };

  // Recomputes centroids (and member statistics) from the current assignment.
  auto update = [&]() {
    std::vector<ClusterAccumulator> acc(result.centroids.size());
    for (std::size_t i = 0; i < points.size(); ++i) acc[result.assignment[i]].Add(points[i]);
    for (std::size_t c = 0; c < acc.size(); ++c) result.centroids[c] = acc[c].Finish();
  };

  if (points.empty()) {
    result.centroids.clear();
    return result;
  }

  double prev_cost = assign();
  result.cost_history.push_back(prev_cost);
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    update();
    result.iterations = it;
    const double cost = assign();
    result.cost_history.push_back(cost);
    if (prev_cost - cost <= cfg.convergence_ratio * cost) break;
    prev_cost = cost;
  }
  // Statistics and positions consistent with the final assignment.
  update();
  return result;
}

std::vector<int> TwoMeansHeadings(std::span<const Heading> headings) {
  const std::size_t n = headings.size();
  std::vector<int> side(n, 0);
  if (n < 2) return side;

  std::size_t far_a = 0, far_b = 1;
  double far_d = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = AngleDistance(headings[i], headings[j]);
      if (d > far_d) {
        far_d = d;
        far_a = i;
        far_b = j;
      }
    }
  }
  Heading center[2] = {headings[far_a], headings[far_b]};

  auto assign = [&](std::vector<int>& out) {
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = AngleDistance(headings[i], center[1]) < AngleDistance(headings[i], center[0])
                   ? 1
                   : 0;
    }
  };
  assign(side);
  const std::vector<int> initial = side;

  for (int it = 0; it < 100; ++it) {
    std::vector<Heading> groups[2];
    for (std::size_t i = 0; i < n; ++i) groups[side[i]].push_back(headings[i]);
    if (groups[0].empty() || groups[1].empty()) return initial;
    center[0] = CircularMean(groups[0]).mean;
    center[1] = CircularMean(groups[1]).mean;
    std::vector<int> next(n);
    assign(next);
    if (next == side) break;
    side = std::move(next);
  }
  if (std::count(side.begin(), side.end(), 0) == 0 ||
      std::count(side.begin(), side.end(), 1) == 0) {
    return initial;
  }
  return side;
}

ClusteringResult SplitHeterogeneous(std::span<const GpsPoint> points,
                                    ClusteringResult clustering,
                                    const ClusterConfig& cfg) {
  std::vector<std::vector<std::size_t>> members(clustering.centroids.size());
  for (std::size_t i = 0; i < clustering.assignment.size(); ++i) {
    members[clustering.assignment[i]].push_back(i);
  }

  std::vector<ClusterCentroid> out_centroids;
  std::vector<std::vector<std::size_t>> out_members;
  for (std::size_t c = 0; c < members.size(); ++c) {
    // Depth-first so the pieces of one cluster stay adjacent in the output.
    std::vector<std::vector<std::size_t>> stack{std::move(members[c])};
    std::vector<ClusterCentroid> stack_centroids{clustering.centroids[c]};
    while (!stack.empty()) {
      auto group = std::move(stack.back());
      ClusterCentroid centroid = stack_centroids.back();
      stack.pop_back();
      stack_centroids.pop_back();
      if (group.size() < 2 || !(centroid.heading_var > cfg.split_threshold_deg)) {
        out_centroids.push_back(centroid);
        out_members.push_back(std::move(group));
        continue;
      }
      std::vector<Heading> hs;
      hs.reserve(group.size());
      for (std::size_t i : group) hs.push_back(*points[i].heading);
      const std::vector<int> side = TwoMeansHeadings(hs);
      std::vector<std::size_t> parts[2];
      for (std::size_t k = 0; k < group.size(); ++k) parts[side[k]].push_back(group[k]);
      if (parts[0].empty() || parts[1].empty()) {
        out_centroids.push_back(centroid);
        out_members.push_back(std::move(group));
        continue;
      }
      // Push the second half first so the first half is emitted first.
      for (int s = 1; s >= 0; --s) {
        stack_centroids.push_back(CentroidOf(points, parts[s]));
        stack.push_back(std::move(parts[s]));
      }
    }
  }

  clustering.centroids = std::move(out_centroids);
  for (std::size_t c = 0; c < out_members.size(); ++c) {
    for (std::size_t i : out_members[c]) clustering.assignment[i] = static_cast<int32_t>(c);
  }
  return clustering;
}

}  // namespace mapinfer
