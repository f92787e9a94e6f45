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

#ifndef MAPINFER_CLUSTERING_H_
#define MAPINFER_CLUSTERING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mapinfer/geo.h"
#include "mapinfer/ingest.h"
#include "mapinfer/spatial_grid.h"

namespace mapinfer {

// A cluster of GPS points; becomes a node of the inferred map.
struct ClusterCentroid {
  LatLon location;
  Heading heading;
  std::size_t support = 0;     // number of member points
  double heading_var = 0.0;    // mean angular deviation from `heading`
  double max_speed_kmh = 0.0;
  double last_seen = 0.0;      // latest member timestamp

  OrientedPoint oriented() const { return {location, heading}; }
};

struct ClusterConfig {
  double seed_radius_m = 20.0;   // cr
  double theta_m = 40.0;         // heading penalty, metres per 180 degrees
  double split_threshold_deg = 10.0;
  double convergence_ratio = 1e-4;
  int max_iterations = 100;

  void Validate() const;
};

// Unique (lat, lon, heading) points across all trajectories, in order of first
// appearance. Duplicates fold their max speed and latest timestamp into the
// kept point. Points without a heading are skipped.
std::vector<GpsPoint> DistinctPoints(std::span<const Trajectory> trajectories);

// Relative slack on "at least cr apart" tests. Densified points sit sr apart
// up to rounding and projection error (about 1e-6 over a kilometre), and with
// sr == cr they must still count as apart. 1e-4 is 2 mm at 20 m.
inline constexpr double kRadiusSlack = 1e-4;

// Sequential scan: a point becomes a seed iff every existing seed is at
// combined distance >= seed_radius_m * (1 - kRadiusSlack).
std::vector<ClusterCentroid> SelectSeeds(std::span<const GpsPoint> points,
                                         const ClusterConfig& cfg);

struct ClusteringResult {
  std::vector<ClusterCentroid> centroids;
  std::vector<int32_t> assignment;   // point index -> centroid index
  std::vector<double> cost_history;  // sum of squared distances per assignment
  int iterations = 0;
};

// Nearest centroid lookup under the combined metric, backed by a spatial grid.
// Ties go to the lowest centroid index.
class CentroidIndex {
 public:
  CentroidIndex(std::span<const ClusterCentroid> centroids, double theta_m,
                double cell_size_m);

  // Returns {index, distance}; index is -1 when there are no centroids. Not
  // safe to call concurrently on one index (shared scratch buffer).
  std::pair<int32_t, double> Nearest(const OrientedPoint& q) const;

 private:
  struct Candidate {
    double lower_bound;
    double ang;
    int32_t id;
  };

  std::span<const ClusterCentroid> centroids_;
  double theta_m_;
  SpatialGrid grid_;
  mutable std::vector<Candidate> scratch_;
};

// Lloyd iterations under the combined metric with arithmetic lat/lon means
// and circular heading means. Stops once the cost drops by no more than
// convergence_ratio * cost, or after max_iterations. Empty clusters are
// dropped.
ClusteringResult KMeans(std::span<const GpsPoint> points,
                        std::vector<ClusterCentroid> seeds,
                        const ClusterConfig& cfg);

// Replaces each cluster whose heading variability exceeds the threshold by the
// two halves of a 2-means split on member headings, repeating until every
// multi-member cluster is homogeneous.
ClusteringResult SplitHeterogeneous(std::span<const GpsPoint> points,
                                    ClusteringResult clustering,
                                    const ClusterConfig& cfg);

// Two-cluster partition of headings under the angle metric, seeded at the
// farthest-apart pair. Returns the side (0 or 1) of each heading.
std::vector<int> TwoMeansHeadings(std::span<const Heading> headings);

}  // namespace mapinfer

#endif  // MAPINFER_CLUSTERING_H_
