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

#ifndef MAPINFER_SPANNER_H_
#define MAPINFER_SPANNER_H_

#include <cmath>
#include <vector>

#include "mapinfer/road_graph.h"

namespace mapinfer {

struct SpannerConfig {
  double alpha = std::sqrt(2.0);  // stretch
  double duplex_speed_kmh = 60.0;

  void Validate() const;
};

// Absolute slack on the spanner test so that an alternative path of exactly
// alpha * w (e.g. the two legs of a square around its diagonal) rejects the
// edge despite rounding.
inline constexpr double kSpannerSlackM = 1e-9;

// Greedy alpha-spanner over the active edges of `g`. Edges are examined in
// increasing weight order (ties by edge index); an edge is kept iff the
// current directed spanner distance between its endpoints exceeds
// alpha * weight. Returns one flag per edge of `g`; inactive edges are always
// kept.
std::vector<bool> GreedySpannerKeepMask(const RoadGraph& g, double alpha);

// `g` restricted to the edges selected by GreedySpannerKeepMask.
RoadGraph GreedySpanner(const RoadGraph& g, const SpannerConfig& cfg);

}  // namespace mapinfer

#endif  // MAPINFER_SPANNER_H_
