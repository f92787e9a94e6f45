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

#include "mapinfer/spanner.h"

#include <algorithm>
#include <numeric>

#include "mapinfer/error.h"

namespace mapinfer {

void SpannerConfig::Validate() const {
  if (!(alpha > 1.0)) throw InvalidArgumentError("spanner stretch alpha must be > 1");
  if (!(duplex_speed_kmh > 0.0)) throw InvalidArgumentError("duplex speed must be positive");
}

std::vector<bool> GreedySpannerKeepMask(const RoadGraph& g, double alpha) {
  std::vector<bool> keep(g.num_edges(), true);
  std::vector<std::size_t> order;
  order.reserve(g.num_edges());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    if (g.edge(i).active) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g.edge(a).weight_m < g.edge(b).weight_m;
  });

  // Build the spanner as a separate graph so distance queries only see edges
  // accepted so far.
  RoadGraph spanner = g.NodesOnly();
  ShortestPathSearcher searcher;
  for (std::size_t i : order) {
    const MapEdge& e = g.edge(i);
    const double bound = alpha * e.weight_m + kSpannerSlackM;
    const double d = searcher.Distance(spanner, e.from, e.to, bound);
    if (d > bound) {
      spanner.AddEdge(e);
    } else {
      keep[i] = false;
    }
  }
  return keep;
}

RoadGraph GreedySpanner(const RoadGraph& g, const SpannerConfig& cfg) {
  cfg.Validate();
  RoadGraph out = g;
  out.RemoveEdges(GreedySpannerKeepMask(g, cfg.alpha));
  return out;
}

}  // namespace mapinfer
