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

#ifndef MAPINFER_SPATIAL_GRID_H_
#define MAPINFER_SPATIAL_GRID_H_

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "mapinfer/geo.h"

namespace mapinfer {

// Uniform lat/lon bucket grid holding integer ids. Queries return a superset
// of the ids whose location lies within a geodesic radius; callers filter by
// exact distance. Supports incremental insertion, which the streaming path
// needs, and is cheap enough to rebuild per k-means iteration.
class SpatialGrid {
 public:
  // `cell_size_m` is the nominal cell edge in metres at `reference_lat`.
  explicit SpatialGrid(double cell_size_m, double reference_lat = 0.0);

  void Insert(int32_t id, const LatLon& p);
  // Moves an id from one location to another. `from` must be the location the
  // id was last inserted or moved at.
  void Move(int32_t id, const LatLon& from, const LatLon& to);
  void Clear();
  std::size_t size() const { return size_; }
  double cell_size_m() const { return cell_size_m_; }

  // Calls `visit(id)` for every id stored in a cell intersecting the
  // conservative lat/lon box around `q` of half-extent `radius_m`.
  template <typename Visitor>
  void ForEachCandidate(const LatLon& q, double radius_m, Visitor&& visit) const;

 private:
  struct Range {
    int64_t row_lo, row_hi, col_lo, col_hi;
  };
  Range QueryRange(const LatLon& q, double radius_m) const;
  int64_t Row(double lat) const { return static_cast<int64_t>(std::floor(lat / dlat_)); }
  int64_t Col(double lon) const { return static_cast<int64_t>(std::floor(lon / dlon_)); }
  static uint64_t Key(int64_t row, int64_t col) {
    return (static_cast<uint64_t>(row) << 32) | static_cast<uint64_t>(col & 0xffffffff);
  }

  double cell_size_m_;
  double dlat_;
  double dlon_;
  std::size_t size_ = 0;
  std::unordered_map<uint64_t, std::vector<int32_t>> cells_;
};

template <typename Visitor>
void SpatialGrid::ForEachCandidate(const LatLon& q, double radius_m,
                                   Visitor&& visit) const {
  if (size_ == 0) return;
  const Range r = QueryRange(q, radius_m);
  const double span = static_cast<double>(r.row_hi - r.row_lo + 1) *
                      static_cast<double>(r.col_hi - r.col_lo + 1);
  if (span > static_cast<double>(cells_.size())) {
    // Cheaper to walk the occupied cells than the query box.
    for (const auto& [key, ids] : cells_) {
      const int64_t row = static_cast<int32_t>(key >> 32);
      const int64_t col = static_cast<int32_t>(key & 0xffffffff);
      if (row < r.row_lo || row > r.row_hi || col < r.col_lo || col > r.col_hi) {
        continue;
      }
      for (int32_t id : ids) visit(id);
    }
    return;
  }
  for (int64_t row = r.row_lo; row <= r.row_hi; ++row) {
    for (int64_t col = r.col_lo; col <= r.col_hi; ++col) {
      auto it = cells_.find(Key(row, col));
      if (it == cells_.end()) continue;
      for (int32_t id : it->second) visit(id);
    }
  }
}

}  // namespace mapinfer

#endif  // MAPINFER_SPATIAL_GRID_H_
