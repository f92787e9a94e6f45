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

#include "mapinfer/spatial_grid.h"

#include <algorithm>

#include "mapinfer/error.h"

namespace mapinfer {
namespace {

// Smallest metres-per-degree of latitude on WGS-84 (at the equator).
constexpr double kMinMetersPerDegreeLat = 110574.0;

}  // namespace

SpatialGrid::SpatialGrid(double cell_size_m, double reference_lat)
    : cell_size_m_(cell_size_m) {
  if (!(cell_size_m > 0.0)) {
    throw InvalidArgumentError("spatial grid cell size must be positive");
  }
  dlat_ = cell_size_m / kMinMetersPerDegreeLat;
  const double lon_scale = std::max(MetersPerDegreeLon(reference_lat), 1000.0);
  dlon_ = cell_size_m / lon_scale;
}

void SpatialGrid::Insert(int32_t id, const LatLon& p) {
  cells_[Key(Row(p.lat), Col(p.lon))].push_back(id);
  ++size_;
}

void SpatialGrid::Move(int32_t id, const LatLon& from, const LatLon& to) {
  const uint64_t old_key = Key(Row(from.lat), Col(from.lon));
  const uint64_t new_key = Key(Row(to.lat), Col(to.lon));
  if (old_key == new_key) return;
  auto it = cells_.find(old_key);
  if (it != cells_.end()) {
    auto& ids = it->second;
    auto pos = std::find(ids.begin(), ids.end(), id);
    if (pos != ids.end()) {
      ids.erase(pos);
      if (ids.empty()) cells_.erase(it);
      cells_[new_key].push_back(id);
      return;
    }
  }
  throw InvalidArgumentError("spatial grid move of an id not stored at `from`");
}

void SpatialGrid::Clear() {
  cells_.clear();
  size_ = 0;
}

SpatialGrid::Range SpatialGrid::QueryRange(const LatLon& q,
                                           double radius_m) const {
  // Latitude: geodesic distance is never shorter than
  // |dlat| * kMinMetersPerDegreeLat.
  const double half_lat = radius_m / kMinMetersPerDegreeLat * 1.001;
  const double lat_lo = q.lat - half_lat, lat_hi = q.lat + half_lat;
  const double max_abs_lat = std::min(90.0, std::max(std::abs(lat_lo), std::abs(lat_hi)));
  // Longitude: use the narrowest parallel in the band, with margin for the
  // poleward bulge of geodesics.
  const double lon_scale = MetersPerDegreeLon(max_abs_lat) * 0.99;
  Range r;
  r.row_lo = Row(lat_lo);
  r.row_hi = Row(lat_hi);
  if (lon_scale <= 1.0 || radius_m / lon_scale >= 180.0) {
    r.col_lo = Col(-180.0);
    r.col_hi = Col(180.0);
  } else {
    const double half_lon = radius_m / lon_scale;
    r.col_lo = Col(q.lon - half_lon);
    r.col_hi = Col(q.lon + half_lon);
  }
  return r;
}

}  // namespace mapinfer
