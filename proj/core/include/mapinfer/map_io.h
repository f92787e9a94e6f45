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

#ifndef MAPINFER_MAP_IO_H_
#define MAPINFER_MAP_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>

#include "mapinfer/ingest.h"
#include "mapinfer/road_graph.h"

namespace mapinfer {

// Edge-list text format:
//   # kharita-map v1
//   N <id> <lat> <lon> <heading_deg> <support> <max_speed_kmh> <last_seen> <active>
//   E <from> <to> <weight_m> <traj_count> <last_seen> <active>
// Floats are printed with 9 decimals. All nodes and edges are written,
// including inactive ones.
void WriteEdgeList(std::ostream& out, const RoadGraph& g);
// Node lines must come first with ids 0..n-1 in order. Throws FormatError
// naming the offending line.
RoadGraph ReadEdgeList(std::istream& in);

// FeatureCollection with one LineString per active edge and properties
// {weight, traj_count, active}.
void WriteGeoJson(std::ostream& out, const RoadGraph& g);
// Accepts LineString features; coordinates shared between features become a
// single node and every consecutive coordinate pair becomes an edge.
RoadGraph ReadGeoJson(std::istream& in);

void SaveEdgeList(const std::filesystem::path& path, const RoadGraph& g);
void SaveGeoJson(const std::filesystem::path& path, const RoadGraph& g);
// Dispatches on extension: .geojson and .json are read as GeoJSON, anything
// else as an edge list. Throws IoError if the file cannot be opened.
RoadGraph LoadMap(const std::filesystem::path& path);

// Writes trajectories in the ingest CSV format, rows ordered by timestamp
// (ties by trajectory order) so the file doubles as an arrival-ordered stream.
void WriteTrajectoriesCsv(std::ostream& out, std::span<const Trajectory> trajectories);
void SaveTrajectoriesCsv(const std::filesystem::path& path,
                         std::span<const Trajectory> trajectories);

// 64-bit FNV-1a.
uint64_t Fnv1a64(std::string_view bytes, uint64_t hash = 0xcbf29ce484222325ULL);
uint64_t HashFile(const std::filesystem::path& path);

}  // namespace mapinfer

#endif  // MAPINFER_MAP_IO_H_
