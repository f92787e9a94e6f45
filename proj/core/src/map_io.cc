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

#include "mapinfer/map_io.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mapinfer/error.h"

namespace mapinfer {
namespace {

constexpr std::string_view kEdgeListHeader = "# kharita-map v1";

std::string Fixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

std::string Fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::vector<std::string_view> SplitWhitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

[[noreturn]] void Fail(std::size_t line, const std::string& what) {
  throw FormatError("line " + std::to_string(line) + ": " + what);
}

template <typename T>
T ParseField(std::string_view s, std::size_t line, const char* name) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    Fail(line, std::string("bad ") + name + " '" + std::string(s) + "'");
  }
  return v;
}

bool ParseFlag(std::string_view s, std::size_t line) {
  if (s == "1") return true;
  if (s == "0") return false;
  Fail(line, "active flag must be 0 or 1, got '" + std::string(s) + "'");
}

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path.string());
  return out;
}

}  // namespace

void WriteEdgeList(std::ostream& out, const RoadGraph& g) {
  out << kEdgeListHeader << '\n';
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    const MapNode& n = g.node(static_cast<int32_t>(i));
    const ClusterCentroid& c = n.centroid;
    out << "N " << i << ' ' << Fixed9(c.location.lat) << ' ' << Fixed9(c.location.lon) << ' '
        << Fixed9(c.heading.degrees()) << ' ' << c.support << ' ' << Fixed9(c.max_speed_kmh)
        << ' ' << Fixed9(c.last_seen) << ' ' << (n.active ? 1 : 0) << '\n';
  }
  for (const MapEdge& e : g.edges()) {
    out << "E " << e.from << ' ' << e.to << ' ' << Fixed9(e.weight_m) << ' ' << e.traj_count
        << ' ' << Fixed9(e.last_seen) << ' ' << (e.active ? 1 : 0) << '\n';
  }
}

RoadGraph ReadEdgeList(std::istream& in) {
  RoadGraph g;
  std::string raw;
  std::size_t line = 0;
  bool header_seen = false;
  bool edges_started = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text(raw);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    if (!header_seen) {
      if (text.empty()) continue;
      if (text != kEdgeListHeader) Fail(line, "expected header '# kharita-map v1'");
      header_seen = true;
      continue;
    }
    const auto f = SplitWhitespace(text);
    if (f.empty() || f[0].front() == '#') continue;
    if (f[0] == "N") {
      if (edges_started) Fail(line, "node line after edge lines");
      if (f.size() != 9) Fail(line, "node line needs 9 fields");
      const auto id = ParseField<std::size_t>(f[1], line, "node id");
      if (id != g.num_nodes()) Fail(line, "node ids must be consecutive from 0");
      ClusterCentroid c;
      c.location = {ParseField<double>(f[2], line, "lat"), ParseField<double>(f[3], line, "lon")};
      if (!IsValid(c.location)) Fail(line, "coordinates out of range");
      c.heading = Heading(ParseField<double>(f[4], line, "heading"));
      c.support = ParseField<std::size_t>(f[5], line, "support");
      c.max_speed_kmh = ParseField<double>(f[6], line, "max_speed");
      c.last_seen = ParseField<double>(f[7], line, "last_seen");
      g.AddNode(c, ParseFlag(f[8], line));
    } else if (f[0] == "E") {
      edges_started = true;
      if (f.size() != 7) Fail(line, "edge line needs 7 fields");
      MapEdge e;
      e.from = ParseField<int32_t>(f[1], line, "from");
      e.to = ParseField<int32_t>(f[2], line, "to");
      e.weight_m = ParseField<double>(f[3], line, "weight");
      e.traj_count = ParseField<std::size_t>(f[4], line, "traj_count");
      e.last_seen = ParseField<double>(f[5], line, "last_seen");
      e.active = ParseFlag(f[6], line);
      try {
        g.AddEdge(e);
      } catch (const Error& err) {
        Fail(line, err.what());
      }
    } else {
      Fail(line, "unknown record type '" + std::string(f[0]) + "'");
    }
  }
  if (!header_seen) throw FormatError("line 1: missing header '# kharita-map v1'");
  return g;
}

void WriteGeoJson(std::ostream& out, const RoadGraph& g) {
  nlohmann::ordered_json features = nlohmann::ordered_json::array();
  for (const MapEdge& e : g.edges()) {
    if (!e.active) continue;
    const LatLon a = g.node(e.from).centroid.location;
    const LatLon b = g.node(e.to).centroid.location;
    nlohmann::ordered_json f;
    f["type"] = "Feature";
    f["geometry"] = {{"type", "LineString"},
                     {"coordinates", {{a.lon, a.lat}, {b.lon, b.lat}}}};
    f["properties"] = {{"weight", e.weight_m}, {"traj_count", e.traj_count}, {"active", e.active}};
    features.push_back(std::move(f));
  }
  nlohmann::ordered_json doc;
  doc["type"] = "FeatureCollection";
  doc["features"] = std::move(features);
  out << doc.dump() << '\n';
}

RoadGraph ReadGeoJson(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(e.what());
  }
  if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
      !doc.contains("features") || !doc["features"].is_array()) {
    throw FormatError("GeoJSON: expected a FeatureCollection");
  }
  RoadGraph g;
  std::map<std::pair<double, double>, int32_t> ids;
  auto node_for = [&](double lon, double lat) {
    auto [it, inserted] = ids.try_emplace({lon, lat}, 0);
    if (inserted) {
      ClusterCentroid c;
      c.location = {lat, lon};
      if (!IsValid(c.location)) throw FormatError("GeoJSON: coordinates out of range");
      it->second = g.AddNode(c);
    }
    return it->second;
  };
  std::size_t index = 0;
  for (const auto& f : doc["features"]) {
    const std::string where = "GeoJSON feature " + std::to_string(index++);
    const auto geom = f.find("geometry");
    if (geom == f.end() || !geom->is_object() || geom->value("type", "") != "LineString") {
      throw FormatError(where + ": expected a LineString geometry");
    }
    const auto& coords = (*geom)["coordinates"];
    if (!coords.is_array() || coords.size() < 2) {
      throw FormatError(where + ": LineString needs at least 2 coordinates");
    }
    const nlohmann::json props = f.value("properties", nlohmann::json::object());
    std::vector<int32_t> chain;
    for (const auto& c : coords) {
      if (!c.is_array() || c.size() < 2 || !c[0].is_number() || !c[1].is_number()) {
        throw FormatError(where + ": bad coordinate");
      }
      chain.push_back(node_for(c[0].get<double>(), c[1].get<double>()));
    }
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      if (chain[k] == chain[k + 1] || g.HasEdge(chain[k], chain[k + 1])) continue;
      MapEdge e;
      e.from = chain[k];
      e.to = chain[k + 1];
      e.weight_m = EdgeWeight(g.node(e.from).centroid.location, g.node(e.to).centroid.location);
      if (chain.size() == 2 && props.contains("weight") && props["weight"].is_number() &&
          props["weight"].get<double>() > 0.0) {
        e.weight_m = props["weight"].get<double>();
      }
      if (props.contains("traj_count") && props["traj_count"].is_number_unsigned()) {
        e.traj_count = props["traj_count"].get<std::size_t>();
      }
      if (props.contains("active") && props["active"].is_boolean()) {
        e.active = props["active"].get<bool>();
      }
      g.AddEdge(e);
    }
  }
  return g;
}

void SaveEdgeList(const std::filesystem::path& path, const RoadGraph& g) {
  auto out = OpenForWrite(path);
  WriteEdgeList(out, g);
  if (!out) throw IoError("write failed: " + path.string());
}

void SaveGeoJson(const std::filesystem::path& path, const RoadGraph& g) {
  auto out = OpenForWrite(path);
  WriteGeoJson(out, g);
  if (!out) throw IoError("write failed: " + path.string());
}

RoadGraph LoadMap(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open map file: " + path.string());
  const std::string ext = path.extension().string();
  try {
    if (ext == ".geojson" || ext == ".json") return ReadGeoJson(in);
    return ReadEdgeList(in);
  } catch (const Error& e) {
    if (e.kind() != Error::Kind::kFormat) throw;
    throw FormatError(path.string() + ": " + e.what());
  }
}

void WriteTrajectoriesCsv(std::ostream& out, std::span<const Trajectory> trajectories) {
  struct Row {
    double timestamp;
    std::size_t traj;
    std::size_t point;
  };
  std::vector<Row> rows;
  for (std::size_t t = 0; t < trajectories.size(); ++t) {
    for (std::size_t i = 0; i < trajectories[t].points.size(); ++i) {
      rows.push_back({trajectories[t].points[i].timestamp, t, i});
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.timestamp < b.timestamp; });
  out << "vehicle_id,timestamp,lat,lon,speed_kmh,heading_deg\n";
  for (const Row& r : rows) {
    const Trajectory& tr = trajectories[r.traj];
    const GpsPoint& p = tr.points[r.point];
    out << tr.vehicle_id << ',' << Fixed3(p.timestamp) << ',' << Fixed9(p.location.lat) << ','
        << Fixed9(p.location.lon) << ',' << (p.speed_kmh ? Fixed3(*p.speed_kmh) : "") << ','
        << (p.heading ? Fixed3(p.heading->degrees()) : "") << '\n';
  }
}

void SaveTrajectoriesCsv(const std::filesystem::path& path,
                         std::span<const Trajectory> trajectories) {
  auto out = OpenForWrite(path);
  WriteTrajectoriesCsv(out, trajectories);
  if (!out) throw IoError("write failed: " + path.string());
}

uint64_t Fnv1a64(std::string_view bytes, uint64_t hash) {
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

uint64_t HashFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  uint64_t hash = Fnv1a64({});
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    hash = Fnv1a64(std::string_view(buf, static_cast<std::size_t>(in.gcount())), hash);
  }
  return hash;
}

}  // namespace mapinfer
