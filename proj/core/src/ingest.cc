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

#include "mapinfer/ingest.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <string_view>
#include <unordered_map>

#include "mapinfer/error.h"

namespace mapinfer {
namespace {

constexpr std::string_view kHeaderColumns[] = {
    "vehicle_id", "timestamp", "lat", "lon", "speed_kmh", "heading_deg"};

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitCsv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(Trim(line.substr(start)));
      break;
    }
    out.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::optional<double> ParseDouble(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<int> ParseFixedInt(std::string_view s, std::size_t pos,
                                 std::size_t len) {
  if (pos + len > s.size()) return std::nullopt;
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

bool NeedsInference(const GpsPoint& p) {
  return !p.heading.has_value() || !p.speed_kmh.has_value();
}

}  // namespace

void IngestConfig::Validate() const {
  if (!(min_speed_kmh > 0.0)) throw InvalidArgumentError("min_speed_kmh must be positive");
  if (!(densify_spacing_m > 0.0)) throw InvalidArgumentError("densify spacing (sr) must be positive");
  if (!(densify_angle_gate_deg > 0.0)) throw InvalidArgumentError("densify angle gate must be positive");
  if (!(new_trajectory_gap_s > 0.0)) throw InvalidArgumentError("new trajectory gap must be positive");
}

std::optional<double> ParseIso8601(std::string_view s) {
  // YYYY-MM-DDTHH:MM:SS
  if (s.size() < 19 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') ||
      s[13] != ':' || s[16] != ':') {
    return std::nullopt;
  }
  const auto y = ParseFixedInt(s, 0, 4), mo = ParseFixedInt(s, 5, 2),
             d = ParseFixedInt(s, 8, 2), h = ParseFixedInt(s, 11, 2),
             mi = ParseFixedInt(s, 14, 2), se = ParseFixedInt(s, 17, 2);
  if (!y || !mo || !d || !h || !mi || !se) return std::nullopt;
  if (*h > 23 || *mi > 59 || *se > 60) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year(*y),
                                        std::chrono::month(static_cast<unsigned>(*mo)),
                                        std::chrono::day(static_cast<unsigned>(*d))};
  if (!ymd.ok()) return std::nullopt;

  double seconds = static_cast<double>(
      std::chrono::sys_days(ymd).time_since_epoch().count()) * 86400.0;
  seconds += *h * 3600.0 + *mi * 60.0 + *se;

  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    std::size_t end = pos + 1;
    while (end < s.size() && s[end] >= '0' && s[end] <= '9') ++end;
    if (end == pos + 1) return std::nullopt;
    const auto frac = ParseDouble(s.substr(pos, end - pos));
    if (!frac) return std::nullopt;
    seconds += *frac;
    pos = end;
  }
  if (pos == s.size()) return seconds;
  if (s[pos] == 'Z' && pos + 1 == s.size()) return seconds;
  if ((s[pos] == '+' || s[pos] == '-') && s.size() == pos + 6 && s[pos + 3] == ':') {
    const auto oh = ParseFixedInt(s, pos + 1, 2), om = ParseFixedInt(s, pos + 4, 2);
    if (!oh || !om) return std::nullopt;
    const double offset = *oh * 3600.0 + *om * 60.0;
    return s[pos] == '+' ? seconds - offset : seconds + offset;
  }
  return std::nullopt;
}

CsvRecordReader::CsvRecordReader(std::istream& in) : in_(in) {
  std::string header;
  while (std::getline(in_, header)) {
    ++line_no_;
    if (!Trim(header).empty()) break;
  }
  if (Trim(header).empty()) return;  // empty stream: no header, no records
  const auto cols = SplitCsv(header);
  bool ok = cols.size() == std::size(kHeaderColumns);
  for (std::size_t i = 0; ok && i < cols.size(); ++i) {
    ok = cols[i] == kHeaderColumns[i];
  }
  if (!ok) {
    throw FormatError("line " + std::to_string(line_no_) +
                      ": expected header 'vehicle_id,timestamp,lat,lon,speed_kmh,"
                      "heading_deg'");
  }
}

std::optional<CsvRecord> CsvRecordReader::Next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (Trim(line).empty()) continue;
    CsvRecord rec;
    if (ParseRow(line, rec)) {
      rec.line = line_no_;
      ++valid_rows_;
      return rec;
    }
    ++malformed_rows_;
  }
  return std::nullopt;
}

bool CsvRecordReader::ParseRow(const std::string& line, CsvRecord& out) {
  const auto cols = SplitCsv(line);
  if (cols.size() != 6 || cols[0].empty()) return false;

  std::optional<double> ts;
  switch (time_format_) {
    case TimeFormat::kEpoch:
      ts = ParseDouble(cols[1]);
      break;
    case TimeFormat::kIso8601:
      ts = ParseIso8601(cols[1]);
      break;
    case TimeFormat::kUnknown:
      if ((ts = ParseDouble(cols[1]))) {
        time_format_ = TimeFormat::kEpoch;
      } else if ((ts = ParseIso8601(cols[1]))) {
        time_format_ = TimeFormat::kIso8601;
      }
      break;
  }
  if (!ts) return false;

  const auto lat = ParseDouble(cols[2]);
  const auto lon = ParseDouble(cols[3]);
  if (!lat || !lon) return false;
  GpsPoint p;
  p.location = {*lat, *lon};
  if (!IsValid(p.location)) return false;
  p.timestamp = *ts;
  if (!cols[4].empty()) {
    const auto speed = ParseDouble(cols[4]);
    if (!speed || *speed < 0.0) return false;
    p.speed_kmh = *speed;
  }
  if (!cols[5].empty()) {
    const auto heading = ParseDouble(cols[5]);
    if (!heading) return false;
    p.heading = Heading(*heading);
  }
  out.vehicle_id = std::string(cols[0]);
  out.point = p;
  return true;
}

std::vector<Trajectory> GroupRecords(std::vector<CsvRecord> records,
                                     const IngestConfig& cfg) {
  // Vehicles in order of first appearance.
  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<GpsPoint>> by_vehicle;
  for (auto& rec : records) {
    auto [it, inserted] = by_vehicle.try_emplace(rec.vehicle_id);
    if (inserted) order.push_back(rec.vehicle_id);
    it->second.push_back(rec.point);
  }

  std::vector<Trajectory> out;
  for (const auto& vid : order) {
    auto& pts = by_vehicle[vid];
    std::stable_sort(pts.begin(), pts.end(), [](const GpsPoint& a, const GpsPoint& b) {
      return a.timestamp < b.timestamp;
    });
    Trajectory current{vid, {}};
    for (const auto& p : pts) {
      if (!current.points.empty() &&
          p.timestamp - current.points.back().timestamp > cfg.new_trajectory_gap_s) {
        out.push_back(std::move(current));
        current = Trajectory{vid, {}};
      }
      current.points.push_back(p);
    }
    if (!current.points.empty()) out.push_back(std::move(current));
  }
  return out;
}

std::vector<Trajectory> ParseTrajectories(std::istream& in, const IngestConfig& cfg,
                                          ParseStats* stats) {
  CsvRecordReader reader(in);
  std::vector<CsvRecord> records;
  while (auto rec = reader.Next()) records.push_back(std::move(*rec));
  if (stats != nullptr) {
    stats->valid_rows = reader.valid_rows();
    stats->malformed_rows = reader.malformed_rows();
  }
  if (records.empty()) throw EmptyInputError("no valid trajectory rows in input");
  return GroupRecords(std::move(records), cfg);
}

std::vector<Trajectory> ParseTrajectories(const std::filesystem::path& path,
                                          const IngestConfig& cfg, ParseStats* stats) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trajectory file: " + path.string());
  return ParseTrajectories(in, cfg, stats);
}

std::optional<Trajectory> InferSpeedHeading(const Trajectory& tr) {
  const bool needs = std::any_of(tr.points.begin(), tr.points.end(), NeedsInference);
  if (!needs) return tr;

  Trajectory out{tr.vehicle_id, {}};
  out.points.reserve(tr.points.size());
  for (const auto& p : tr.points) {
    if (!out.points.empty() && p.timestamp <= out.points.back().timestamp) continue;
    out.points.push_back(p);
  }
  if (out.points.size() < 2) return std::nullopt;

  auto& pts = out.points;
  const std::size_t n = pts.size();
  // Segment i runs from point i to point i+1.
  std::vector<std::optional<Heading>> seg_heading(n - 1);
  std::vector<double> seg_speed(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = VincentyDistance(pts[i].location, pts[i + 1].location);
    seg_speed[i] = d / (pts[i + 1].timestamp - pts[i].timestamp) * 3.6;
    if (!(pts[i].location == pts[i + 1].location)) {
      seg_heading[i] = InitialBearing(pts[i].location, pts[i + 1].location);
    }
  }
  // Stationary segments borrow the nearest defined bearing.
  std::optional<Heading> last;
  for (auto& h : seg_heading) {
    if (h) last = h;
    else h = last;
  }
  last.reset();
  for (auto it = seg_heading.rbegin(); it != seg_heading.rend(); ++it) {
    if (*it) last = *it;
    else *it = last;
  }

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t seg = i + 1 < n ? i : n - 2;
    if (!pts[i].heading) pts[i].heading = seg_heading[seg].value_or(Heading(0.0));
    if (!pts[i].speed_kmh) pts[i].speed_kmh = seg_speed[seg];
  }
  return out;
}

Trajectory FilterSlowPoints(const Trajectory& tr, double min_speed_kmh) {
  Trajectory out{tr.vehicle_id, {}};
  out.points.reserve(tr.points.size());
  for (const auto& p : tr.points) {
    if (p.speed_kmh && *p.speed_kmh <= min_speed_kmh) continue;
    out.points.push_back(p);
  }
  return out;
}

Trajectory Densify(const Trajectory& tr, const IngestConfig& cfg) {
  Trajectory out{tr.vehicle_id, {}};
  if (tr.points.empty()) return out;
  out.points.reserve(tr.points.size() * 2);
  for (std::size_t i = 0; i + 1 < tr.points.size(); ++i) {
    const GpsPoint& a = tr.points[i];
    const GpsPoint& b = tr.points[i + 1];
    out.points.push_back(a);
    if (!a.heading || !b.heading) continue;
    if (!(AngleDistance(*a.heading, *b.heading) < cfg.densify_angle_gate_deg)) continue;
    const double d = VincentyDistance(a.location, b.location);
    const auto s = static_cast<std::size_t>(std::floor(d / cfg.densify_spacing_m));
    if (s == 0) continue;
    const Heading bearing = InitialBearing(a.location, b.location);
    for (std::size_t k = 1; k <= s; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(s + 1);
      GpsPoint p;
      p.location = Interpolate(a.location, b.location, t);
      p.heading = bearing;
      p.timestamp = a.timestamp + (b.timestamp - a.timestamp) * t;
      if (a.speed_kmh && b.speed_kmh) {
        p.speed_kmh = *a.speed_kmh + (*b.speed_kmh - *a.speed_kmh) * t;
      }
      out.points.push_back(p);
    }
  }
  out.points.push_back(tr.points.back());
  return out;
}

std::vector<Trajectory> Preprocess(const std::vector<Trajectory>& trajectories,
                                   const IngestConfig& cfg, PreprocessStats* stats) {
  std::vector<Trajectory> out;
  out.reserve(trajectories.size());
  PreprocessStats local;
  for (const auto& tr : trajectories) {
    auto inferred = InferSpeedHeading(tr);
    if (!inferred) {
      ++local.dropped_trajectories;
      continue;
    }
    Trajectory filtered = FilterSlowPoints(*inferred, cfg.min_speed_kmh);
    local.slow_points_removed += inferred->points.size() - filtered.points.size();
    if (filtered.points.empty()) continue;
    out.push_back(std::move(filtered));
  }
  if (stats != nullptr) *stats = local;
  return out;
}

}  // namespace mapinfer
