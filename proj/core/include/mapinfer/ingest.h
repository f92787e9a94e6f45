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

#ifndef MAPINFER_INGEST_H_
#define MAPINFER_INGEST_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "mapinfer/geo.h"

namespace mapinfer {

// Chronologically ordered fixes from one vehicle.
struct Trajectory {
  std::string vehicle_id;
  std::vector<GpsPoint> points;
};

struct IngestConfig {
  double min_speed_kmh = 5.0;
  double densify_spacing_m = 20.0;      // sr
  double densify_angle_gate_deg = 5.0;
  double new_trajectory_gap_s = 300.0;

  // Throws InvalidArgument if any field is not positive.
  void Validate() const;
};

// One parsed CSV row.
struct CsvRecord {
  std::string vehicle_id;
  GpsPoint point;
  std::size_t line = 0;
};

// Reads `vehicle_id,timestamp,lat,lon,speed_kmh,heading_deg` rows one at a
// time. The header is mandatory unless the stream is blank. The timestamp
// format (integer/decimal epoch seconds or ISO-8601) is detected from the
// first data row and enforced for the rest of the stream; rows that fail to
// parse are counted and skipped.
class CsvRecordReader {
 public:
  explicit CsvRecordReader(std::istream& in);

  // Next valid record, or nullopt at end of input.
  std::optional<CsvRecord> Next();

  std::size_t valid_rows() const { return valid_rows_; }
  std::size_t malformed_rows() const { return malformed_rows_; }

 private:
  enum class TimeFormat { kUnknown, kEpoch, kIso8601 };

  bool ParseRow(const std::string& line, CsvRecord& out);

  std::istream& in_;
  std::size_t line_no_ = 0;
  std::size_t valid_rows_ = 0;
  std::size_t malformed_rows_ = 0;
  TimeFormat time_format_ = TimeFormat::kUnknown;
};

// Parses "YYYY-MM-DD[T ]HH:MM:SS[.fff][Z|+HH:MM|-HH:MM]" into epoch seconds.
std::optional<double> ParseIso8601(std::string_view text);

struct ParseStats {
  std::size_t valid_rows = 0;
  std::size_t malformed_rows = 0;
};

// Groups rows by vehicle, sorts by timestamp and splits at gaps longer than
// `cfg.new_trajectory_gap_s`. Throws IoError for unreadable files and
// EmptyInputError when no row is valid.
std::vector<Trajectory> ParseTrajectories(const std::filesystem::path& path,
                                          const IngestConfig& cfg,
                                          ParseStats* stats = nullptr);
std::vector<Trajectory> ParseTrajectories(std::istream& in,
                                          const IngestConfig& cfg,
                                          ParseStats* stats = nullptr);

// Same grouping rule applied to already-decoded records.
std::vector<Trajectory> GroupRecords(std::vector<CsvRecord> records,
                                     const IngestConfig& cfg);

// Fills missing heading/speed from consecutive fixes. Points with the same
// timestamp as their predecessor are dropped when inference is needed.
// Returns nullopt when fewer than two points remain and something is missing.
std::optional<Trajectory> InferSpeedHeading(const Trajectory& tr);

// Drops points whose speed is <= min_speed_kmh. Points without a speed are
// kept.
Trajectory FilterSlowPoints(const Trajectory& tr, double min_speed_kmh);

// Inserts floor(d / sr) equally spaced points between consecutive fixes whose
// headings differ by less than the angle gate.
Trajectory Densify(const Trajectory& tr, const IngestConfig& cfg);

struct PreprocessStats {
  std::size_t dropped_trajectories = 0;  // too short to infer from
  std::size_t slow_points_removed = 0;
};

// InferSpeedHeading followed by FilterSlowPoints; empty results are dropped.
std::vector<Trajectory> Preprocess(const std::vector<Trajectory>& trajectories,
                                   const IngestConfig& cfg,
                                   PreprocessStats* stats = nullptr);

}  // namespace mapinfer

#endif  // MAPINFER_INGEST_H_
