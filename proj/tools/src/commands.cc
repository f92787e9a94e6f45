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

#include "mapinfer/cli/commands.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string_view>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "mapinfer/error.h"
#include "mapinfer/graph_build.h"
#include "mapinfer/map_io.h"

namespace mapinfer::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// Raised for problems the user must fix on the command line.
struct UsageError {
  std::string message;
};

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string Hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<std::string> ReadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError{"cannot read config file: " + path};
  std::vector<std::string> flags;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = Trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw UsageError{path + ":" + std::to_string(line_no) + ": expected key=value"};
    }
    const std::string key = Trim(std::string_view(text).substr(0, eq));
    const std::string value = Trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) throw UsageError{path + ":" + std::to_string(line_no) + ": empty key"};
    flags.push_back("--" + key + "=" + value);
  }
  return flags;
}

// Replaces `--config FILE` / `--config=FILE` with the file's flags, placed
// right after the subcommand so later explicit flags override them.
std::vector<std::string> ExpandConfig(std::vector<std::string> args) {
  std::optional<std::string> config;
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError{"--config requires a file argument"};
      config = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
    } else {
      kept.push_back(std::move(args[i]));
    }
  }
  if (!config) return kept;
  if (kept.empty()) throw UsageError{"--config needs a subcommand"};
  std::vector<std::string> flags = ReadConfigFile(*config);
  kept.insert(kept.begin() + 1, flags.begin(), flags.end());
  return kept;
}

std::vector<double> ParseThresholds(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = Trim(item);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
      throw UsageError{"bad threshold list: " + text};
    }
    out.push_back(v);
  }
  return out;
}

std::string ReadAll(const std::string& path, bool allow_stdin) {
  if (allow_stdin && path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw UsageError{"input file not found: " + path};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot open input file: " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void RequireFile(const std::string& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw UsageError{"input file not found: " + path};
}

Json ToJson(const IngestConfig& c) {
  return {{"min_speed_kmh", c.min_speed_kmh},
          {"densify_spacing_m", c.densify_spacing_m},
          {"densify_angle_gate_deg", c.densify_angle_gate_deg},
          {"new_trajectory_gap_s", c.new_trajectory_gap_s}};
}

Json ToJson(const ClusterConfig& c) {
  return {{"seed_radius_m", c.seed_radius_m},
          {"theta_m", c.theta_m},
          {"split_threshold_deg", c.split_threshold_deg},
          {"convergence_ratio", c.convergence_ratio},
          {"max_iterations", c.max_iterations}};
}

Json ToJson(const SpannerConfig& c) {
  return {{"alpha", c.alpha}, {"duplex_speed_kmh", c.duplex_speed_kmh}};
}

Json ToJson(const OnlineConfig& c) {
  return {{"clustering_radius_m", c.clustering_radius_m},
          {"sampling_rate_m", c.sampling_rate_m},
          {"heading_tolerance_deg", c.heading_tolerance_deg},
          {"alpha", c.alpha},
          {"staleness_horizon_s", c.staleness_horizon_s},
          {"resparsify_interval", c.resparsify_interval}};
}

Json ToJson(const EvalConfig& c) {
  return {{"sample_spacing_m", c.sample_spacing_m},
          {"matching_thresholds_m", c.matching_thresholds_m},
          {"topo_radius_m", c.topo_radius_m},
          {"topo_samples", c.topo_samples},
          {"start_match_distance_m", c.start_match_distance_m},
          {"start_angle_tolerance_deg", c.start_angle_tolerance_deg},
          {"prune_distance_m", c.prune_distance_m},
          {"max_start_draws", c.max_start_draws},
          {"rng_seed", c.rng_seed}};
}

Json ToJson(const SyntheticConfig& c) {
  return {{"rows", c.world.rows},
          {"cols", c.world.cols},
          {"block_m", c.world.block_m},
          {"oneway_fraction", c.world.oneway_fraction},
          {"roundabouts", c.world.roundabouts},
          {"origin", {c.world.origin.lat, c.world.origin.lon}},
          {"n_trajectories", c.n_trajectories},
          {"noise_sigma_m", c.noise_sigma_m},
          {"heading_noise_deg", c.heading_noise_deg},
          {"min_spacing_m", c.min_spacing_m},
          {"max_spacing_m", c.max_spacing_m},
          {"rng_seed", c.rng_seed}};
}

struct InputRecord {
  std::string path;
  uint64_t hash;
};

void WriteManifest(const std::string& path, const std::string& command, Json config,
                   const std::vector<InputRecord>& inputs,
                   const std::vector<std::string>& outputs, uint64_t seed) {
  Json m;
  m["tool"] = "mapinfer";
  m["version"] = MAPINFER_VERSION;
  m["command"] = command;
  m["seed"] = seed;
  m["config"] = std::move(config);
  Json in = Json::array();
  for (const auto& r : inputs) in.push_back({{"path", r.path}, {"fnv1a64", Hex64(r.hash)}});
  m["inputs"] = std::move(in);
  m["outputs"] = outputs;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << m.dump(2) << '\n';
}

void PrintMapSummary(std::ostream& out, const RoadGraph& g) {
  std::size_t active_nodes = 0;
  for (const MapNode& n : g.nodes()) active_nodes += n.active ? 1 : 0;
  out << "nodes: " << g.num_nodes() << " (" << active_nodes << " active)\n";
  out << "edges: " << g.num_edges() << " (" << g.num_active_edges() << " active)\n";
}

void SaveMapOutputs(const std::string& prefix, const RoadGraph& g,
                    std::vector<std::string>& written) {
  SaveEdgeList(prefix + ".edges", g);
  SaveGeoJson(prefix + ".geojson", g);
  written.push_back(prefix + ".edges");
  written.push_back(prefix + ".geojson");
}

int RunOffline(RunConfig& cfg, const std::optional<double>& theta, std::ostream& out,
               std::ostream& err) {
  cfg.cluster.theta_m = theta.value_or(2.0 * cfg.cluster.seed_radius_m);
  cfg.ingest.Validate();
  cfg.cluster.Validate();
  cfg.spanner.Validate();
  const std::string content = ReadAll(cfg.input, false);
  std::istringstream in(content);

  RoadGraph map;
  PipelineReport report;
  ParseStats stats;
  try {
    const std::vector<Trajectory> trajectories = ParseTrajectories(in, cfg.ingest, &stats);
    map = RunOfflinePipeline(trajectories, cfg.ingest, cfg.cluster, cfg.spanner, &report);
  } catch (const Error& e) {
    if (e.kind() != Error::Kind::kEmptyInput) throw;
    err << "warning: " << cfg.input << ": " << e.what() << "; writing an empty map\n";
  }
  std::vector<std::string> written;
  SaveMapOutputs(cfg.output, map, written);
  WriteManifest(cfg.output + ".manifest.json", "offline",
                {{"ingest", ToJson(cfg.ingest)},
                 {"cluster", ToJson(cfg.cluster)},
                 {"spanner", ToJson(cfg.spanner)}},
                {{cfg.input, Fnv1a64(content)}}, written, cfg.rng_seed);

  out << "rows: " << stats.valid_rows << " valid, " << stats.malformed_rows << " malformed\n";
  for (const StageReport& s : report.stages) {
    char line[128];
    std::snprintf(line, sizeof(line), "stage %-16s %9.3f s  %zu\n", s.name.c_str(), s.seconds,
                  s.count);
    out << line;
  }
  PrintMapSummary(out, map);
  return kExitOk;
}

int RunOnline(RunConfig& cfg, std::size_t snapshot_every, std::ostream& out, std::ostream& err) {
  cfg.online.Validate();
  cfg.ingest.Validate();
  const std::string content = ReadAll(cfg.input, true);
  std::istringstream in(content);
  CsvRecordReader reader(in);
  OnlineRunner runner(cfg.online, cfg.ingest.min_speed_kmh, cfg.ingest.new_trajectory_gap_s);
  std::vector<std::string> written;
  std::size_t snapshots = 0;
  while (auto rec = reader.Next()) {
    runner.Observe(rec->vehicle_id, rec->point);
    if (snapshot_every > 0 && runner.state().pairs_processed() / snapshot_every > snapshots) {
      ++snapshots;
      char name[32];
      std::snprintf(name, sizeof(name), ".snapshot-%06zu.edges", snapshots);
      SaveEdgeList(cfg.output + name, runner.state().graph());
      written.push_back(cfg.output + name);
    }
  }
  runner.Finish();
  if (reader.valid_rows() == 0) {
    err << "warning: " << cfg.input << ": no valid trajectory rows; writing an empty map\n";
  }
  SaveMapOutputs(cfg.output, runner.state().graph(), written);
  WriteManifest(cfg.output + ".manifest.json", "online",
                {{"online", ToJson(cfg.online)},
                 {"min_speed_kmh", cfg.ingest.min_speed_kmh},
                 {"new_trajectory_gap_s", cfg.ingest.new_trajectory_gap_s},
                 {"snapshot_every", snapshot_every}},
                {{cfg.input, Fnv1a64(content)}}, written, cfg.rng_seed);

  out << "rows: " << reader.valid_rows() << " valid, " << reader.malformed_rows()
      << " malformed\n";
  out << "pairs: " << runner.state().pairs_processed() << ", slow fixes dropped: "
      << runner.dropped_slow() << "\n";
  PrintMapSummary(out, runner.state().graph());
  return kExitOk;
}

Json ScoresJson(const std::vector<ThresholdScore>& scores) {
  Json a = Json::array();
  for (const ThresholdScore& s : scores) {
    a.push_back({{"threshold_m", s.threshold_m},
                 {"precision", s.precision},
                 {"recall", s.recall},
                 {"f_score", s.f_score}});
  }
  return a;
}

int RunEval(RunConfig& cfg, const std::string& mode, const std::string& thresholds, bool json,
            std::ostream& out, std::ostream& err) {
  const bool want_geo = mode != "topo";
  const bool want_topo = mode != "geo";
  if (want_topo && cfg.trajectories.empty()) {
    throw UsageError{"--mode " + mode + " requires --trajectories"};
  }
  if (!thresholds.empty()) cfg.eval.matching_thresholds_m = ParseThresholds(thresholds);
  cfg.eval.rng_seed = cfg.rng_seed;
  cfg.eval.Validate();
  RequireFile(cfg.inferred);
  RequireFile(cfg.truth);
  std::vector<InputRecord> inputs{{cfg.inferred, HashFile(cfg.inferred)},
                                  {cfg.truth, HashFile(cfg.truth)}};
  const RoadGraph inferred = LoadMap(cfg.inferred);
  const RoadGraph truth = LoadMap(cfg.truth);

  EvalReport report;
  if (want_geo) report = GeoScore(inferred, truth, cfg.eval);
  if (want_topo) {
    const std::string content = ReadAll(cfg.trajectories, false);
    inputs.push_back({cfg.trajectories, Fnv1a64(content)});
    std::istringstream in(content);
    const std::vector<Trajectory> trajectories = ParseTrajectories(in, cfg.ingest);
    EvalReport topo = TopoScore(inferred, truth, trajectories, cfg.eval);
    topo.geo = std::move(report.geo);
    report = std::move(topo);
  }
  if (report.empty_inferred) err << "warning: inferred map has no active edges\n";

  Json doc;
  doc["seed"] = report.seed;
  doc["mode"] = mode;
  doc["marbles"] = report.marbles;
  doc["holes"] = report.holes;
  doc["empty_inferred"] = report.empty_inferred;
  if (want_geo) doc["geo"] = ScoresJson(report.geo);
  if (want_topo) {
    doc["topo"] = ScoresJson(report.topo);
    doc["topo_samples_used"] = report.topo_samples_used;
    doc["topo_samples_skipped"] = report.topo_samples_skipped;
    doc["truth_edges_pruned"] = report.truth_edges_pruned;
  }
  if (!cfg.output.empty()) {
    const std::string path = cfg.output + ".report.json";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write file: " + path);
    f << doc.dump(2) << '\n';
    WriteManifest(cfg.output + ".manifest.json", "eval",
                  {{"eval", ToJson(cfg.eval)}, {"mode", mode}}, inputs, {path}, cfg.rng_seed);
  }

  if (json) {
    out << doc.dump(2) << '\n';
    return kExitOk;
  }
  out << "seed " << report.seed << ", marbles " << report.marbles << ", holes " << report.holes;
  if (want_topo) {
    out << ", topo samples " << report.topo_samples_used << " (skipped "
        << report.topo_samples_skipped << ")";
  }
  out << "\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%-11s %-9s %-9s %-9s %-9s %-9s %-9s\n", "threshold_m",
                "geo_p", "geo_r", "geo_f", "topo_p", "topo_r", "topo_f");
  out << line;
  for (std::size_t k = 0; k < cfg.eval.matching_thresholds_m.size(); ++k) {
    auto cell = [](const std::vector<ThresholdScore>& v, std::size_t i, int which) {
      if (i >= v.size()) return std::string("-");
      const double x = which == 0 ? v[i].precision : which == 1 ? v[i].recall : v[i].f_score;
      char b[32];
      std::snprintf(b, sizeof(b), "%.4f", x);
      return std::string(b);
    };
    std::snprintf(line, sizeof(line), "%-11g %-9s %-9s %-9s %-9s %-9s %-9s\n",
                  cfg.eval.matching_thresholds_m[k], cell(report.geo, k, 0).c_str(),
                  cell(report.geo, k, 1).c_str(), cell(report.geo, k, 2).c_str(),
                  cell(report.topo, k, 0).c_str(), cell(report.topo, k, 1).c_str(),
                  cell(report.topo, k, 2).c_str());
    out << line;
  }
  return kExitOk;
}

int RunSynth(RunConfig& cfg, std::ostream& out) {
  cfg.synth.rng_seed = cfg.rng_seed;
  try {
    cfg.synth.Validate();
  } catch (const Error& e) {
    throw UsageError{e.what()};
  }
  const SyntheticData data = GenerateSynthetic(cfg.synth);
  const std::string truth_path = cfg.output + ".truth.edges";
  const std::string csv_path = cfg.output + ".csv";
  SaveEdgeList(truth_path, data.truth);
  SaveTrajectoriesCsv(csv_path, data.trajectories);
  WriteManifest(cfg.output + ".manifest.json", "synth", {{"synth", ToJson(cfg.synth)}}, {},
                {truth_path, csv_path}, cfg.rng_seed);
  std::size_t points = 0;
  for (const Trajectory& t : data.trajectories) points += t.points.size();
  out << "truth: " << data.truth.num_nodes() << " nodes, " << data.truth.num_edges()
      << " edges -> " << truth_path << "\n";
  out << "trajectories: " << data.trajectories.size() << " (" << points << " points) -> "
      << csv_path << "\n";
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::optional<double> theta;
  std::size_t snapshot_every = 0;
  std::string mode = "geo";
  std::string thresholds;
  bool json = false;

  CLI::App app{"Road map inference from GPS trajectories.", "mapinfer"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  const std::string config_help = "key=value file; explicit flags take precedence";

  auto* offline = app.add_subcommand("offline", "Batch map inference");
  offline->add_option("--config", config_help);
  offline->add_option("--input", cfg.input, "Trajectory CSV")->required();
  offline->add_option("--out", cfg.output, "Output prefix (.edges, .geojson)")->required();
  offline->add_option("--cr", cfg.cluster.seed_radius_m, "Seed radius in metres");
  offline->add_option("--theta", theta, "Angle penalty in metres (default 2*cr)");
  offline->add_option("--alpha", cfg.spanner.alpha, "Spanner stretch factor");
  offline->add_option("--sr", cfg.ingest.densify_spacing_m, "Densification spacing in metres");
  offline->add_option("--min-speed", cfg.ingest.min_speed_kmh, "Drop fixes at or below (km/h)");
  offline->add_option("--angle-gate", cfg.ingest.densify_angle_gate_deg,
                      "Densify only below this heading change (deg)");
  offline->add_option("--gap", cfg.ingest.new_trajectory_gap_s, "Trajectory split gap (s)");
  offline->add_option("--split-threshold", cfg.cluster.split_threshold_deg,
                      "Heading variability that triggers a split (deg)");
  offline->add_option("--convergence", cfg.cluster.convergence_ratio, "k-means stop ratio");
  offline->add_option("--max-iter", cfg.cluster.max_iterations, "k-means iteration cap");
  offline->add_option("--duplex-speed", cfg.spanner.duplex_speed_kmh,
                      "Add reverse edges at or below this speed (km/h)");
  offline->add_option("--seed", cfg.rng_seed, "Recorded in the manifest");

  auto* online = app.add_subcommand("online", "Streaming map inference");
  online->add_option("--config", config_help);
  online->add_option("--input", cfg.input, "Trajectory CSV in arrival order, or - for stdin")
      ->required();
  online->add_option("--out", cfg.output, "Output prefix")->required();
  online->add_option("--cr", cfg.online.clustering_radius_m, "Clustering radius in metres");
  online->add_option("--sr", cfg.online.sampling_rate_m, "Sampling rate in metres");
  online->add_option("--ha", cfg.online.heading_tolerance_deg, "Heading tolerance (deg)");
  online->add_option("--alpha", cfg.online.alpha, "Spanner stretch factor");
  online->add_option("--horizon", cfg.online.staleness_horizon_s, "Staleness horizon (s)");
  online->add_option("--resparsify-every", cfg.online.resparsify_interval,
                     "Resparsify after this many pairs");
  online->add_option("--min-speed", cfg.ingest.min_speed_kmh, "Drop fixes at or below (km/h)");
  online->add_option("--gap", cfg.ingest.new_trajectory_gap_s, "Trajectory split gap (s)");
  online->add_option("--snapshot-every", snapshot_every,
                     "Write a numbered snapshot every N pairs (0 = off)");
  online->add_option("--seed", cfg.rng_seed, "Recorded in the manifest");

  auto* eval = app.add_subcommand("eval", "Compare an inferred map against ground truth");
  eval->add_option("--config", config_help);
  eval->add_option("--inferred", cfg.inferred, "Inferred map (.edges or .geojson)")->required();
  eval->add_option("--truth", cfg.truth, "Ground-truth map (.edges or .geojson)")->required();
  eval->add_option("--trajectories", cfg.trajectories, "Trajectory CSV (needed for TOPO)");
  eval->add_option("--mode", mode, "geo, topo or both")
      ->check(CLI::IsMember({"geo", "topo", "both"}));
  eval->add_flag("--json", json, "Print the report as JSON");
  eval->add_option("--out", cfg.output, "Also write <out>.report.json and a manifest");
  eval->add_option("--spacing", cfg.eval.sample_spacing_m, "Sample spacing in metres");
  eval->add_option("--thresholds", thresholds, "Comma-separated matching thresholds (m)");
  eval->add_option("--topo-radius", cfg.eval.topo_radius_m, "TOPO graph radius (m)");
  eval->add_option("--topo-samples", cfg.eval.topo_samples, "TOPO start samples");
  eval->add_option("--start-distance", cfg.eval.start_match_distance_m,
                   "Max marble-hole distance of a start pair (m)");
  eval->add_option("--start-angle", cfg.eval.start_angle_tolerance_deg,
                   "Max heading difference of a start pair (deg)");
  eval->add_option("--prune-distance", cfg.eval.prune_distance_m,
                   "Truth edges with no trajectory point this close are pruned (m)");
  eval->add_option("--max-start-draws", cfg.eval.max_start_draws, "Start draws per sample");
  eval->add_option("--seed", cfg.rng_seed, "TOPO sampling seed");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic ground truth and trajectories");
  synth->add_option("--config", config_help);
  synth->add_option("--out", cfg.output, "Output prefix (.truth.edges, .csv)")->required();
  synth->add_option("--rows", cfg.synth.world.rows, "Intersection rows");
  synth->add_option("--cols", cfg.synth.world.cols, "Intersection columns");
  synth->add_option("--block", cfg.synth.world.block_m, "Block length (m)");
  synth->add_option("--oneway-fraction", cfg.synth.world.oneway_fraction,
                    "Probability that a street is one-way");
  synth->add_option("--roundabouts", cfg.synth.world.roundabouts, "Number of roundabouts");
  synth->add_option("--traj", cfg.synth.n_trajectories, "Number of trajectories");
  synth->add_option("--noise", cfg.synth.noise_sigma_m, "Position noise sigma (m)");
  synth->add_option("--heading-noise", cfg.synth.heading_noise_deg, "Heading noise sigma (deg)");
  synth->add_option("--spacing-min", cfg.synth.min_spacing_m, "Minimum sampling spacing (m)");
  synth->add_option("--spacing-max", cfg.synth.max_spacing_m, "Maximum sampling spacing (m)");
  synth->add_option("--seed", cfg.rng_seed, "RNG seed");

  try {
    std::vector<std::string> args = ExpandConfig(raw_args);
    std::vector<char*> argv;
    std::string prog = "mapinfer";
    argv.push_back(prog.data());
    for (std::string& a : args) argv.push_back(a.data());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }
    if (offline->parsed()) return RunOffline(cfg, theta, out, err);
    if (online->parsed()) return RunOnline(cfg, snapshot_every, out, err);
    if (eval->parsed()) return RunEval(cfg, mode, thresholds, json, out, err);
    return RunSynth(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == Error::Kind::kInvalidArgument ? kExitUsage : kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace mapinfer::cli
