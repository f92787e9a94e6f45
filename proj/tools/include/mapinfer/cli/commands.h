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

#ifndef MAPINFER_CLI_COMMANDS_H_
#define MAPINFER_CLI_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mapinfer/clustering.h"
#include "mapinfer/eval.h"
#include "mapinfer/ingest.h"
#include "mapinfer/online.h"
#include "mapinfer/spanner.h"
#include "mapinfer/synthetic.h"

namespace mapinfer::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Everything a run depends on. Each subcommand fills the parts it uses and
// records the whole struct in its manifest.
struct RunConfig {
  IngestConfig ingest;
  ClusterConfig cluster;
  SpannerConfig spanner;
  OnlineConfig online;
  EvalConfig eval;
  SyntheticConfig synth;
  std::string input;
  std::string output;
  std::string inferred;
  std::string truth;
  std::string trajectories;
  uint64_t rng_seed = 0;
};

// Runs `mapinfer <args...>` (args exclude the program name). A
// `--config FILE` option anywhere after the subcommand injects the file's
// key=value lines as `--key=value` flags ahead of the real ones, so explicit
// flags win.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mapinfer::cli

#endif  // MAPINFER_CLI_COMMANDS_H_
