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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace mapinfer::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mapinfer_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  // Small synthetic world written under `prefix`.
  void Synth(const std::string& prefix, int traj = 30) {
    const Result r = Call({"synth", "--out", P(prefix), "--rows", "3", "--cols", "3", "--traj",
                           std::to_string(traj), "--seed", "5"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
  }

  fs::path dir_;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Call({}).code, kExitUsage);
  EXPECT_EQ(Call({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Call({"offline", "--out", P("x")}).code, kExitUsage);  // missing --input
  EXPECT_EQ(Call({"eval", "--inferred", P("a"), "--truth", P("b"), "--mode", "fast"}).code,
            kExitUsage);
  EXPECT_EQ(Call({"offline", "--input", P("x.csv"), "--out", P("x"), "--config"}).code,
            kExitUsage);
  EXPECT_EQ(Call({"--help"}).code, kExitOk);
}

TEST_F(CliTest, MissingInputNamesThePath) {
  const Result r = Call({"offline", "--input", P("nope.csv"), "--out", P("x")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("input file not found: " + P("nope.csv")), std::string::npos);
  const Result e = Call({"eval", "--inferred", P("nope.edges"), "--truth", P("nope.edges")});
  EXPECT_EQ(e.code, kExitUsage);
  EXPECT_NE(e.err.find("nope.edges"), std::string::npos);
}

TEST_F(CliTest, InvalidConfigValuesAreUsageErrors) {
  Synth("w");
  EXPECT_EQ(Call({"offline", "--input", P("w.csv"), "--out", P("o"), "--cr", "0"}).code,
            kExitUsage);
  EXPECT_EQ(Call({"online", "--input", P("w.csv"), "--out", P("o"), "--ha", "200"}).code,
            kExitUsage);
  EXPECT_EQ(Call({"offline", "--input", P("w.csv"), "--out", P("o"), "--cr", "abc"}).code,
            kExitUsage);
  EXPECT_EQ(Call({"synth", "--out", P("s"), "--rows", "1"}).code, kExitUsage);
  EXPECT_EQ(Call({"eval", "--inferred", P("w.truth.edges"), "--truth", P("w.truth.edges"),
                  "--thresholds", "5,x"})
                .code,
            kExitUsage);
}

TEST_F(CliTest, TopoNeedsTrajectories) {
  Synth("w");
  const Result r = Call({"eval", "--inferred", P("w.truth.edges"), "--truth",
                         P("w.truth.edges"), "--mode", "topo"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--trajectories"), std::string::npos);
}

TEST_F(CliTest, SynthOfflineEvalPipeline) {
  Synth("w", 60);
  ASSERT_TRUE(fs::exists(P("w.truth.edges")));
  ASSERT_TRUE(fs::exists(P("w.csv")));
  ASSERT_TRUE(fs::exists(P("w.manifest.json")));

  const Result off = Call({"offline", "--input", P("w.csv"), "--out", P("m")});
  ASSERT_EQ(off.code, kExitOk) << off.err;
  EXPECT_NE(off.out.find("stage kmeans"), std::string::npos);
  for (const char* ext : {".edges", ".geojson", ".manifest.json"}) {
    EXPECT_TRUE(fs::exists(P(std::string("m") + ext))) << ext;
  }

  const Result ev = Call({"eval", "--inferred", P("m.edges"), "--truth", P("w.truth.edges"),
                          "--trajectories", P("w.csv"), "--mode", "both", "--json", "--seed",
                          "11", "--topo-samples", "50", "--out", P("r")});
  ASSERT_EQ(ev.code, kExitOk) << ev.err;
  const auto doc = nlohmann::json::parse(ev.out);
  EXPECT_EQ(doc["seed"], 11);
  EXPECT_EQ(doc["geo"].size(), 6u);
  EXPECT_EQ(doc["topo"].size(), 6u);
  EXPECT_GT(doc["geo"][5]["f_score"].get<double>(), 0.8);
  EXPECT_EQ(nlohmann::json::parse(Slurp(P("r.report.json"))), doc);
  const auto manifest = nlohmann::json::parse(Slurp(P("r.manifest.json")));
  EXPECT_EQ(manifest["command"], "eval");
  EXPECT_EQ(manifest["inputs"].size(), 3u);
  EXPECT_EQ(manifest["inputs"][0]["fnv1a64"].get<std::string>().size(), 16u);

  // GeoJSON maps are accepted too.
  const Result gj = Call({"eval", "--inferred", P("m.geojson"), "--truth", P("w.truth.edges")});
  EXPECT_EQ(gj.code, kExitOk) << gj.err;
  EXPECT_NE(gj.out.find("geo_f"), std::string::npos);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  Synth("w");
  std::ofstream(P("run.cfg")) << "# offline settings\ncr = 30\nalpha=1.6\n\n";
  ASSERT_EQ(Call({"offline", "--config", P("run.cfg"), "--input", P("w.csv"), "--out", P("a")})
                .code,
            kExitOk);
  auto m = nlohmann::json::parse(Slurp(P("a.manifest.json")));
  EXPECT_DOUBLE_EQ(m["config"]["cluster"]["seed_radius_m"].get<double>(), 30.0);
  EXPECT_DOUBLE_EQ(m["config"]["cluster"]["theta_m"].get<double>(), 60.0);
  EXPECT_DOUBLE_EQ(m["config"]["spanner"]["alpha"].get<double>(), 1.6);

  ASSERT_EQ(Call({"offline", "--input", P("w.csv"), "--out", P("b"), "--cr", "25", "--config",
                  P("run.cfg")})
                .code,
            kExitOk);
  m = nlohmann::json::parse(Slurp(P("b.manifest.json")));
  EXPECT_DOUBLE_EQ(m["config"]["cluster"]["seed_radius_m"].get<double>(), 25.0);
  EXPECT_DOUBLE_EQ(m["config"]["spanner"]["alpha"].get<double>(), 1.6);

  std::ofstream(P("bad.cfg")) << "cr\n";
  EXPECT_EQ(Call({"offline", "--config", P("bad.cfg"), "--input", P("w.csv"), "--out", P("c")})
                .code,
            kExitUsage);
  EXPECT_EQ(Call({"offline", "--config", P("none.cfg"), "--input", P("w.csv"), "--out", P("c")})
                .code,
            kExitUsage);
}

TEST_F(CliTest, OnlineSnapshotsAndStdin) {
  Synth("w");
  const Result r = Call({"online", "--input", P("w.csv"), "--out", P("s"), "--snapshot-every",
                         "20"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(P("s.snapshot-000001.edges"))) << r.out;
  EXPECT_TRUE(fs::exists(P("s.snapshot-000002.edges")));
  EXPECT_TRUE(fs::exists(P("s.edges")));

  std::istringstream fake(Slurp(P("w.csv")));
  std::streambuf* old = std::cin.rdbuf(fake.rdbuf());
  const Result piped = Call({"online", "--input", "-", "--out", P("p")});
  std::cin.rdbuf(old);
  ASSERT_EQ(piped.code, kExitOk) << piped.err;
  EXPECT_EQ(Slurp(P("p.edges")), Slurp(P("s.edges")));
}

TEST_F(CliTest, EmptyInputWritesEmptyMap) {
  std::ofstream(P("empty.csv")) << "";
  for (const char* cmd : {"offline", "online"}) {
    const Result r = Call({cmd, "--input", P("empty.csv"), "--out", P(cmd)});
    EXPECT_EQ(r.code, kExitOk) << cmd << r.err;
    EXPECT_NE(r.err.find("warning"), std::string::npos) << cmd;
    EXPECT_EQ(Slurp(P(std::string(cmd) + ".edges")), "# kharita-map v1\n");
  }
  const Result ev = Call({"eval", "--inferred", P("offline.edges"), "--truth", P("offline.edges")});
  EXPECT_EQ(ev.code, kExitUsage);  // truth without edges
}

TEST_F(CliTest, MalformedMapIsRuntimeError) {
  Synth("w");
  std::ofstream(P("bad.edges")) << "# kharita-map v1\nN 0 1 2\n";
  const Result r = Call({"eval", "--inferred", P("bad.edges"), "--truth", P("w.truth.edges")});
  EXPECT_EQ(r.code, kExitRuntime);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST_F(CliTest, RerunsAreByteIdentical) {
  auto run_all = [&] {
    std::vector<std::string> files;
    EXPECT_EQ(Call({"synth", "--out", P("d"), "--rows", "4", "--cols", "4", "--oneway-fraction",
                    "0.5", "--roundabouts", "1", "--traj", "40", "--seed", "3"})
                  .code,
              kExitOk);
    EXPECT_EQ(Call({"offline", "--input", P("d.csv"), "--out", P("off")}).code, kExitOk);
    EXPECT_EQ(Call({"online", "--input", P("d.csv"), "--out", P("on")}).code, kExitOk);
    EXPECT_EQ(Call({"eval", "--inferred", P("off.edges"), "--truth", P("d.truth.edges"),
                    "--trajectories", P("d.csv"), "--mode", "both", "--seed", "4",
                    "--topo-samples", "30", "--out", P("ev")})
                  .code,
              kExitOk);
    for (const char* f : {"d.truth.edges", "d.csv", "d.manifest.json", "off.edges",
                          "off.geojson", "off.manifest.json", "on.edges", "on.geojson",
                          "on.manifest.json", "ev.report.json", "ev.manifest.json"}) {
      files.push_back(Slurp(P(f)));
    }
    return files;
  };
  const auto first = run_all();
  const auto second = run_all();
  ASSERT_EQ(first.size(), second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_FALSE(first[i].empty()) << i;
    EXPECT_EQ(first[i], second[i]) << i;
  }
}

}  // namespace
}  // namespace mapinfer::cli
