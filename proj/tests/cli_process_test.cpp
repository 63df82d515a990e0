// Copyright 2026 The gtp-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the built `gtp` binary as a subprocess.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "nlohmann/json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int status = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("gtp_cli_process_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Result gtp(const std::string& args, const std::string& env = "") {
  const fs::path err = scratch_dir() / "stderr.txt";
  const std::string cmd = env + " " + GTP_CLI_PATH + " " + args + " 2>" + err.string();
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.err = slurp(err);
  return r;
}

}  // namespace

TEST(cli_process, verify_exit_codes) {
  const Result ok = gtp("--samples 2000 verify");
  EXPECT_EQ(ok.status, 0) << ok.out << ok.err;
  EXPECT_NE(ok.out.find("ALL PASS"), std::string::npos);
  EXPECT_NE(ok.err.find("criterion 12 finished"), std::string::npos);
  EXPECT_EQ(ok.out.find("finished"), std::string::npos);

  // Zero tolerances make the exact comparisons fail.
  const Result bad = gtp("--samples 2000 verify --tolerance-scale 0");
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.out.find("FAIL "), std::string::npos);
  EXPECT_NE(bad.out.find("FAILED"), std::string::npos);
}

TEST(cli_process, verify_json) {
  const Result r = gtp("--samples 2000 --json verify");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["criteria"].size(), 12u);
}

TEST(cli_process, configuration_errors_exit_2) {
  EXPECT_EQ(gtp("").status, 2);
  EXPECT_EQ(gtp("bogus").status, 2);
  EXPECT_EQ(gtp("run --n 1.5").status, 2);
  EXPECT_EQ(gtp("run --n abc").status, 2);
  EXPECT_EQ(gtp("run").status, 2);
  EXPECT_EQ(gtp("run --n 1 --config /nonexistent/cfg.json").status, 2);
  EXPECT_EQ(gtp("sweep --n-grid 1,2").status, 2);
  EXPECT_EQ(gtp("sweep --n-grid 0,1,0.5").status, 2);
  EXPECT_EQ(gtp("optimize").status, 2);
  EXPECT_EQ(gtp("run --n 1", "GTP_SEED=notanumber").status, 2);
  EXPECT_EQ(gtp("--samples 0 run --n 1").status, 2);
  EXPECT_EQ(gtp("--help").status, 0);

  const fs::path cfg = scratch_dir() / "bad.json";
  std::ofstream(cfg) << R"({"n": [0.5], "unknown": true})";
  const Result r = gtp("run --config " + cfg.string());
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("unknown config key"), std::string::npos);
  std::ofstream(cfg) << "{not json";
  EXPECT_EQ(gtp("run --config " + cfg.string()).status, 2);
}

TEST(cli_process, run_config_file_and_flag_override) {
  const fs::path cfg = scratch_dir() / "run.json";
  std::ofstream(cfg) << R"({"n": [0.5], "m": [1], "input": "ket:0"})";
  const Result r = gtp("run --config " + cfg.string());
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["per_outcome"][0]["probability"].get<double>(), 0.4, 1e-15);

  const Result o = gtp("--exact run --config " + cfg.string() + " --input haar --n 0.3 --m 0.7");
  ASSERT_EQ(o.status, 0) << o.err;
  const auto k = nlohmann::json::parse(o.out);
  EXPECT_EQ(k["params"]["mode"], "exact");
  EXPECT_NEAR(k["c_pro"]["mean"].get<double>(), 0.8390698438, 1e-10);
}

TEST(cli_process, seed_sources_and_out_file) {
  const std::string args = "--samples 500 run --n 0.4 --m 0.9";
  const Result flag = gtp("--seed 9 " + args);
  const Result env = gtp(args, "GTP_SEED=9");
  const Result other = gtp(args, "GTP_SEED=10");
  ASSERT_EQ(flag.status, 0);
  EXPECT_EQ(flag.out, env.out);
  EXPECT_NE(flag.out, other.out);
  EXPECT_EQ(gtp("--seed 9 " + args, "GTP_SEED=10").out, flag.out);

  const fs::path out = scratch_dir() / "run_out.json";
  const Result to_file = gtp("--seed 9 --out " + out.string() + " " + args);
  EXPECT_EQ(to_file.status, 0);
  EXPECT_TRUE(to_file.out.empty());
  EXPECT_EQ(slurp(out), flag.out);
}

TEST(cli_process, sweep_output_and_skip_warnings) {
  const Result r = gtp("sweep --n-grid 0.05,0.1,0.05 --delta-grid 0,0.1,0.05");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("n,delta,f_pqt,p_suc,c_pqt\n", 0), 0u);
  EXPECT_NE(r.err.find("warning: skipping n=0.050000 delta=0.050000"), std::string::npos);
  const Result again = gtp("sweep --n-grid 0.05,0.1,0.05 --delta-grid 0,0.1,0.05");
  EXPECT_EQ(r.out, again.out);
}

TEST(cli_process, optimize_command) {
  const Result r = gtp("optimize --n 0.5 --n2 0.7");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["m_star"].size(), 2u);
  EXPECT_NEAR(j["c_channel"].get<double>(), j["closed_form"].get<double>(), 1e-4);
}
