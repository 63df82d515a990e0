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

#include "gtp/cli.hpp"

#include <cmath>
#include <cstdlib>

#include "gtest/gtest.h"

using namespace gtp;
using cli::ConfigError;
using cli::Json;

TEST(cli, parse_polar) {
  EXPECT_NEAR(std::abs(cli::parse_polar("0.5") - Complex(0.5, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(cli::parse_polar("1@1.5707963267948966") - Complex(0, 1)), 0.0, 1e-15);
  for (const char* bad : {"", "abc", "0.5@", "0.5@x", "-0.1", "0.5x"}) {
    EXPECT_THROW(cli::parse_polar(bad), ConfigError) << bad;
  }
}

TEST(cli, resolve_seed_precedence) {
  ::unsetenv("GTP_SEED");
  EXPECT_EQ(cli::resolve_seed(std::nullopt), cli::kDefaultSeed);
  ::setenv("GTP_SEED", "42", 1);
  EXPECT_EQ(cli::resolve_seed(std::nullopt), 42u);
  EXPECT_EQ(cli::resolve_seed(std::nullopt, 9), 9u);
  EXPECT_EQ(cli::resolve_seed(7, 9), 7u);
  ::setenv("GTP_SEED", "12x", 1);
  EXPECT_THROW(cli::resolve_seed(std::nullopt), ConfigError);
  ::unsetenv("GTP_SEED");
}

TEST(cli, config_from_json) {
  const auto cfg = cli::config_from_json(Json::parse(R"({
    "n": [0.5, [0.7, 1.0]], "m": [1, 1], "phases": "zero",
    "acceptance": ["Phi-,Psi+"], "input": "ket:01", "samples": 2000, "seed": 3, "exact": false})"));
  ASSERT_EQ(cfg.n_list.size(), 2u);
  EXPECT_NEAR(std::arg(cfg.n_list[1]), 1.0, 1e-15);
  EXPECT_EQ(cfg.phase_mode, cli::PhaseMode::Zero);
  EXPECT_EQ(cfg.samples, 2000);
  EXPECT_EQ(*cfg.seed, 3u);
  const auto r = cli::resolve(cfg);
  EXPECT_EQ(r.acceptance.size(), 1u);
  EXPECT_TRUE(r.input->approx_equal(StateVector::basis(2, 1)));

  const auto ex = cli::config_from_json(Json::parse(R"({"n": [1], "phases": [[0, 0.1, 0.2, 0.3]]})"));
  EXPECT_EQ(ex.phase_mode, cli::PhaseMode::Explicit);
  EXPECT_NEAR(cli::resolve(ex).params.phases[0].theta[3], 0.3, 1e-15);
}

TEST(cli, config_errors) {
  for (const char* text : {
           R"([1, 2])",
           R"({"n": [1], "bogus": 1})",
           R"({"n": "1"})",
           R"({"n": [-0.5]})",
           R"({"phases": "best"})",
           R"({"phases": [[1, 2]]})",
           R"({"samples": 1.5})",
           R"({"seed": -1})",
           R"({"exact": 1})",
           R"({"acceptance": 3})",
       }) {
    EXPECT_THROW(cli::config_from_json(Json::parse(text)), ConfigError) << text;
  }
  auto resolve_text = [](const char* text) { return cli::resolve(cli::config_from_json(Json::parse(text))); };
  EXPECT_THROW(resolve_text(R"({})"), ConfigError);
  EXPECT_THROW(resolve_text(R"({"n": [1, 1, 1, 1]})"), ConfigError);
  EXPECT_THROW(resolve_text(R"({"n": [1.2]})"), ConfigError);
  EXPECT_THROW(resolve_text(R"({"n": [1], "m": [1, 1]})"), ConfigError);
  EXPECT_THROW(resolve_text(R"({"n": [1], "acceptance": ["Phi-,Psi+"]})"), ConfigError);
  EXPECT_THROW(resolve_text(R"({"n": [1], "acceptance": []})"), ConfigError);
  EXPECT_THROW(resolve_text(R"({"n": [1], "input": "ket:01"})"), ConfigError);
  EXPECT_THROW(resolve_text(R"({"n": [1], "input": "ket:2"})"), ConfigError);
  EXPECT_THROW(resolve_text(R"({"n": [1], "input": [0, 0]})"), ConfigError);
  EXPECT_THROW(resolve_text(R"({"n": [1], "input": [1, 0, 0]})"), ConfigError);
  EXPECT_THROW(resolve_text(R"({"n": [1], "input": "mixed"})"), ConfigError);
  EXPECT_THROW(resolve_text(R"({"n": [1], "samples": 50})"), ConfigError);
  EXPECT_THROW(resolve_text(R"({"n": [1], "phases": [[0,0,0,0],[0,0,0,0]]})"), ConfigError);
}

TEST(cli, run_report_state_mode) {
  const auto cfg = cli::config_from_json(Json::parse(R"({"n": [0.5], "input": "ket:0"})"));
  const Json out = cli::run_report(cfg, 1);
  EXPECT_EQ(out["params"]["mode"], "state");
  EXPECT_NEAR(out["per_outcome"][0]["probability"].get<double>(), 0.4, 1e-15);
  EXPECT_NEAR(out["per_outcome"][2]["probability"].get<double>(), 0.1, 1e-15);
  EXPECT_NEAR(out["c_pro"].get<double>(), 1.0, 1e-12);
  EXPECT_FALSE(out["degenerate"].get<bool>());

  const auto inline_cfg = cli::config_from_json(Json::parse(R"({"n": [1], "input": [3, [0, 4]]})"));
  const Json inl = cli::run_report(inline_cfg, 1);
  EXPECT_NEAR(inl["params"]["input"][1][1].get<double>(), 0.8, 1e-15);

  const auto unreachable = cli::config_from_json(
      Json::parse(R"({"n": [0], "m": [0], "input": "ket:0", "acceptance": ["Psi+"]})"));
  const Json u = cli::run_report(unreachable, 1);
  EXPECT_TRUE(u["f_pro"].is_null());
  EXPECT_TRUE(u["per_outcome"][2]["fidelity"].is_null());
  EXPECT_TRUE(u["degenerate"].get<bool>());
}

TEST(cli, run_report_exact_mode_matches_the_closed_form) {
  const auto cfg = cli::config_from_json(Json::parse(R"({"n": [0.3], "m": [0.7], "exact": true})"));
  const Json out = cli::run_report(cfg, 1);
  EXPECT_EQ(out["params"]["mode"], "exact");
  EXPECT_NEAR(out["c_pro"]["mean"].get<double>(), c_pro_concurrence(0.3, 0.7), 1e-12);
  EXPECT_EQ(out["c_pro"]["std_error"].get<double>(), 0.0);
  EXPECT_EQ(out["per_outcome"].size(), 4u);
}

TEST(cli, run_report_monte_carlo_mode) {
  const auto cfg = cli::config_from_json(Json::parse(R"({"n": [0.3], "m": [0.7], "samples": 20000})"));
  const Json a = cli::run_report(cfg, 5);
  EXPECT_EQ(a["params"]["mode"], "monte_carlo");
  EXPECT_EQ(a["params"]["seed"], 5);
  const double mean = a["c_pro"]["mean"].get<double>();
  const double se = a["c_pro"]["std_error"].get<double>();
  EXPECT_LT(std::abs(mean - c_pro_concurrence(0.3, 0.7)), 4 * se);
  EXPECT_EQ(a.dump(), cli::run_report(cfg, 5).dump());
  EXPECT_NE(a.dump(), cli::run_report(cfg, 6).dump());
}

TEST(cli, optimize_report) {
  const Json out = cli::optimize_report({Complex(0.5, 0.0)});
  EXPECT_NEAR(out["c_channel"].get<double>(), out["closed_form"].get<double>(), 1e-4);
  EXPECT_FALSE(out["degenerate_maximizer"].get<bool>());
  EXPECT_THROW(cli::optimize_report({}), ConfigError);
  EXPECT_THROW(cli::optimize_report({Complex(2.0, 0.0)}), ConfigError);
}
