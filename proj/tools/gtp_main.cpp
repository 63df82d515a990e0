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

// gtp: command-line front end.
//
//   gtp [--seed S] [--samples K] [--exact] [--json] [--out PATH] <command> ...
//
//   verify    run the verification suite (exit 0 iff every criterion passes)
//   run       run one protocol configuration and print a JSON report
//   sweep     write the perturbed matched-basis sweep as CSV
//   optimize  maximize the all-accept efficiency over basis and phases
//
// Exit status: 0 success, 1 verification failure, 2 configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gtp/verify.hpp"

namespace {

using gtp::cli::ConfigError;
using gtp::cli::Json;

gtp::Grid parse_grid(const std::string& text, const char* what) {
  gtp::Grid g;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &g.start, &g.stop, &g.step, &extra) != 3) {
    throw ConfigError(std::string(what) + " must be start,stop,step");
  }
  return g;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file '" + out_path + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized teleportation protocol simulator and verifier"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> samples;
  bool exact = false;
  bool json = false;
  std::string out_path;
  app.add_option("--seed", seed, "RNG seed (default: $GTP_SEED, then 1)");
  app.add_option("--samples", samples, "Monte-Carlo samples")->check(CLI::PositiveNumber);
  app.add_flag("--exact", exact, "Use the exact transfer-operator average instead of sampling");
  app.add_flag("--json", json, "Machine-readable output where applicable");
  app.add_option("--out", out_path, "Write output to this file instead of stdout");

  auto* verify_cmd = app.add_subcommand("verify", "Run the verification suite");
  std::string grid = "coarse";
  double tolerance_scale = 1.0;
  verify_cmd->add_option("--grid", grid, "Monte-Carlo grid size")
      ->check(CLI::IsMember({"coarse", "fine"}));
  verify_cmd->add_option("--tolerance-scale", tolerance_scale)->group("");  // test hook

  auto* run_cmd = app.add_subcommand("run", "Run one protocol configuration");
  std::string config_path;
  std::vector<std::string> n_args, m_args, acceptance_args;
  std::string phases_arg, input_arg;
  run_cmd->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  run_cmd->add_option("--n", n_args, "Channel parameter per qubit: <abs> or <abs>@<phase>");
  run_cmd->add_option("--m", m_args, "Basis parameter per qubit: <abs> or <abs>@<phase>");
  run_cmd->add_option("--phases", phases_arg, "optimal | zero | dephasing")
      ->check(CLI::IsMember({"optimal", "zero", "dephasing"}));
  run_cmd->add_option("--acceptance", acceptance_args, "all | pqt | outcome labels");
  run_cmd->add_option("--input", input_arg, "haar | ket:<bits>");

  auto* sweep_cmd = app.add_subcommand("sweep", "Perturbed matched-basis sweep as CSV");
  std::string n_grid_arg, delta_grid_arg;
  sweep_cmd->add_option("--n-grid", n_grid_arg, "start,stop,step (default 0.05,1.0,0.05)");
  sweep_cmd->add_option("--delta-grid", delta_grid_arg,
                        "start,stop,step for n-m (default -0.3,0.3,0.025)");

  auto* optimize_cmd = app.add_subcommand("optimize", "Maximize the all-accept efficiency");
  std::vector<std::string> opt_n;
  std::string opt_n2, opt_n3;
  optimize_cmd->add_option("--n", opt_n, "Channel parameter(s)")->required();
  optimize_cmd->add_option("--n2", opt_n2, "Second channel parameter");
  optimize_cmd->add_option("--n3", opt_n3, "Third channel parameter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify_cmd) {
      gtp::verify::Options opt;
      opt.seed = gtp::cli::resolve_seed(seed);
      if (samples) opt.samples = *samples;
      opt.grid = grid == "fine" ? gtp::verify::GridSize::Fine : gtp::verify::GridSize::Coarse;
      opt.tolerance_scale = tolerance_scale;
      bool all_ok = true;
      std::string text;
      Json report = Json::array();
      for (const auto& fn : gtp::verify::all_criteria()) {
        const auto start = std::chrono::steady_clock::now();
        const auto r = fn(opt);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all_ok = all_ok && r.passed;
        std::fprintf(stderr, "criterion %d finished in %.2f s\n", r.id, secs);
        if (json) {
          report.push_back(Json{{"id", r.id},
                                {"name", r.name},
                                {"passed", r.passed},
                                {"detail", r.detail},
                                {"warnings", r.warnings}});
        } else {
          text += gtp::verify::format_line(r);
        }
      }
      if (json) {
        text = Json{{"seed", opt.seed}, {"samples", opt.samples}, {"passed", all_ok},
                    {"criteria", report}}
                   .dump(2) +
               "\n";
      } else {
        text += all_ok ? "ALL PASS\n" : "FAILED\n";
      }
      emit(text, out_path);
      return all_ok ? 0 : 1;
    }

    if (*run_cmd) {
      gtp::cli::RunConfig cfg;
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        Json j;
        try {
          j = Json::parse(f);
        } catch (const Json::parse_error& e) {
          throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        cfg = gtp::cli::config_from_json(j);
      }
      // Flags override the config file.
      if (!n_args.empty()) {
        cfg.n_list.clear();
        for (const auto& s : n_args) cfg.n_list.push_back(gtp::cli::parse_polar(s));
      }
      if (!m_args.empty()) {
        cfg.m_list.clear();
        for (const auto& s : m_args) cfg.m_list.push_back(gtp::cli::parse_polar(s));
      }
      if (!phases_arg.empty()) {
        cfg.phase_mode = phases_arg == "zero"        ? gtp::cli::PhaseMode::Zero
                         : phases_arg == "dephasing" ? gtp::cli::PhaseMode::Dephasing
                                                     : gtp::cli::PhaseMode::Optimal;
      }
      if (acceptance_args.size() == 1 &&
          (acceptance_args[0] == "all" || acceptance_args[0] == "pqt")) {
        cfg.acceptance = acceptance_args[0];
      } else if (!acceptance_args.empty()) {
        cfg.acceptance = acceptance_args;
      }
      if (!input_arg.empty()) cfg.input = input_arg;
      if (samples) cfg.samples = *samples;
      if (exact) cfg.exact = true;
      const std::uint64_t s = gtp::cli::resolve_seed(seed, cfg.seed);
      emit(gtp::cli::run_report(cfg, s).dump(2) + "\n", out_path);
      return 0;
    }

    if (*sweep_cmd) {
      gtp::SweepSpec spec;
      if (!n_grid_arg.empty()) spec.n_grid = parse_grid(n_grid_arg, "--n-grid");
      if (!delta_grid_arg.empty()) spec.delta_grid = parse_grid(delta_grid_arg, "--delta-grid");
      std::vector<gtp::SweepRow> rows;
      try {
        rows = gtp::run_sweep(spec, [](double n, double d) {
          std::fprintf(stderr, "warning: skipping n=%.6f delta=%.6f (m=n-delta outside (0,1])\n",
                       n, d + 0.0);
        });
      } catch (const gtp::ParameterError& e) {
        throw ConfigError(e.what());
      }
      emit(gtp::sweep_csv(rows), out_path);
      return 0;
    }

    if (*optimize_cmd) {
      std::vector<gtp::Complex> ns;
      for (const auto& s : opt_n) ns.push_back(gtp::cli::parse_polar(s));
      if (!opt_n2.empty()) ns.push_back(gtp::cli::parse_polar(opt_n2));
      if (!opt_n3.empty()) ns.push_back(gtp::cli::parse_polar(opt_n3));
      emit(gtp::cli::optimize_report(ns).dump(2) + "\n", out_path);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const gtp::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
