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

// Front-end logic behind the `gtp` executable: run configuration, JSON
// reports, sweep CSV and optimizer output. Everything here returns strings
// so the same code paths can be exercised in-process by the tests.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "gtp/analytic.hpp"
#include "gtp/optimize.hpp"
#include "gtp/sampler.hpp"
#include "gtp/sweep.hpp"

namespace gtp::cli {

using Json = nlohmann::ordered_json;

/// Bad user input; the executable maps it to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr std::int64_t kDefaultVerifySamples = 100000;

/// --seed, then GTP_SEED, then kDefaultSeed.
inline std::uint64_t resolve_seed(std::optional<std::uint64_t> flag,
                                  std::optional<std::uint64_t> config = std::nullopt) {
  if (flag) return *flag;
  if (config) return *config;
  if (const char* env = std::getenv("GTP_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("GTP_SEED is not an unsigned integer: ") + env);
  }
  return kDefaultSeed;
}

enum class PhaseMode { Optimal, Zero, Dephasing, Explicit };

struct RunConfig {
  std::vector<Complex> n_list;
  std::vector<Complex> m_list;
  PhaseMode phase_mode = PhaseMode::Optimal;
  std::vector<std::array<double, 4>> explicit_phases;
  /// "all", "pqt", or explicit outcome labels.
  std::variant<std::string, std::vector<std::string>> acceptance = std::string("all");
  /// "haar", "ket:<bits>", or inline amplitudes.
  std::variant<std::string, std::vector<Complex>> input = std::string("haar");
  std::int64_t samples = kDefaultVerifySamples;
  std::optional<std::uint64_t> seed;
  bool exact = false;
};

/// "0.5" or "0.5@0.785" (magnitude@phase in radians).
inline Complex parse_polar(const std::string& text) {
  try {
    const auto at = text.find('@');
    std::size_t used = 0;
    const double mag = std::stod(text.substr(0, at), &used);
    if (used != (at == std::string::npos ? text.size() : at)) throw ConfigError("");
    double phase = 0.0;
    if (at != std::string::npos) {
      const std::string rest = text.substr(at + 1);
      phase = std::stod(rest, &used);
      if (used != rest.size()) throw ConfigError("");
    }
    if (mag < 0.0) throw ConfigError("");
    return std::polar(mag, phase);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse parameter '" + text + "' (expected <abs> or <abs>@<phase>)");
  }
}

namespace detail {
inline Complex json_polar(const Json& j, const char* what) {
  if (j.is_number()) {
    const double v = j.get<double>();
    if (v < 0.0) throw ConfigError(std::string(what) + " magnitudes must be >= 0");
    return {v, 0.0};
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    if (j[0].get<double>() < 0.0) throw ConfigError(std::string(what) + " magnitudes must be >= 0");
    return std::polar(j[0].get<double>(), j[1].get<double>());
  }
  throw ConfigError(std::string(what) + " entries must be numbers or [abs, phase] pairs");
}

inline Complex json_amplitude(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ConfigError("input amplitudes must be numbers or [re, im] pairs");
}
}  // namespace detail

/// Reads the JSON config file schema documented in the README.
inline RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  auto polar_list = [](const Json& arr, const char* what) {
    if (!arr.is_array()) throw ConfigError(std::string(what) + " must be an array");
    std::vector<Complex> out;
    for (const auto& e : arr) out.push_back(detail::json_polar(e, what));
    return out;
  };
  for (const auto& [key, value] : j.items()) {
    if (key == "n") {
      cfg.n_list = polar_list(value, "n");
    } else if (key == "m") {
      cfg.m_list = polar_list(value, "m");
    } else if (key == "phases") {
      if (value.is_string()) {
        const auto s = value.get<std::string>();
        if (s == "optimal") cfg.phase_mode = PhaseMode::Optimal;
        else if (s == "zero") cfg.phase_mode = PhaseMode::Zero;
        else if (s == "dephasing") cfg.phase_mode = PhaseMode::Dephasing;
        else throw ConfigError("phases must be optimal, zero, dephasing or an explicit table");
      } else if (value.is_array()) {
        cfg.phase_mode = PhaseMode::Explicit;
        for (const auto& row : value) {
          if (!row.is_array() || row.size() != 4) {
            throw ConfigError("explicit phases need four angles per channel (Phi+,Phi-,Psi+,Psi-)");
          }
          std::array<double, 4> t{};
          for (std::size_t i = 0; i < 4; ++i) {
            if (!row[i].is_number()) throw ConfigError("phase angles must be numbers");
            t[i] = row[i].get<double>();
          }
          cfg.explicit_phases.push_back(t);
        }
      } else {
        throw ConfigError("phases must be a string or an array");
      }
    } else if (key == "acceptance") {
      if (value.is_string()) {
        cfg.acceptance = value.get<std::string>();
      } else if (value.is_array()) {
        std::vector<std::string> labels;
        for (const auto& e : value) {
          if (!e.is_string()) throw ConfigError("acceptance labels must be strings");
          labels.push_back(e.get<std::string>());
        }
        cfg.acceptance = labels;
      } else {
        throw ConfigError("acceptance must be \"all\", \"pqt\" or a list of outcomes");
      }
    } else if (key == "input") {
      if (value.is_string()) {
        cfg.input = value.get<std::string>();
      } else if (value.is_array()) {
        std::vector<Complex> amps;
        for (const auto& e : value) amps.push_back(detail::json_amplitude(e));
        cfg.input = amps;
      } else {
        throw ConfigError("input must be \"haar\", \"ket:<bits>\" or an amplitude list");
      }
    } else if (key == "samples") {
      if (!value.is_number()) throw ConfigError("samples must be a number");
      const double s = value.get<double>();
      if (s != std::floor(s) || s < 1) throw ConfigError("samples must be a positive integer");
      cfg.samples = static_cast<std::int64_t>(s);
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw ConfigError("seed must be an unsigned integer");
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "exact") {
      if (!value.is_boolean()) throw ConfigError("exact must be a boolean");
      cfg.exact = value.get<bool>();
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

struct ResolvedRun {
  MultiParams params;
  AcceptanceSet acceptance{1, 1};
  std::optional<StateVector> input;  // empty for Haar averaging
};

inline StateVector parse_ket(const std::string& bits, int num_qubits) {
  if (static_cast<int>(bits.size()) != num_qubits) {
    throw ConfigError("ket:" + bits + " must have one bit per channel (" +
                      std::to_string(num_qubits) + ")");
  }
  std::size_t idx = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ConfigError("ket bitstring may only contain 0 and 1");
    idx = (idx << 1) | static_cast<std::size_t>(c - '0');
  }
  return StateVector::basis(num_qubits, idx);
}

/// Validates a config against the engine preconditions.
inline ResolvedRun resolve(const RunConfig& cfg) {
  if (cfg.n_list.empty()) throw ConfigError("at least one channel parameter n is required");
  if (cfg.n_list.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw ConfigError("at most 3 channels are supported");
  }
  std::vector<Complex> m_values = cfg.m_list;
  if (m_values.empty()) m_values.assign(cfg.n_list.size(), Complex(1.0, 0.0));
  if (m_values.size() != cfg.n_list.size()) throw ConfigError("n and m must have the same length");
  const int num = static_cast<int>(cfg.n_list.size());

  ResolvedRun r;
  try {
    for (std::size_t k = 0; k < cfg.n_list.size(); ++k) {
      r.params.n_list.emplace_back(cfg.n_list[k]);
      r.params.m_list.emplace_back(m_values[k]);
    }
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  switch (cfg.phase_mode) {
    case PhaseMode::Optimal:
      for (int k = 0; k < num; ++k) {
        r.params.phases.push_back(optimal_phases(r.params.n_list[static_cast<std::size_t>(k)],
                                                 r.params.m_list[static_cast<std::size_t>(k)]));
      }
      break;
    case PhaseMode::Zero:
      r.params.phases.assign(static_cast<std::size_t>(num), CorrectionPhases::zero());
      break;
    case PhaseMode::Dephasing:
      for (const auto& n : r.params.n_list) r.params.phases.push_back(dephasing_correction(n.phase()));
      break;
    case PhaseMode::Explicit:
      if (cfg.explicit_phases.size() != static_cast<std::size_t>(num)) {
        throw ConfigError("explicit phases need one row per channel");
      }
      for (const auto& t : cfg.explicit_phases) r.params.phases.push_back(CorrectionPhases{t});
      break;
  }

  try {
    if (const auto* s = std::get_if<std::string>(&cfg.acceptance)) {
      if (*s == "all") r.acceptance = AcceptanceSet::all(num);
      else if (*s == "pqt") r.acceptance = pqt_acceptance(num);
      else r.acceptance = acceptance_from_labels(num, std::vector<std::string>{*s});
    } else {
      const auto& labels = std::get<std::vector<std::string>>(cfg.acceptance);
      if (labels.empty()) throw ConfigError("acceptance set must not be empty");
      r.acceptance = acceptance_from_labels(num, labels);
    }
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }

  if (const auto* s = std::get_if<std::string>(&cfg.input)) {
    if (*s == "haar") {
      // averaged run
    } else if (s->rfind("ket:", 0) == 0) {
      r.input = parse_ket(s->substr(4), num);
    } else {
      throw ConfigError("input must be \"haar\", \"ket:<bits>\" or an amplitude list");
    }
  } else {
    const auto& amps = std::get<std::vector<Complex>>(cfg.input);
    if (amps.size() != (std::size_t{1} << num)) {
      throw ConfigError("inline input needs 2^N = " + std::to_string(std::size_t{1} << num) +
                        " amplitudes");
    }
    Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) v[static_cast<Eigen::Index>(i)] = amps[i];
    try {
      r.input = StateVector(v).normalized();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("invalid input amplitudes: ") + e.what());
    }
  }
  if (!r.input && !cfg.exact && cfg.samples < 100) {
    throw ConfigError("Monte-Carlo runs need at least 100 samples");
  }
  return r;
}

inline Json estimate_json(const Estimate& e) {
  return Json{{"mean", e.mean}, {"std_error", e.std_error}, {"samples", e.samples}};
}

inline Json optional_json(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

/// JSON report for `gtp run`. `seed` is used only for Monte-Carlo inputs.
inline Json run_report(const RunConfig& cfg, std::uint64_t seed) {
  const ResolvedRun r = resolve(cfg);
  const int num = r.params.num_qubits();
  const std::size_t count = std::size_t{1} << (2 * num);

  Json params;
  auto polar_json = [](Complex z) { return Json::array({std::abs(z), std::arg(z)}); };
  params["n"] = Json::array();
  params["m"] = Json::array();
  params["phases"] = Json::array();
  for (int k = 0; k < num; ++k) {
    params["n"].push_back(polar_json(r.params.n_list[static_cast<std::size_t>(k)].value()));
    params["m"].push_back(polar_json(r.params.m_list[static_cast<std::size_t>(k)].value()));
    const auto& t = r.params.phases[static_cast<std::size_t>(k)].theta;
    params["phases"].push_back(Json::array({t[0], t[1], t[2], t[3]}));
  }
  params["acceptance"] = Json::array();
  for (std::size_t idx = 0; idx < count; ++idx) {
    if (r.acceptance.contains(idx)) {
      params["acceptance"].push_back(JointOutcome::from_index(idx, num).label());
    }
  }

  Json out;
  if (r.input) {
    Json in = Json::array();
    for (std::size_t i = 0; i < r.input->dim(); ++i) {
      in.push_back(Json::array({(*r.input)[i].real(), (*r.input)[i].imag()}));
    }
    params["input"] = in;
    params["mode"] = "state";
    out["params"] = params;
    const auto records = run_multi(*r.input, r.params);
    const ProtocolReport rep = joint_report(records, r.acceptance);
    Json per = Json::array();
    for (const auto& o : rep.per_outcome) {
      per.push_back(Json{{"outcome", o.outcome},
                         {"probability", o.probability},
                         {"fidelity", optional_json(o.fidelity)}});
    }
    out["per_outcome"] = per;
    out["p_suc"] = rep.p_suc;
    out["c_pro"] = rep.c_pro;
    out["f_pro"] = optional_json(rep.f_pro);
    out["degenerate"] = rep.degenerate;
    return out;
  }

  params["input"] = "haar";
  if (cfg.exact) {
    params["mode"] = "exact";
    out["params"] = params;
    const ExactAverages ex = exact_protocol_average(r.params, r.acceptance);
    Json per = Json::array();
    for (std::size_t idx = 0; idx < count; ++idx) {
      const bool reachable = ex.prob[idx] > kDegenerateSuccess;
      per.push_back(Json{{"outcome", JointOutcome::from_index(idx, num).label()},
                         {"probability", estimate_json(Estimate::exact(ex.prob[idx]))},
                         {"pf", estimate_json(Estimate::exact(ex.pf[idx]))},
                         {"fidelity", reachable ? estimate_json(Estimate::exact(ex.pf[idx] / ex.prob[idx]))
                                                : Json(nullptr)}});
    }
    out["per_outcome"] = per;
    out["p_suc"] = estimate_json(Estimate::exact(ex.p_suc));
    out["c_pro"] = estimate_json(Estimate::exact(ex.c_pro));
    out["f_pro"] = ex.f_pro ? estimate_json(Estimate::exact(*ex.f_pro)) : Json(nullptr);
    out["degenerate"] = ex.degenerate;
    return out;
  }

  params["mode"] = "monte_carlo";
  params["samples"] = cfg.samples;
  params["seed"] = seed;
  out["params"] = params;
  const McAverages mc = mc_protocol_average(r.params, r.acceptance, cfg.samples, seed);
  Json per = Json::array();
  for (std::size_t idx = 0; idx < count; ++idx) {
    const auto& o = mc.per_outcome[idx];
    per.push_back(Json{{"outcome", JointOutcome::from_index(idx, num).label()},
                       {"probability", estimate_json(o.probability)},
                       {"pf", estimate_json(o.pf)},
                       {"fidelity", o.probability.mean > 0.0 ? estimate_json(o.fidelity)
                                                             : Json(nullptr)}});
  }
  out["per_outcome"] = per;
  out["p_suc"] = estimate_json(mc.p_suc);
  out["c_pro"] = estimate_json(mc.c_pro);
  out["f_pro"] = mc.p_suc.mean > 0.0 ? estimate_json(mc.f_pro) : Json(nullptr);
  out["degenerate"] = mc.degenerate;
  return out;
}

inline Json optimize_report(const std::vector<Complex>& n_values) {
  std::vector<ChannelParam> channels;
  try {
    for (Complex n : n_values) channels.emplace_back(n);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  if (channels.empty() || channels.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw ConfigError("optimize needs between 1 and 3 channel parameters");
  }
  const OptimizeResult res = optimize_channel(channels);
  std::vector<double> chis;
  for (const auto& n : channels) chis.push_back(chi(n.value(), 1.0));
  Json out;
  out["n"] = Json::array();
  for (Complex n : n_values) out["n"].push_back(Json::array({std::abs(n), std::arg(n)}));
  out["m_star"] = res.m_star;
  out["xi_star"] = Json::array();
  for (const auto& x : res.xi_star) out["xi_star"].push_back(Json::array({x[0], x[1], x[2], x[3]}));
  out["c_channel"] = res.c_channel;
  out["closed_form"] = c_pro_N(chis);
  out["degenerate_maximizer"] = res.degenerate;
  out["evaluations"] = res.evaluations;
  return out;
}

}  // namespace gtp::cli
