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

// Channel efficiency: the all-accept protocol efficiency maximized over the
// basis parameters m_k in [0, 1] and the four phase arguments xi_{k,j} in
// [0, 2pi) of every channel, for fixed channels n_k.
//
// Derivative-free coordinate search. Coordinates are visited channel by
// channel, the four xi first and then m. Stage 0 scans each coordinate over
// its whole range on a grid of step 0.05; stages 1 and 2 shrink the step by
// 10x and rescan a window of +-(previous step) around the incumbent. Each
// stage cycles until a full pass yields no improvement. The search starts
// at the center of the box (m = 0.5, xi = pi).

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "gtp/analytic.hpp"

namespace gtp {

struct OptimizeResult {
  std::vector<double> m_star;
  std::vector<std::array<double, 4>> xi_star;  // in [0, 2pi)
  double c_channel = 0.0;
  /// Some coordinate never changed the objective during the full-range scan,
  /// so its reported value is arbitrary.
  bool degenerate = false;
  int evaluations = 0;
};

/// Protocol parameters that realize the given basis magnitudes and xi table.
inline MultiParams params_for_xi(std::span<const ChannelParam> n_list, std::span<const double> m_list,
                                 std::span<const std::array<double, 4>> xi_list) {
  MultiParams p;
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    p.n_list.push_back(n_list[k]);
    p.m_list.emplace_back(Complex(m_list[k], 0.0));
    CorrectionPhases ph;
    for (auto kind : kAllOutcomes) {
      ph[kind] = theta_for_xi(kind, n_list[k].phase(), 0.0, xi_list[k][index_of(kind)]);
    }
    p.phases.push_back(ph);
  }
  return p;
}

inline OptimizeResult optimize_channel(std::span<const ChannelParam> n_list) {
  if (n_list.empty() || n_list.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw ParameterError("optimize: number of channels must be in [1, 3]");
  }
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  constexpr double kInitialStep = 0.05;
  constexpr double kImprovement = 1e-15;
  const std::size_t num = n_list.size();
  const int num_qubits = static_cast<int>(num);
  const AcceptanceSet accept_all = AcceptanceSet::all(num_qubits);

  std::vector<double> m(num, 0.5);
  std::vector<std::array<double, 4>> xis(num, {std::numbers::pi, std::numbers::pi,
                                               std::numbers::pi, std::numbers::pi});
  OptimizeResult res;

  auto objective = [&] {
    ++res.evaluations;
    return exact_protocol_average(params_for_xi(n_list, m, xis), accept_all).c_pro;
  };
  // Coordinate c: channel c / 5, slot c % 5 (0..3 = xi_j, 4 = m).
  auto coord = [&](std::size_t c) -> double& {
    const std::size_t k = c / 5, slot = c % 5;
    return slot == 4 ? m[k] : xis[k][slot];
  };
  auto is_angle = [](std::size_t c) { return c % 5 != 4; };
  const std::size_t num_coords = 5 * num;

  double best = objective();
  std::vector<bool> varied(num_coords, false);

  double step = kInitialStep;
  for (int stage = 0; stage < 3; ++stage) {
    const double window = stage == 0 ? 0.0 : 10.0 * step;  // previous stage's step
    for (int pass = 0; pass < 100; ++pass) {
      bool improved = false;
      for (std::size_t c = 0; c < num_coords; ++c) {
        double& x = coord(c);
        const double incumbent = x;
        std::vector<double> candidates;
        if (stage == 0) {
          const double hi = is_angle(c) ? kTwoPi : 1.0;
          const int count = is_angle(c) ? static_cast<int>(std::ceil(hi / step - 1e-9))
                                        : static_cast<int>(std::lround(hi / step)) + 1;
          for (int i = 0; i < count; ++i) candidates.push_back(i * step);
        } else {
          const int half = static_cast<int>(std::lround(window / step));
          for (int i = -half; i <= half; ++i) {
            double v = incumbent + i * step;
            if (is_angle(c)) {
              v = std::fmod(v, kTwoPi);
              if (v < 0) v += kTwoPi;
            } else if (v < -1e-12 || v > 1.0 + 1e-12) {
              continue;
            }
            candidates.push_back(std::clamp(v, 0.0, is_angle(c) ? kTwoPi : 1.0));
          }
        }
        double lo_seen = std::numeric_limits<double>::infinity();
        double hi_seen = -lo_seen;
        double arg_best = incumbent;
        double val_best = best;
        for (double v : candidates) {
          x = v;
          const double f = objective();
          lo_seen = std::min(lo_seen, f);
          hi_seen = std::max(hi_seen, f);
          if (f > val_best + kImprovement) {
            val_best = f;
            arg_best = v;
          }
        }
        x = arg_best;
        if (hi_seen - lo_seen > 1e-12) varied[c] = true;
        if (val_best > best + kImprovement) {
          best = val_best;
          improved = true;
        }
      }
      if (!improved) break;
    }
    step *= 0.1;
  }

  res.m_star = m;
  res.xi_star = xis;
  res.c_channel = best;
  res.degenerate = std::find(varied.begin(), varied.end(), false) != varied.end();
  return res;
}

}  // namespace gtp
