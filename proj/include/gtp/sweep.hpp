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

#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gtp/analytic.hpp"

namespace gtp {

/// Inclusive arithmetic grid start, start + step, ..., <= stop.
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  /// Grid points are start + i*step rounded to 12 decimals, so 0.05 * 20
  /// lands on 1 rather than 1.0000000000000002.
  std::vector<double> values() const {
    if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start) {
      throw ParameterError("grid needs finite start <= stop and step > 0");
    }
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) out.push_back(round_grid(start + static_cast<double>(i) * step));
    return out;
  }

  static double round_grid(double x) { return std::round(x * 1e12) / 1e12 + 0.0; }
};

struct SweepSpec {
  Grid n_grid{0.05, 1.0, 0.05};
  Grid delta_grid{-0.3, 0.3, 0.025};
};

struct SweepRow {
  double n = 0.0;
  double delta = 0.0;  // n - m
  double m = 0.0;
  PqtAttributes attributes;
};

/// One row per grid point with m = n - delta in (0, 1]; other points are
/// reported through `on_skip` and left out. Rows are n-major, delta-minor.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec,
                                       const std::function<void(double n, double delta)>& on_skip = {}) {
  const auto ns = spec.n_grid.values();
  const auto ds = spec.delta_grid.values();
  std::vector<SweepRow> rows;
  for (double n : ns) {
    if (!(n > 0.0 && n <= 1.0)) {
      throw ParameterError("sweep: n grid must lie in (0, 1]");
    }
    for (double d : ds) {
      const double m = Grid::round_grid(n - d);
      if (!(m > 0.0 && m <= 1.0)) {
        if (on_skip) on_skip(n, d);
        continue;
      }
      rows.push_back({n, d, m, pqt_attributes(n, m)});
    }
  }
  return rows;
}

inline constexpr const char* kSweepHeader = "n,delta,f_pqt,p_suc,c_pqt";

/// Fixed 6-decimal CSV, '\n' line endings.
inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = kSweepHeader;
  out += '\n';
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f,%.6f\n", r.n, r.delta + 0.0,
                  r.attributes.f_pqt, r.attributes.p_suc, r.attributes.c_pqt);
    out += buf;
  }
  return out;
}

}  // namespace gtp
