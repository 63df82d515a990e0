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

#include "gtp/sweep.hpp"

#include <sstream>

#include "gtest/gtest.h"

using namespace gtp;

TEST(sweep, grid_values_are_rounded_and_inclusive) {
  const auto v = Grid{0.05, 1.0, 0.05}.values();
  ASSERT_EQ(v.size(), 20u);
  EXPECT_EQ(v.front(), 0.05);
  EXPECT_EQ(v[2], 0.15);
  EXPECT_EQ(v.back(), 1.0);
  const auto d = Grid{-0.3, 0.3, 0.025}.values();
  ASSERT_EQ(d.size(), 25u);
  EXPECT_EQ(d[12], 0.0);
  EXPECT_FALSE(std::signbit(d[12]));
}

TEST(sweep, default_rows) {
  std::vector<std::pair<double, double>> skipped;
  const auto rows = run_sweep({}, [&](double n, double d) { skipped.emplace_back(n, d); });
  EXPECT_EQ(rows.size() + skipped.size(), 20u * 25u);
  for (const auto& r : rows) {
    EXPECT_GT(r.m, 0.0);
    EXPECT_LE(r.m, 1.0);
    EXPECT_NEAR(r.n - r.delta, r.m, 1e-12);
    const auto a = pqt_attributes(r.n, r.m);
    EXPECT_EQ(r.attributes.p_suc, a.p_suc);
    EXPECT_NEAR(r.attributes.c_pqt, r.attributes.f_pqt * r.attributes.p_suc, 1e-12);
    if (r.delta == 0.0) {
      EXPECT_NEAR(r.attributes.f_pqt, 1.0, 1e-12);
      EXPECT_NEAR(r.attributes.p_suc, c_pqt(r.n), 1e-12);
    }
  }
  // n = 0.05 with delta = 0.05 gives m = 0: skipped.
  bool found = false;
  for (const auto& [n, d] : skipped) found = found || (n == 0.05 && d == 0.05);
  EXPECT_TRUE(found);
}

TEST(sweep, csv_format) {
  SweepSpec spec;
  spec.n_grid = {0.5, 0.5, 0.1};
  spec.delta_grid = {0.1, 0.1, 0.1};
  const auto csv = sweep_csv(run_sweep(spec));
  EXPECT_EQ(csv, "n,delta,f_pqt,p_suc,c_pqt\n0.500000,0.100000,0.991870,0.282759,0.280460\n");
  EXPECT_EQ(sweep_csv(run_sweep({})), sweep_csv(run_sweep({})));
}

TEST(sweep, rejects_n_outside_the_unit_interval) {
  SweepSpec spec;
  spec.n_grid = {0.0, 0.5, 0.1};
  EXPECT_THROW(run_sweep(spec), ParameterError);
}
