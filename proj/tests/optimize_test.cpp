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

#include "gtp/optimize.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

using namespace gtp;

namespace {
// Distance on the circle.
double angle_gap(double a, double b) { return std::abs(std::remainder(a - b, 2 * std::numbers::pi)); }
}  // namespace

TEST(optimize, params_for_xi_realizes_the_table) {
  const std::vector<ChannelParam> n{ChannelParam::polar(0.6, 1.2)};
  const std::vector<double> m{0.8};
  const std::vector<std::array<double, 4>> xs{{0.1, 0.2, 0.3, 0.4}};
  const MultiParams p = params_for_xi(n, m, xs);
  const auto got = xi_table(p.n_list[0].value(), p.m_list[0].value(), p.phases[0]);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(angle_gap(got[i], xs[0][i]), 1e-14);
}

TEST(optimize, single_channel_reaches_the_concurrence_bound) {
  for (double n : {1.0, 0.5, 0.2}) {
    const std::vector<ChannelParam> ch{ChannelParam(n)};
    const OptimizeResult r = optimize_channel(ch);
    EXPECT_NEAR(r.c_channel, c_pro_concurrence(n, 1.0), 1e-4) << n;
    EXPECT_NEAR(r.m_star[0], 1.0, 0.005) << n;
    for (double x : r.xi_star[0]) EXPECT_LT(angle_gap(x, 0.0), 0.005) << n;
    EXPECT_FALSE(r.degenerate);
    EXPECT_GT(r.evaluations, 0);
  }
}

TEST(optimize, phase_of_n_does_not_change_the_optimum) {
  const std::vector<ChannelParam> ch{ChannelParam::polar(0.5, 2.0)};
  const OptimizeResult r = optimize_channel(ch);
  EXPECT_NEAR(r.c_channel, c_pro_concurrence(0.5, 1.0), 1e-4);
}

TEST(optimize, product_channel_is_degenerate) {
  const std::vector<ChannelParam> ch{ChannelParam(0.0)};
  const OptimizeResult r = optimize_channel(ch);
  EXPECT_NEAR(r.c_channel, 2.0 / 3, 1e-12);
  EXPECT_TRUE(r.degenerate);
}

TEST(optimize, two_channels_match_the_closed_form) {
  const std::vector<ChannelParam> ch{ChannelParam(0.5), ChannelParam(0.7)};
  const OptimizeResult r = optimize_channel(ch);
  const std::vector<double> chis{chi(0.5, 1.0), chi(0.7, 1.0)};
  EXPECT_NEAR(r.c_channel, c_pro_N(chis), 1e-4);
  ASSERT_EQ(r.m_star.size(), 2u);
  for (double m : r.m_star) EXPECT_NEAR(m, 1.0, 0.005);
}

TEST(optimize, errors) {
  EXPECT_THROW(optimize_channel(std::vector<ChannelParam>{}), ParameterError);
  EXPECT_THROW(optimize_channel(std::vector<ChannelParam>(4, ChannelParam(1.0))), ParameterError);
}
