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

#include "gtp/multi.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "gtp/sampler.hpp"

using namespace gtp;

namespace {

constexpr double kPi = std::numbers::pi;

MultiParams random_params(int num, StreamRng& rng) {
  MultiParams p;
  for (int k = 0; k < num; ++k) {
    p.n_list.push_back(ChannelParam::polar(rng.uniform(), 2 * kPi * rng.uniform()));
    p.m_list.push_back(BasisParam::polar(rng.uniform(), 2 * kPi * rng.uniform()));
    p.phases.push_back({{rng.uniform(), rng.uniform(), rng.uniform(), rng.uniform()}});
  }
  return p;
}

}  // namespace

TEST(multi, joint_outcome_indexing) {
  const JointOutcome o = JointOutcome::parse("Phi-,Psi+");
  EXPECT_EQ(o.kinds.size(), 2u);
  EXPECT_EQ(o.index(), 1u * 4 + 2u);
  EXPECT_EQ(o.label(), "Phi-,Psi+");
  EXPECT_EQ(JointOutcome::from_index(o.index(), 2), o);
  for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ(JointOutcome::from_index(i, 3).index(), i);
  EXPECT_THROW(JointOutcome::parse("Phi-,Bogus"), ParameterError);
}

TEST(multi, params_validation) {
  MultiParams empty;
  EXPECT_THROW(empty.validate(), ParameterError);
  auto four = MultiParams::with_optimal_phases({1.0, 1.0, 1.0, 1.0}, {1.0, 1.0, 1.0, 1.0});
  EXPECT_THROW(four.validate(), ParameterError);
  EXPECT_THROW(MultiParams::with_optimal_phases({1.0, 1.0}, {1.0}), ParameterError);
  const auto p = MultiParams::with_optimal_phases({1.0}, {1.0});
  EXPECT_THROW(run_multi(StateVector::basis(2, 0), p), DimensionError);
}

TEST(multi_properties, single_channel_matches_run_single) {
  StreamRng rng({21, 0});
  for (int trial = 0; trial < 100; ++trial) {
    const MultiParams p = random_params(1, rng);
    const StateVector in = haar_state(1, rng);
    const auto joint = run_multi(in, p);
    const auto single = run_single(in, p.n_list[0], p.m_list[0], p.phases[0]);
    ASSERT_EQ(joint.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_NEAR(joint[i].probability, single[i].probability, 1e-13);
      ASSERT_EQ(joint[i].fidelity.has_value(), single[i].fidelity.has_value());
      if (joint[i].fidelity) {
        EXPECT_NEAR(*joint[i].fidelity, *single[i].fidelity, 1e-12);
        EXPECT_TRUE(joint[i].bob_state->approx_equal(*single[i].bob_state, 1e-12));
      }
    }
  }
}

TEST(multi, two_standard_channels) {
  const auto p = MultiParams::with_optimal_phases({1.0, 1.0}, {1.0, 1.0});
  const StateVector in = StateVector::basis(2, 0b10);
  const auto rec = run_multi(in, p);
  ASSERT_EQ(rec.size(), 16u);
  for (const auto& r : rec) {
    EXPECT_NEAR(r.probability, 1.0 / 16, 1e-15);
    EXPECT_NEAR(*r.fidelity, 1.0, 1e-12);
  }
  const auto rep = joint_report(rec, AcceptanceSet::all(2));
  EXPECT_NEAR(rep.p_suc, 1.0, 1e-12);
  EXPECT_NEAR(rep.c_pro, 1.0, 1e-12);
  EXPECT_EQ(rep.per_outcome[6].outcome, "Phi-,Psi+");
}

TEST(multi_properties, product_inputs_factorize) {
  StreamRng rng({22, 0});
  for (int trial = 0; trial < 50; ++trial) {
    const MultiParams p = random_params(2, rng);
    const StateVector a = haar_state(1, rng), b = haar_state(1, rng);
    const auto joint = run_multi(tensor(a, b), p);
    const auto ra = run_single(a, p.n_list[0], p.m_list[0], p.phases[0]);
    const auto rb = run_single(b, p.n_list[1], p.m_list[1], p.phases[1]);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        const auto& r = joint[i * 4 + j];
        EXPECT_NEAR(r.probability, ra[i].probability * rb[j].probability, 1e-13);
        if (r.fidelity && ra[i].fidelity && rb[j].fidelity) {
          EXPECT_NEAR(*r.fidelity, *ra[i].fidelity * *rb[j].fidelity, 1e-11);
          EXPECT_NEAR(fidelity(*r.bob_state, tensor(*ra[i].bob_state, *rb[j].bob_state)), 1.0, 1e-11);
        }
      }
    }
  }
}

TEST(multi_properties, completeness_for_every_arity) {
  StreamRng rng({23, 0});
  for (int num = 1; num <= kMaxQubits; ++num) {
    for (int trial = 0; trial < 20; ++trial) {
      const MultiParams p = random_params(num, rng);
      const auto rec = run_multi(haar_state(num, rng), p);
      ASSERT_EQ(rec.size(), std::size_t{1} << (2 * num));
      double total = 0.0;
      for (const auto& r : rec) {
        total += r.probability;
        if (r.bob_state) {
          EXPECT_NEAR(r.bob_state->norm_squared(), 1.0, 1e-12);
        }
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(multi_properties, matched_basis_outcomes_are_exact_on_entangled_inputs) {
  StreamRng rng({24, 0});
  for (int num = 1; num <= kMaxQubits; ++num) {
    const AcceptanceSet pqt = pqt_acceptance(num);
    EXPECT_EQ(pqt.size(), std::size_t{1} << num);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<ChannelParam> ns;
      std::vector<BasisParam> ms;
      for (int k = 0; k < num; ++k) {
        const double n = 0.1 + 0.9 * rng.uniform();
        ns.emplace_back(n);
        ms.emplace_back(n);
      }
      const auto p = MultiParams::with_optimal_phases(ns, ms);
      const auto rec = run_multi(haar_state(num, rng), p);
      for (std::size_t idx = 0; idx < rec.size(); ++idx) {
        if (pqt.contains(idx) && rec[idx].fidelity) {
          EXPECT_NEAR(*rec[idx].fidelity, 1.0, 1e-10);
        }
      }
      const auto rep = joint_report(rec, pqt);
      ASSERT_TRUE(rep.f_pro);
      EXPECT_NEAR(*rep.f_pro, 1.0, 1e-10);
    }
  }
}

TEST(multi, matched_basis_success_probability_example) {
  // n = m = 0.5 on two channels with a basis input: 0.32^2
  const auto p = MultiParams::with_optimal_phases({0.5, 0.5}, {0.5, 0.5});
  const auto rep = joint_report(run_multi(StateVector::basis(2, 0), p), pqt_acceptance(2));
  EXPECT_NEAR(rep.p_suc, 0.1024, 1e-12);
  EXPECT_NEAR(*rep.f_pro, 1.0, 1e-12);
}

TEST(multi, acceptance_from_labels) {
  const std::vector<std::string> labels{"Phi-,Psi+", "Psi+,Phi-"};
  const AcceptanceSet acc = acceptance_from_labels(2, labels);
  EXPECT_EQ(acc.size(), 2u);
  EXPECT_TRUE(acc.contains(JointOutcome::parse("Psi+,Phi-").index()));
  const std::vector<std::string> wrong{"Phi-"};
  EXPECT_THROW(acceptance_from_labels(2, wrong), ParameterError);
  const auto rec = run_multi(StateVector::basis(1, 0), MultiParams::with_optimal_phases({1.0}, {1.0}));
  EXPECT_THROW(joint_report(rec, AcceptanceSet::all(2)), ParameterError);
}
