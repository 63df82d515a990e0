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

// N-qubit teleportation through N independent two-qubit channels.
//
// Qubit layout: input qubits 1..N, then channel k occupies
// (N + 2k - 1, N + 2k) = (Alice_k, Bob_k). Alice measures each
// (input_k, Alice_k) pair in basis m_k; Bob corrects Bob_k with the phase
// table of channel k. After all pairs are contracted Bob's qubits are left
// in order 1..N, which is the order compared against the input.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gtp/core.hpp"

namespace gtp {

inline constexpr int kMaxQubits = 3;

struct MultiParams {
  std::vector<ChannelParam> n_list;
  std::vector<BasisParam> m_list;
  std::vector<CorrectionPhases> phases;

  int num_qubits() const { return static_cast<int>(n_list.size()); }

  void validate() const {
    if (n_list.empty() || n_list.size() > static_cast<std::size_t>(kMaxQubits)) {
      throw ParameterError("number of channels must be in [1, 3]");
    }
    if (m_list.size() != n_list.size() || phases.size() != n_list.size()) {
      throw ParameterError("n, m and phase lists must have equal lengths");
    }
  }

  /// Phases that zero every xi on every channel.
  static MultiParams with_optimal_phases(std::vector<ChannelParam> n, std::vector<BasisParam> m) {
    MultiParams p{std::move(n), std::move(m), {}};
    if (p.m_list.size() != p.n_list.size()) {
      throw ParameterError("n and m lists must have equal lengths");
    }
    for (std::size_t k = 0; k < p.n_list.size(); ++k) {
      p.phases.push_back(optimal_phases(p.n_list[k], p.m_list[k]));
    }
    return p;
  }
};

/// One OutcomeKind per measured pair, qubit order.
struct JointOutcome {
  std::vector<OutcomeKind> kinds;

  static JointOutcome from_index(std::size_t index, int num_qubits) {
    JointOutcome out;
    out.kinds.resize(static_cast<std::size_t>(num_qubits));
    for (int k = num_qubits - 1; k >= 0; --k) {
      out.kinds[static_cast<std::size_t>(k)] = static_cast<OutcomeKind>(index & 3U);
      index >>= 2;
    }
    return out;
  }

  std::size_t index() const {
    std::size_t idx = 0;
    for (auto k : kinds) idx = (idx << 2) | index_of(k);
    return idx;
  }

  /// e.g. "Phi+,Psi-"
  std::string label() const {
    std::string s;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      if (i) s += ',';
      s += to_string(kinds[i]);
    }
    return s;
  }

  static JointOutcome parse(std::string_view text) {
    JointOutcome out;
    std::size_t start = 0;
    while (true) {
      const auto comma = text.find(',', start);
      out.kinds.push_back(outcome_from_string(text.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  }

  bool operator==(const JointOutcome&) const = default;
};

struct JointRecord {
  JointOutcome outcome;
  double probability = 0.0;
  std::optional<StateVector> bob_state;
  std::optional<double> fidelity;
};

/// Input qubits followed by every channel pair.
inline StateVector multi_initial_state(const StateVector& input, const MultiParams& params) {
  StateVector joint = input;
  for (const auto& n : params.n_list) joint = tensor(joint, channel_state(n));
  return joint;
}

/// Every one of the 4^N joint outcomes, indexed by JointOutcome::index().
inline std::vector<JointRecord> run_multi(const StateVector& input, const MultiParams& params) {
  params.validate();
  const int num = params.num_qubits();
  if (input.num_qubits() != num) {
    throw DimensionError("run_multi: input has " + std::to_string(input.num_qubits()) +
                         " qubits but " + std::to_string(num) + " channels were given");
  }
  if (!input.is_normalized()) throw std::invalid_argument("run_multi: input not normalized");

  std::vector<BellBasis> bases;
  for (const auto& m : params.m_list) bases.push_back(bell_basis(m));

  const std::size_t count = std::size_t{1} << (2 * num);
  std::vector<JointRecord> records(count);

  // Depth-first over channels so shared prefixes are contracted once. Each
  // contraction removes (input_k, Alice_k); `labels` keeps the original
  // numbering of the surviving qubits, so Bob_1..Bob_N end up in order.
  struct Frame {
    Eigen::VectorXcd amps;
    std::vector<int> labels;  // original qubit number at each position
  };
  auto position_of = [](const std::vector<int>& labels, int qubit) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == qubit) return static_cast<int>(i) + 1;
    }
    throw std::logic_error("qubit label not found");
  };

  const StateVector initial = multi_initial_state(input, params);
  Frame root{initial.amps(), {}};
  for (int q = 1; q <= 3 * num; ++q) root.labels.push_back(q);

  auto descend = [&](auto&& self, const Frame& frame, int channel, std::size_t prefix) -> void {
    if (channel == num) {
      JointRecord& rec = records[prefix];
      rec.outcome = JointOutcome::from_index(prefix, num);
      rec.probability = frame.amps.squaredNorm();
      if (rec.probability <= kProbabilityCutoff) return;
      StateVector bob(frame.amps / std::sqrt(rec.probability));
      for (int k = 0; k < num; ++k) {
        const OutcomeKind kind = rec.outcome.kinds[static_cast<std::size_t>(k)];
        bob = apply_local(bob, k + 1,
                          correction_operator(kind, params.phases[static_cast<std::size_t>(k)][kind]));
      }
      rec.fidelity = fidelity(input, bob);
      rec.bob_state = std::move(bob);
      return;
    }
    const int input_q = channel + 1;
    const int alice_q = num + 2 * channel + 1;
    const int first = position_of(frame.labels, input_q);
    const int second = position_of(frame.labels, alice_q);
    Frame child;
    for (int label : frame.labels) {
      if (label != input_q && label != alice_q) child.labels.push_back(label);
    }
    const int live = static_cast<int>(frame.labels.size());
    for (auto kind : kAllOutcomes) {
      child.amps = contract_pair(frame.amps, live, first, second,
                                 bases[static_cast<std::size_t>(channel)][index_of(kind)]);
      self(self, child, channel + 1, (prefix << 2) | index_of(kind));
    }
  };

  descend(descend, root, 0, 0);
  return records;
}

/// Joint outcomes built only from Phi- and Psi+ on every pair.
inline AcceptanceSet pqt_acceptance(int num_qubits) {
  AcceptanceSet acc(num_qubits, 0);
  const std::size_t count = std::size_t{1} << (2 * num_qubits);
  for (std::size_t idx = 0; idx < count; ++idx) {
    const JointOutcome o = JointOutcome::from_index(idx, num_qubits);
    bool ok = true;
    for (auto k : o.kinds) ok = ok && (k == OutcomeKind::PhiMinus || k == OutcomeKind::PsiPlus);
    if (ok) acc.insert(idx);
  }
  return acc;
}

/// Parses "Phi-" / "Phi-,Psi+" style labels into an acceptance set.
inline AcceptanceSet acceptance_from_labels(int num_qubits, std::span<const std::string> labels) {
  AcceptanceSet acc(num_qubits, 0);
  for (const auto& l : labels) {
    const JointOutcome o = JointOutcome::parse(l);
    if (static_cast<int>(o.kinds.size()) != num_qubits) {
      throw ParameterError("outcome '" + l + "' does not have " + std::to_string(num_qubits) +
                           " components");
    }
    acc.insert(o.index());
  }
  return acc;
}

inline ProtocolReport joint_report(std::span<const JointRecord> records,
                                   const AcceptanceSet& acceptance) {
  if (records.size() != (std::size_t{1} << (2 * acceptance.num_qubits()))) {
    throw ParameterError("joint_report: acceptance set size does not match the records");
  }
  return detail::build_report(records, acceptance,
                              [](const JointRecord& r) { return r.outcome.label(); });
}

}  // namespace gtp
