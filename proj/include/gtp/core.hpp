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

// Single-qubit teleportation over a partially entangled channel.
//
// Qubit layout for one run: 1 = input, 2 = Alice's channel half,
// 3 = Bob's channel half. Alice measures (1, 2) in the basis
// {Phi+_m, Phi-_m, Psi+_m, Psi-_m}; Bob applies exp(i sz theta_j) O_j with
// O = {I, sz, sx, sz sx} in that same outcome order.

#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gtp/linalg.hpp"

namespace gtp {

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {
inline constexpr double kMagnitudeSlack = 1e-12;

inline Complex checked_unit_disk(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw ParameterError(std::string(what) + " must be finite");
  }
  if (std::abs(z) > 1.0 + kMagnitudeSlack) {
    throw ParameterError(std::string(what) + " must satisfy |" + what +
                         "| <= 1, got |" + what + "| = " + std::to_string(std::abs(z)));
  }
  return z;
}
}  // namespace detail

/// Channel entanglement parameter n, |n| <= 1.
class ChannelParam {
 public:
  ChannelParam(Complex n = 1.0) : n_(detail::checked_unit_disk(n, "n")) {}  // NOLINT
  ChannelParam(double n) : ChannelParam(Complex(n, 0.0)) {}                   // NOLINT
  static ChannelParam polar(double magnitude, double phase) {
    return ChannelParam(std::polar(magnitude, phase));
  }
  Complex value() const { return n_; }
  double magnitude() const { return std::abs(n_); }
  double phase() const { return std::arg(n_); }

 private:
  Complex n_;
};

/// Measurement-basis entanglement parameter m, |m| <= 1.
class BasisParam {
 public:
  BasisParam(Complex m = 1.0) : m_(detail::checked_unit_disk(m, "m")) {}  // NOLINT
  BasisParam(double m) : BasisParam(Complex(m, 0.0)) {}                   // NOLINT
  static BasisParam polar(double magnitude, double phase) {
    return BasisParam(std::polar(magnitude, phase));
  }
  Complex value() const { return m_; }
  double magnitude() const { return std::abs(m_); }
  double phase() const { return std::arg(m_); }

 private:
  Complex m_;
};

enum class OutcomeKind : std::uint8_t { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

inline constexpr std::array<OutcomeKind, 4> kAllOutcomes = {
    OutcomeKind::PhiPlus, OutcomeKind::PhiMinus, OutcomeKind::PsiPlus, OutcomeKind::PsiMinus};

constexpr std::size_t index_of(OutcomeKind kind) { return static_cast<std::size_t>(kind); }

constexpr std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::PhiPlus: return "Phi+";
    case OutcomeKind::PhiMinus: return "Phi-";
    case OutcomeKind::PsiPlus: return "Psi+";
    case OutcomeKind::PsiMinus: return "Psi-";
  }
  return "?";
}

inline OutcomeKind outcome_from_string(std::string_view name) {
  for (auto kind : kAllOutcomes) {
    if (to_string(kind) == name) return kind;
  }
  throw ParameterError("unknown outcome label '" + std::string(name) + "'");
}

constexpr bool is_phi(OutcomeKind kind) {
  return kind == OutcomeKind::PhiPlus || kind == OutcomeKind::PhiMinus;
}

/// Bob's correction phase per outcome, indexed by OutcomeKind. Radians, mod 2pi.
struct CorrectionPhases {
  std::array<double, 4> theta{};

  double operator[](OutcomeKind kind) const { return theta[index_of(kind)]; }
  double& operator[](OutcomeKind kind) { return theta[index_of(kind)]; }

  static CorrectionPhases zero() { return {}; }
  static CorrectionPhases uniform_by_family(double phi, double psi) {
    return {{phi, phi, psi, psi}};
  }
};

/// (|00> + n|11>) / sqrt(1 + |n|^2)
inline StateVector channel_state(const ChannelParam& n) {
  const Complex nv = n.value();
  const double scale = 1.0 / std::sqrt(1.0 + std::norm(nv));
  return StateVector{scale, 0.0, 0.0, scale * nv};
}

/// c(n) = 2|n| / (1 + |n|^2)
inline double concurrence(Complex n) {
  const double a = std::abs(n);
  return 2.0 * a / (1.0 + a * a);
}

using BellBasis = std::array<StateVector, 4>;

/// Generalized Bell basis, indexed by OutcomeKind:
///   Phi+ = M(|00> + m|11>)     Phi- = M(m*|00> - |11>)
///   Psi+ = M(|01> + m|10>)     Psi- = M(m*|01> - |10>)
/// with M = 1/sqrt(1 + |m|^2).
inline BellBasis bell_basis(const BasisParam& m) {
  const Complex mv = m.value();
  const Complex mc = std::conj(mv);
  const double s = 1.0 / std::sqrt(1.0 + std::norm(mv));
  return {
      StateVector{s, 0.0, 0.0, s * mv},
      StateVector{s * mc, 0.0, 0.0, -s},
      StateVector{0.0, s, s * mv, 0.0},
      StateVector{0.0, s * mc, -s, 0.0},
  };
}

namespace pauli {
inline Operator2x2 identity() { return Operator2x2::Identity(); }
inline Operator2x2 x() {
  Operator2x2 op;
  op << 0.0, 1.0, 1.0, 0.0;
  return op;
}
inline Operator2x2 z() {
  Operator2x2 op;
  op << 1.0, 0.0, 0.0, -1.0;
  return op;
}
}  // namespace pauli

/// exp(i sz theta) = diag(e^{i theta}, e^{-i theta})
inline Operator2x2 z_phase(double theta) {
  Operator2x2 op = Operator2x2::Zero();
  op(0, 0) = std::polar(1.0, theta);
  op(1, 1) = std::polar(1.0, -theta);
  return op;
}

/// O_j for each outcome, before the phase factor.
inline Operator2x2 pauli_frame(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::PhiPlus: return pauli::identity();
    case OutcomeKind::PhiMinus: return pauli::z();
    case OutcomeKind::PsiPlus: return pauli::x();
    case OutcomeKind::PsiMinus: return pauli::z() * pauli::x();
  }
  return pauli::identity();
}

inline Operator2x2 correction_operator(OutcomeKind kind, double theta) {
  return z_phase(theta) * pauli_frame(kind);
}

/// Phase argument of the cosine term in the averaged fidelity:
///   Phi: theta_n - theta_m - 2 theta     Psi: theta_n + theta_m + 2 theta
inline double xi(OutcomeKind kind, double theta_n, double theta_m, double theta) {
  return is_phi(kind) ? theta_n - theta_m - 2.0 * theta : theta_n + theta_m + 2.0 * theta;
}

/// Inverse of xi for a requested phase argument.
inline double theta_for_xi(OutcomeKind kind, double theta_n, double theta_m, double target_xi) {
  return is_phi(kind) ? 0.5 * (theta_n - theta_m - target_xi)
                      : 0.5 * (target_xi - theta_n - theta_m);
}

/// Phases that zero every xi.
inline CorrectionPhases optimal_phases(const ChannelParam& n, const BasisParam& m) {
  const double tn = n.phase();
  const double tm = m.phase();
  return CorrectionPhases::uniform_by_family(0.5 * (tn - tm), -0.5 * (tn + tm));
}

/// Bob's preset for a dephased channel n = e^{i theta_n} measured with m = 1.
inline CorrectionPhases dephasing_correction(double theta_n) {
  return CorrectionPhases::uniform_by_family(0.5 * theta_n, -0.5 * theta_n);
}

struct OutcomeRecord {
  OutcomeKind outcome = OutcomeKind::PhiPlus;
  double probability = 0.0;
  std::optional<StateVector> bob_state;  // after correction
  std::optional<double> fidelity;        // empty iff bob_state is empty
};

using SingleRun = std::array<OutcomeRecord, 4>;

inline SingleRun run_single(const StateVector& input, const ChannelParam& n, const BasisParam& m,
                            const CorrectionPhases& phases) {
  if (input.num_qubits() != 1) throw DimensionError("run_single: input must be one qubit");
  if (!input.is_normalized()) throw std::invalid_argument("run_single: input not normalized");
  const StateVector joint = tensor(input, channel_state(n));
  const BellBasis basis = bell_basis(m);
  SingleRun records;
  for (auto kind : kAllOutcomes) {
    auto& rec = records[index_of(kind)];
    rec.outcome = kind;
    Projection proj = project_pair(joint, {1, 2}, basis[index_of(kind)]);
    rec.probability = proj.probability;
    if (proj.residual) {
      rec.bob_state = apply_local(*proj.residual, 1, correction_operator(kind, phases[kind]));
      rec.fidelity = fidelity(input, *rec.bob_state);
    }
  }
  return records;
}

/// Subset of the 4^N joint outcomes Alice accepts, as a bitmask over joint
/// outcome indices. A joint index is sum_k kind_k * 4^(N-k), so for N = 1 it
/// is just the OutcomeKind value.
class AcceptanceSet {
 public:
  AcceptanceSet(int num_qubits, std::uint64_t mask) : num_qubits_(num_qubits), mask_(mask) {
    if (num_qubits < 1 || num_qubits > 3) {
      throw ParameterError("acceptance sets support 1..3 qubits");
    }
    const std::uint64_t full = all_mask(num_qubits);
    if ((mask & ~full) != 0) throw ParameterError("acceptance mask has bits beyond 4^N");
  }

  static AcceptanceSet all(int num_qubits) { return {num_qubits, all_mask(num_qubits)}; }

  static AcceptanceSet of(std::initializer_list<OutcomeKind> kinds) {
    std::uint64_t mask = 0;
    for (auto k : kinds) mask |= std::uint64_t{1} << index_of(k);
    return {1, mask};
  }

  int num_qubits() const { return num_qubits_; }
  std::uint64_t mask() const { return mask_; }
  bool empty() const { return mask_ == 0; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  bool contains(std::size_t joint_index) const {
    return joint_index < 64 && ((mask_ >> joint_index) & 1U) != 0;
  }
  bool contains(OutcomeKind kind) const { return contains(index_of(kind)); }
  void insert(std::size_t joint_index) {
    if (joint_index >= (std::size_t{1} << (2 * num_qubits_))) {
      throw ParameterError("joint outcome index out of range");
    }
    mask_ |= std::uint64_t{1} << joint_index;
  }

 private:
  static std::uint64_t all_mask(int num_qubits) {
    const int count = 1 << (2 * num_qubits);
    return count == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
  }

  int num_qubits_;
  std::uint64_t mask_;
};

struct OutcomeSummary {
  std::string outcome;
  double probability = 0.0;
  std::optional<double> fidelity;
};

struct ProtocolReport {
  double p_suc = 0.0;
  double c_pro = 0.0;
  std::optional<double> f_pro;  // empty when p_suc is (numerically) zero
  bool degenerate = false;
  std::vector<OutcomeSummary> per_outcome;
};

inline constexpr double kDegenerateSuccess = 1e-12;

namespace detail {
/// Shared by the single and joint report builders. `label` maps a record to
/// its display name; `index` maps it to the joint outcome index.
template <typename Record, typename Label>
ProtocolReport build_report(std::span<const Record> records, const AcceptanceSet& acceptance,
                            Label label) {
  if (acceptance.empty()) throw ParameterError("acceptance set must not be empty");
  ProtocolReport rep;
  for (std::size_t idx = 0; idx < records.size(); ++idx) {
    const Record& rec = records[idx];
    rep.per_outcome.push_back({label(rec), rec.probability, rec.fidelity});
    if (!acceptance.contains(idx)) continue;
    rep.p_suc += rec.probability;
    // Unreachable outcomes contribute zero probability and no fidelity.
    if (rec.fidelity) rep.c_pro += rec.probability * *rec.fidelity;
  }
  if (rep.p_suc > kDegenerateSuccess) {
    rep.f_pro = rep.c_pro / rep.p_suc;
  } else {
    rep.degenerate = true;
  }
  return rep;
}
}  // namespace detail

/// P_suc, C^pro and F^pro over the accepted outcomes of one run. Records
/// must be indexed by OutcomeKind, as returned by run_single.
inline ProtocolReport report(std::span<const OutcomeRecord> records,
                             const AcceptanceSet& acceptance) {
  if (acceptance.num_qubits() != 1) {
    throw ParameterError("single-qubit report needs a single-qubit acceptance set");
  }
  return detail::build_report(records, acceptance, [](const OutcomeRecord& r) {
    return std::string(to_string(r.outcome));
  });
}

}  // namespace gtp
