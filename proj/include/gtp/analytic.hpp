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

// Closed-form input-averaged quantities and an exact averaging oracle.
//
// Averages are over Haar-random pure inputs of dimension d = 2^N, whose
// moments are <|a_i|^2> = 1/d and <|a_i a_j|^2> = (1 + delta_ij) / (d (d+1)).
// For an outcome with transfer operator T (input -> unnormalized corrected
// output) the exact averages are
//   <P>  = Tr(T^dag T) / d
//   <PF> = (|Tr T|^2 + Tr(T^dag T)) / (d (d+1)).

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "gtp/multi.hpp"

namespace gtp {

struct MomentTable {
  int num_qubits = 1;

  std::size_t dim() const { return std::size_t{1} << num_qubits; }
  double second_moment() const { return 1.0 / static_cast<double>(dim()); }
  double fourth_moment(std::size_t i, std::size_t j) const {
    const double d = static_cast<double>(dim());
    return (i == j ? 2.0 : 1.0) / (d * (1.0 + d));
  }
};

namespace detail {
inline double family_norm(Complex n, Complex m) {
  return (1.0 + std::norm(n)) * (1.0 + std::norm(m));
}
}  // namespace detail

/// Input-averaged probability of one outcome.
inline double avg_prob(Complex n, Complex m, OutcomeKind kind) {
  const double num = (kind == OutcomeKind::PhiPlus || kind == OutcomeKind::PsiMinus)
                         ? 1.0 + std::norm(n * m)
                         : std::norm(n) + std::norm(m);
  return num / (2.0 * detail::family_norm(n, m));
}

/// Input-averaged P*F of one outcome, given its phase argument xi.
inline double avg_pf(Complex n, Complex m, double xi_value, OutcomeKind kind) {
  const double base = (kind == OutcomeKind::PhiPlus || kind == OutcomeKind::PsiMinus)
                          ? 1.0 + std::norm(n * m)
                          : std::norm(n) + std::norm(m);
  return (base + std::abs(n * m) * std::cos(xi_value)) / (3.0 * detail::family_norm(n, m));
}

/// xi per outcome for a given correction table.
inline std::array<double, 4> xi_table(Complex n, Complex m, const CorrectionPhases& phases) {
  std::array<double, 4> out{};
  for (auto k : kAllOutcomes) out[index_of(k)] = xi(k, std::arg(n), std::arg(m), phases[k]);
  return out;
}

/// C^pro when every outcome is accepted.
inline double c_pro_all_accept(Complex n, Complex m, const std::array<double, 4>& xi_list) {
  double cos_sum = 0.0;
  for (double x : xi_list) cos_sum += std::cos(x);
  return (2.0 / 3.0) * (1.0 + std::abs(n * m) * cos_sum / (2.0 * detail::family_norm(n, m)));
}

/// (2/3)(1 + c(n) c(m) / 2): the all-accept efficiency with every xi = 0.
inline double c_pro_concurrence(Complex n, Complex m) {
  return (2.0 / 3.0) * (1.0 + concurrence(n) * concurrence(m) / 2.0);
}

/// Standard protocol (m = 1, xi = 0) efficiency for real n in [0, 1].
inline double c_std(double n) { return (2.0 / 3.0) * (1.0 + n / (1.0 + n * n)); }

/// Matched-basis probabilistic protocol: success probability (= efficiency).
inline double c_pqt(double n) {
  const double q = 1.0 + n * n;
  return 2.0 * n * n / (q * q);
}

struct PqtAttributes {
  double f_pqt = 0.0;
  double p_suc = 0.0;
  double c_pqt = 0.0;
  bool degenerate = false;
};

/// Accept {Phi-, Psi+} with real n, m and all xi = 0. At m = n this is the
/// unity-fidelity point; elsewhere the accepted fidelity drops below 1.
inline PqtAttributes pqt_attributes(double n, double m) {
  PqtAttributes a;
  const double denom = (1.0 + n * n) * (1.0 + m * m);
  const double s = n * n + m * m;
  a.p_suc = s / denom;
  a.c_pqt = 2.0 * (s + n * m) / (3.0 * denom);
  if (s > 0.0) {
    a.f_pqt = 2.0 * (s + n * m) / (3.0 * s);
  } else {
    a.degenerate = true;
  }
  return a;
}

/// Elementary symmetric polynomial e_i(chi).
inline double perm(int i, std::span<const double> chi) {
  const int n = static_cast<int>(chi.size());
  if (i < 1 || i > n) {
    throw ParameterError("perm: degree " + std::to_string(i) + " out of range [1, " +
                         std::to_string(n) + "]");
  }
  // e[j] after processing a prefix of chi.
  std::vector<double> e(static_cast<std::size_t>(i) + 1, 0.0);
  e[0] = 1.0;
  for (double c : chi) {
    for (int j = i; j >= 1; --j) e[static_cast<std::size_t>(j)] += c * e[static_cast<std::size_t>(j) - 1];
  }
  return e[static_cast<std::size_t>(i)];
}

/// chi_r = c(n_r) c(m_r) / 2
inline double chi(Complex n, Complex m) { return concurrence(n) * concurrence(m) / 2.0; }

/// N-channel all-accept efficiency:
///   C_N = 2/(2^N + 1) * (1 + sum_{i=1..N} 2^(i-1) Perm_i(chi))
inline double c_pro_N(std::span<const double> chi_list) {
  if (chi_list.empty()) throw ParameterError("c_pro_N: empty chi list");
  for (double c : chi_list) {
    if (!(c >= 0.0 && c <= 0.5 + 1e-15)) {
      throw ParameterError("c_pro_N: chi must lie in [0, 1/2]");
    }
  }
  const int n = static_cast<int>(chi_list.size());
  double sum = 1.0;
  for (int i = 1; i <= n; ++i) sum += std::ldexp(perm(i, chi_list), i - 1);
  return 2.0 / (std::ldexp(1.0, n) + 1.0) * sum;
}

/// N-channel matched-basis success probability, prod 2 n_i^2 / (1 + n_i^2)^2.
inline double c_pqt_N(std::span<const double> n_list) {
  double p = 1.0;
  for (double n : n_list) p *= c_pqt(n);
  return p;
}

struct TransferOperator {
  DenseMatrix matrix;
  JointOutcome outcome;
};

/// Contraction of <basis_kind| with (input (x) channel), as a map on the
/// input qubit; `MN` = 1/sqrt((1+|m|^2)(1+|n|^2)).
///   Phi+ -> MN diag(1, n m*)      Phi- -> MN diag(m, -n)
///   Psi+ -> MN [[0, m*], [n, 0]]  Psi- -> MN [[0, -1], [m n, 0]]
inline Operator2x2 outcome_block(OutcomeKind kind, Complex n, Complex m) {
  const double scale = 1.0 / std::sqrt(detail::family_norm(n, m));
  Operator2x2 b = Operator2x2::Zero();
  switch (kind) {
    case OutcomeKind::PhiPlus:
      b(0, 0) = 1.0;
      b(1, 1) = n * std::conj(m);
      break;
    case OutcomeKind::PhiMinus:
      b(0, 0) = m;
      b(1, 1) = -n;
      break;
    case OutcomeKind::PsiPlus:
      b(0, 1) = std::conj(m);
      b(1, 0) = n;
      break;
    case OutcomeKind::PsiMinus:
      b(0, 1) = -1.0;
      b(1, 0) = m * n;
      break;
  }
  return scale * b;
}

inline TransferOperator transfer_operator(const JointOutcome& outcome, const MultiParams& params) {
  params.validate();
  if (static_cast<int>(outcome.kinds.size()) != params.num_qubits()) {
    throw ParameterError("transfer_operator: outcome arity does not match the channel count");
  }
  DenseMatrix m = DenseMatrix::Identity(1, 1);
  for (std::size_t k = 0; k < outcome.kinds.size(); ++k) {
    const OutcomeKind kind = outcome.kinds[k];
    const Operator2x2 local = correction_operator(kind, params.phases[k][kind]) *
                              outcome_block(kind, params.n_list[k].value(), params.m_list[k].value());
    // Earlier channels act on the more significant input qubits.
    DenseMatrix next = Eigen::kroneckerProduct(m, local).eval();
    m = std::move(next);
  }
  return {std::move(m), outcome};
}

inline double haar_avg_prob(const TransferOperator& t) {
  const double d = static_cast<double>(t.matrix.rows());
  return (t.matrix.adjoint() * t.matrix).trace().real() / d;
}

inline double haar_avg_pf(const TransferOperator& t) {
  const double d = static_cast<double>(t.matrix.rows());
  const double frob = t.matrix.squaredNorm();
  return (std::norm(t.matrix.trace()) + frob) / (d * (d + 1.0));
}

struct ExactAverages {
  std::vector<double> prob;  // <P> per joint outcome index
  std::vector<double> pf;    // <PF> per joint outcome index
  double p_suc = 0.0;
  double c_pro = 0.0;
  std::optional<double> f_pro;
  bool degenerate = false;
};

/// Sampling-free input averages for a full protocol configuration.
inline ExactAverages exact_protocol_average(const MultiParams& params,
                                            const AcceptanceSet& acceptance) {
  params.validate();
  if (acceptance.num_qubits() != params.num_qubits()) {
    throw ParameterError("acceptance set arity does not match the channel count");
  }
  if (acceptance.empty()) throw ParameterError("acceptance set must not be empty");
  const int num = params.num_qubits();
  const std::size_t count = std::size_t{1} << (2 * num);
  ExactAverages out;
  out.prob.resize(count);
  out.pf.resize(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    const TransferOperator t = transfer_operator(JointOutcome::from_index(idx, num), params);
    out.prob[idx] = haar_avg_prob(t);
    out.pf[idx] = haar_avg_pf(t);
    if (acceptance.contains(idx)) {
      out.p_suc += out.prob[idx];
      out.c_pro += out.pf[idx];
    }
  }
  if (out.p_suc > kDegenerateSuccess) {
    out.f_pro = out.c_pro / out.p_suc;
  } else {
    out.degenerate = true;
  }
  return out;
}

}  // namespace gtp
