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

// Dense complex state vectors for a handful of qubits.
//
// Index convention: for a k-qubit state, basis index b = sum_i b_i * 2^(k-i)
// with qubits numbered 1..k, so qubit 1 is the most significant bit. Every
// function in this project that takes a qubit index uses this numbering.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace gtp {

using Complex = std::complex<double>;
using Operator2x2 = Eigen::Matrix2cd;
using DenseMatrix = Eigen::MatrixXcd;

/// Absolute amplitude tolerance used for state comparisons.
inline constexpr double kAmplitudeTol = 1e-12;
/// Outcomes whose probability falls below this are unreachable.
inline constexpr double kProbabilityCutoff = 1e-15;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class StateVector {
 public:
  StateVector() = default;

  /// Takes amplitudes verbatim; size must be 2^k with k >= 1 and all
  /// components finite. Does not normalize.
  explicit StateVector(Eigen::VectorXcd amps) : amps_(std::move(amps)) {
    const auto size = static_cast<std::size_t>(amps_.size());
    if (size < 2 || (size & (size - 1)) != 0) {
      throw DimensionError("state dimension must be a power of two >= 2, got " +
                           std::to_string(size));
    }
    num_qubits_ = 0;
    while ((std::size_t{1} << num_qubits_) < size) ++num_qubits_;
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
      if (!std::isfinite(amps_[i].real()) || !std::isfinite(amps_[i].imag())) {
        throw std::invalid_argument("state amplitudes must be finite");
      }
    }
  }

  StateVector(std::initializer_list<Complex> amps)
      : StateVector(from_list(amps)) {}

  static StateVector basis(int num_qubits, std::size_t index) {
    if (num_qubits < 1) throw DimensionError("num_qubits must be >= 1");
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (index >= dim) throw DimensionError("basis index out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(std::move(v));
  }

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Eigen::VectorXcd& amps() const { return amps_; }
  Complex operator[](std::size_t i) const {
    return amps_[static_cast<Eigen::Index>(i)];
  }

  double norm_squared() const { return amps_.squaredNorm(); }

  StateVector normalized() const {
    const double nrm = amps_.norm();
    if (nrm == 0.0) throw std::invalid_argument("cannot normalize a zero vector");
    return StateVector(amps_ / nrm);
  }

  bool is_normalized(double tol = kAmplitudeTol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
  }

  /// Component-wise absolute comparison.
  bool approx_equal(const StateVector& other, double tol = kAmplitudeTol) const {
    if (dim() != other.dim()) return false;
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
      if (std::abs(amps_[i] - other.amps_[i]) > tol) return false;
    }
    return true;
  }

 private:
  static Eigen::VectorXcd from_list(std::initializer_list<Complex> amps) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (const auto& a : amps) v[i++] = a;
    return v;
  }

  int num_qubits_ = 0;
  Eigen::VectorXcd amps_;
};

/// Kronecker product; a's qubits occupy the high bits.
inline StateVector tensor(const StateVector& a, const StateVector& b) {
  const auto da = static_cast<Eigen::Index>(a.dim());
  const auto db = static_cast<Eigen::Index>(b.dim());
  Eigen::VectorXcd out(da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    out.segment(i * db, db) = a.amps()[i] * b.amps();
  }
  return StateVector(std::move(out));
}

/// <a|b>, antilinear in the first argument.
inline Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("inner: dimension mismatch " + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()));
  }
  return a.amps().dot(b.amps());
}

/// |<a|b>|^2, clipped to 1 against rounding.
inline double fidelity(const StateVector& a, const StateVector& b) {
  return std::min(1.0, std::norm(inner(a, b)));
}

/// Applies a 2x2 operator to qubit `qubit_index` (1-based).
inline StateVector apply_local(const StateVector& state, int qubit_index,
                               const Operator2x2& op) {
  const int k = state.num_qubits();
  if (qubit_index < 1 || qubit_index > k) {
    throw DimensionError("apply_local: qubit index " + std::to_string(qubit_index) +
                         " out of range for " + std::to_string(k) + " qubits");
  }
  const std::size_t stride = std::size_t{1} << (k - qubit_index);
  Eigen::VectorXcd out = state.amps();
  for (std::size_t base = 0; base < state.dim(); ++base) {
    if (base & stride) continue;
    const auto i0 = static_cast<Eigen::Index>(base);
    const auto i1 = static_cast<Eigen::Index>(base | stride);
    const Complex a0 = state.amps()[i0];
    const Complex a1 = state.amps()[i1];
    out[i0] = op(0, 0) * a0 + op(0, 1) * a1;
    out[i1] = op(1, 0) * a0 + op(1, 1) * a1;
  }
  return StateVector(std::move(out));
}

/// Contracts qubits (first, second) against <basis_vec| without normalizing.
/// basis_vec is a 2-qubit state whose high bit refers to `first`. The
/// remaining qubits keep their relative order.
inline Eigen::VectorXcd contract_pair(const Eigen::VectorXcd& amps, int num_qubits,
                                      int first, int second,
                                      const StateVector& basis_vec) {
  if (basis_vec.num_qubits() != 2) {
    throw DimensionError("contract_pair: basis vector must have 2 qubits");
  }
  if (num_qubits < 3) {
    throw DimensionError("contract_pair: state must have at least 3 qubits");
  }
  if (first < 1 || first > num_qubits || second < 1 || second > num_qubits ||
      first == second) {
    throw DimensionError("contract_pair: invalid qubit pair");
  }
  const int rest = num_qubits - 2;
  const std::size_t rest_dim = std::size_t{1} << rest;
  const int shift_first = num_qubits - first;
  const int shift_second = num_qubits - second;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rest_dim));
  for (std::size_t full = 0; full < (std::size_t{1} << num_qubits); ++full) {
    const std::size_t a = (full >> shift_first) & 1U;
    const std::size_t b = (full >> shift_second) & 1U;
    const Complex coeff = std::conj(basis_vec[2 * a + b]);
    if (coeff == Complex{}) continue;
    // Squeeze out the two measured bits, preserving the order of the others.
    std::size_t r = 0;
    for (int q = 1; q <= num_qubits; ++q) {
      if (q == first || q == second) continue;
      r = (r << 1) | ((full >> (num_qubits - q)) & 1U);
    }
    out[static_cast<Eigen::Index>(r)] += coeff * amps[static_cast<Eigen::Index>(full)];
  }
  return out;
}

struct Projection {
  double probability = 0.0;
  /// Normalized post-measurement state of the remaining qubits; empty when
  /// the outcome is unreachable (probability <= kProbabilityCutoff).
  std::optional<StateVector> residual;
};

inline Projection project_pair(const StateVector& state, std::pair<int, int> qubit_pair,
                               const StateVector& basis_vec) {
  Eigen::VectorXcd raw = contract_pair(state.amps(), state.num_qubits(), qubit_pair.first,
                                       qubit_pair.second, basis_vec);
  Projection result;
  result.probability = raw.squaredNorm();
  if (result.probability > kProbabilityCutoff) {
    result.residual = StateVector(raw / std::sqrt(result.probability));
  }
  return result;
}

}  // namespace gtp
