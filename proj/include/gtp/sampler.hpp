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

// Seeded Monte-Carlo averaging over Haar-random inputs.
//
// Reproducibility contract:
//  * Each (seed, stream_id) pair drives its own std::mt19937_64, seeded
//    through std::seed_seq with the 32-bit words
//    {seed_lo, seed_hi, stream_lo, stream_hi}. Both algorithms are fixed
//    by the C++ standard.
//  * Uniforms take the top 53 bits of one engine draw; Gaussians come from
//    the Marsaglia polar method on two such uniforms.
//  * A run is split into kShards shards (stream_id = shard index); shard s
//    gets samples/kShards draws plus one if s < samples % kShards. Shards
//    may run concurrently but are merged strictly in shard order.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "gtp/multi.hpp"

namespace gtp {

inline constexpr int kShards = 8;

struct RandomStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

class StreamRng {
 public:
  explicit StreamRng(RandomStream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(stream.seed),
                      static_cast<std::uint32_t>(stream.seed >> 32),
                      static_cast<std::uint32_t>(stream.stream_id),
                      static_cast<std::uint32_t>(stream.stream_id >> 32)};
    engine_.seed(seq);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// 2^k i.i.d. standard complex Gaussians, normalized.
inline StateVector haar_state(int num_qubits, StreamRng& rng) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw ParameterError("haar_state supports 1..3 qubits");
  }
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    v[i] = Complex(re, im);
  }
  return StateVector(v / v.norm());
}

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;

  /// Exact value with no sampling error.
  static Estimate exact(double value) { return {value, 0.0, 0}; }

  bool within(double expected, double sigmas, double floor = 1e-12) const {
    return std::abs(mean - expected) <= sigmas * std_error + floor;
  }
};

/// Welford mean/variance with Chan's pairwise merge.
class Accumulator {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  void merge(const Accumulator& o) {
    if (o.count_ == 0) return;
    if (count_ == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(count_ + o.count_);
    const double delta = o.mean_ - mean_;
    mean_ += delta * static_cast<double>(o.count_) / total;
    m2_ += o.m2_ + delta * delta * static_cast<double>(count_) * static_cast<double>(o.count_) / total;
    count_ += o.count_;
  }

  std::int64_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const {
    return count_ > 1 ? std::max(0.0, m2_ / static_cast<double>(count_ - 1)) : 0.0;
  }

  Estimate estimate() const {
    return {mean_, std::sqrt(variance() / static_cast<double>(std::max<std::int64_t>(count_, 1))),
            count_};
  }

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Paired samples (x, y) for a ratio-of-means estimate mean(y)/mean(x).
class PairAccumulator {
 public:
  void add(double x, double y) {
    ++count_;
    const double n = static_cast<double>(count_);
    const double dx = x - mean_x_;
    mean_x_ += dx / n;
    const double dy = y - mean_y_;
    mean_y_ += dy / n;
    m2_x_ += dx * (x - mean_x_);
    m2_y_ += dy * (y - mean_y_);
    c_xy_ += dx * (y - mean_y_);
  }

  void merge(const PairAccumulator& o) {
    if (o.count_ == 0) return;
    if (count_ == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(o.count_);
    const double total = na + nb;
    const double dx = o.mean_x_ - mean_x_;
    const double dy = o.mean_y_ - mean_y_;
    mean_x_ += dx * nb / total;
    mean_y_ += dy * nb / total;
    m2_x_ += o.m2_x_ + dx * dx * na * nb / total;
    m2_y_ += o.m2_y_ + dy * dy * na * nb / total;
    c_xy_ += o.c_xy_ + dx * dy * na * nb / total;
    count_ += o.count_;
  }

  std::int64_t count() const { return count_; }

  Estimate x() const { return component(mean_x_, m2_x_); }
  Estimate y() const { return component(mean_y_, m2_y_); }

  /// mean(y)/mean(x) with a first-order (delta-method) standard error.
  /// Returns mean 0 and std_error 0 when mean(x) is exactly zero.
  Estimate ratio() const {
    if (count_ == 0 || mean_x_ == 0.0) return {0.0, 0.0, count_};
    const double r = mean_y_ / mean_x_;
    const double dof = static_cast<double>(std::max<std::int64_t>(count_ - 1, 1));
    const double var =
        std::max(0.0, (m2_y_ - 2.0 * r * c_xy_ + r * r * m2_x_) / dof);
    return {r, std::sqrt(var / static_cast<double>(count_)) / std::abs(mean_x_), count_};
  }

 private:
  Estimate component(double mean, double m2) const {
    const double n = static_cast<double>(std::max<std::int64_t>(count_, 1));
    const double var = count_ > 1 ? std::max(0.0, m2 / static_cast<double>(count_ - 1)) : 0.0;
    return {mean, std::sqrt(var / n), count_};
  }

  std::int64_t count_ = 0;
  double mean_x_ = 0.0, mean_y_ = 0.0;
  double m2_x_ = 0.0, m2_y_ = 0.0, c_xy_ = 0.0;
};

struct OutcomeEstimate {
  Estimate probability;  // <P>
  Estimate pf;           // <P F>
  Estimate fidelity;     // <P F> / <P>
};

struct McAverages {
  std::vector<OutcomeEstimate> per_outcome;  // by joint outcome index
  Estimate p_suc;
  Estimate c_pro;
  Estimate f_pro;
  bool degenerate = false;
};

namespace detail {
struct ShardState {
  std::vector<PairAccumulator> outcomes;
  PairAccumulator totals;  // (p_suc, c_pro)

  void merge(const ShardState& o) {
    for (std::size_t i = 0; i < outcomes.size(); ++i) outcomes[i].merge(o.outcomes[i]);
    totals.merge(o.totals);
  }
};

inline ShardState run_shard(const MultiParams& params, const AcceptanceSet& acceptance,
                            std::int64_t draws, RandomStream stream) {
  const int num = params.num_qubits();
  ShardState st;
  st.outcomes.resize(std::size_t{1} << (2 * num));
  StreamRng rng(stream);
  for (std::int64_t s = 0; s < draws; ++s) {
    const StateVector input = haar_state(num, rng);
    const auto records = run_multi(input, params);
    double p_suc = 0.0, c_pro = 0.0;
    for (std::size_t idx = 0; idx < records.size(); ++idx) {
      const double p = records[idx].probability;
      const double pf = records[idx].fidelity ? p * *records[idx].fidelity : 0.0;
      st.outcomes[idx].add(p, pf);
      if (acceptance.contains(idx)) {
        p_suc += p;
        c_pro += pf;
      }
    }
    st.totals.add(p_suc, c_pro);
  }
  return st;
}
}  // namespace detail

/// Input-averaged protocol quantities estimated from `samples` Haar inputs.
/// Identical (params, acceptance, samples, seed) give bit-identical results.
inline McAverages mc_protocol_average(const MultiParams& params, const AcceptanceSet& acceptance,
                                      std::int64_t samples, std::uint64_t seed) {
  params.validate();
  if (samples < 100) throw ParameterError("mc_protocol_average needs at least 100 samples");
  if (acceptance.num_qubits() != params.num_qubits()) {
    throw ParameterError("acceptance set arity does not match the channel count");
  }
  if (acceptance.empty()) throw ParameterError("acceptance set must not be empty");

  std::vector<detail::ShardState> shards(kShards);
  {
    std::vector<std::jthread> workers;
    for (int s = 0; s < kShards; ++s) {
      const std::int64_t draws = samples / kShards + (s < samples % kShards ? 1 : 0);
      workers.emplace_back([&, s, draws] {
        shards[static_cast<std::size_t>(s)] = detail::run_shard(
            params, acceptance, draws, RandomStream{seed, static_cast<std::uint64_t>(s)});
      });
    }
  }
  detail::ShardState total = shards.front();
  for (std::size_t s = 1; s < shards.size(); ++s) total.merge(shards[s]);

  McAverages out;
  for (const auto& acc : total.outcomes) {
    out.per_outcome.push_back({acc.x(), acc.y(), acc.ratio()});
  }
  out.p_suc = total.totals.x();
  out.c_pro = total.totals.y();
  out.f_pro = total.totals.ratio();
  out.degenerate = out.p_suc.mean < 10.0 * out.p_suc.std_error || out.p_suc.mean == 0.0;
  return out;
}

}  // namespace gtp
