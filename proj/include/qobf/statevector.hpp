// Copyright 2026 The qobf Authors
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

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qobf/circuit.hpp"
#include "qobf/error.hpp"
#include "qobf/gate.hpp"

namespace qobf {

using Amplitude = std::complex<double>;

/// 2^26 doubles-pairs is 1 GiB, enough for the largest benchmark instance.
inline constexpr std::size_t kDefaultMaxQubits = 26;

/// Dense pure state over `width` qubits. Qubit k contributes 2^k to the basis
/// index (little-endian).
class StateVector {
 public:
  /// |0…0⟩. Throws ResourceError when `width` is 0 or above `max_qubits`.
  static StateVector zero(std::size_t width, std::size_t max_qubits = kDefaultMaxQubits) {
    check_width(width, max_qubits);
    StateVector s;
    s.width_ = width;
    s.amps_.assign(std::size_t{1} << width, Amplitude{0.0, 0.0});
    s.amps_[0] = 1.0;
    return s;
  }

  static StateVector basis(std::size_t width, std::uint64_t index,
                           std::size_t max_qubits = kDefaultMaxQubits) {
    StateVector s = zero(width, max_qubits);
    if (index >= s.amps_.size()) {
      throw ConstructionError("basis index " + std::to_string(index) + " outside " +
                              std::to_string(width) + "-qubit space");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
  }

  /// Adopts raw amplitudes; the length must be a power of two. No normalization.
  static StateVector from_amplitudes(std::vector<Amplitude> amps) {
    if (amps.size() < 2 || (amps.size() & (amps.size() - 1)) != 0) {
      throw ConstructionError("amplitude array length " + std::to_string(amps.size()) +
                              " is not a power of two >= 2");
    }
    StateVector s;
    s.width_ = static_cast<std::size_t>(std::countr_zero(amps.size()));
    s.amps_ = std::move(amps);
    return s;
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  std::span<Amplitude> amplitudes() noexcept { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const noexcept {
    double sum = 0.0;
    for (const Amplitude& a : amps_) sum += std::norm(a);
    return sum;
  }

  void apply(const GateOp& op) {
    if (op.max_qubit() >= width_) {
      throw ConstructionError("gate '" + to_string(op) + "' addresses qubit outside width " +
                              std::to_string(width_));
    }
    const std::uint64_t tbit = std::uint64_t{1} << op.target();
    std::uint64_t cmask = 0;
    for (Qubit c : op.controls()) cmask |= std::uint64_t{1} << c;

    switch (op.kind()) {
      case GateKind::H: {
        const double r = 1.0 / std::sqrt(2.0);
        for_each_free_index(op, [&](std::uint64_t i) {
          const Amplitude a = amps_[i];
          const Amplitude b = amps_[i | tbit];
          amps_[i] = (a + b) * r;
          amps_[i | tbit] = (a - b) * r;
        });
        break;
      }
      case GateKind::Z:
        for_each_free_index(op, [&](std::uint64_t i) { amps_[i | tbit] = -amps_[i | tbit]; });
        break;
      case GateKind::X:
      case GateKind::CX:
      case GateKind::CCX:
      case GateKind::MCX:
        for_each_free_index(op, [&](std::uint64_t i) {
          std::swap(amps_[i | cmask], amps_[i | cmask | tbit]);
        });
        break;
    }
  }

  void apply(const Circuit& circuit) {
    if (circuit.width() != width_) {
      throw ConstructionError("circuit width " + std::to_string(circuit.width()) +
                              " does not match state width " + std::to_string(width_));
    }
    for (const GateOp& op : circuit.ops()) apply(op);
  }

 private:
  static void check_width(std::size_t width, std::size_t max_qubits) {
    if (width == 0 || width > max_qubits) {
      const long double bytes = std::ldexp(static_cast<long double>(sizeof(Amplitude)),
                                           static_cast<int>(std::min<std::size_t>(width, 4096)));
      throw ResourceError("statevector of " + std::to_string(width) + " qubits (2^" +
                          std::to_string(width) + " amplitudes, " +
                          std::to_string(static_cast<double>(bytes / (1024.0L * 1024.0L))) +
                          " MiB) is outside the allowed range 1.." + std::to_string(max_qubits));
    }
  }

  /// Calls `fn(i)` for every basis index with zeros at all of the gate's qubits,
  /// in ascending order.
  template <typename Fn>
  void for_each_free_index(const GateOp& op, Fn&& fn) const {
    std::vector<Qubit> fixed = op.qubits();
    std::sort(fixed.begin(), fixed.end());
    // Indices below the lowest fixed qubit form contiguous runs.
    const std::uint64_t run = std::uint64_t{1} << fixed.front();
    const std::uint64_t blocks = (std::uint64_t{1} << (width_ - fixed.size())) / run;
    for (std::uint64_t j = 0; j < blocks; ++j) {
      std::uint64_t base = j << fixed.front();
      for (Qubit p : fixed) {
        const std::uint64_t low = (std::uint64_t{1} << p) - 1;
        base = (base & low) | ((base & ~low) << 1);
      }
      for (std::uint64_t lo = 0; lo < run; ++lo) fn(base + lo);
    }
  }

  std::size_t width_ = 0;
  std::vector<Amplitude> amps_;
};

inline StateVector zero_state(std::size_t width, std::size_t max_qubits = kDefaultMaxQubits) {
  return StateVector::zero(width, max_qubits);
}

inline StateVector& apply_gate(StateVector& state, const GateOp& op) {
  state.apply(op);
  return state;
}

inline StateVector& run_circuit(StateVector& state, const Circuit& circuit) {
  state.apply(circuit);
  return state;
}

/// |⟨a|b⟩|².
inline double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dimension() != b.dimension()) throw ConstructionError("fidelity: width mismatch");
  Amplitude inner{0.0, 0.0};
  for (std::size_t i = 0; i < a.dimension(); ++i) inner += std::conj(a[i]) * b[i];
  return std::norm(inner);
}

/// Bitstring of the low `width` bits of `value`, qubit 0 rightmost.
inline std::string to_bitstring(std::uint64_t value, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t k = 0; k < width; ++k) {
    if ((value >> k) & 1U) s[width - 1 - k] = '1';
  }
  return s;
}

namespace detail {

inline void check_subset(const StateVector& state, std::span<const Qubit> qubits) {
  std::vector<Qubit> sorted(qubits.begin(), qubits.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConstructionError("qubit subset contains a duplicate index");
  }
  if (!sorted.empty() && sorted.back() >= state.width()) {
    throw ConstructionError("qubit subset index " + std::to_string(sorted.back()) +
                            " outside width " + std::to_string(state.width()));
  }
}

}  // namespace detail

/// Marginal distribution over `qubits`, indexed little-endian by position in
/// the list (bit j of the result index = value of qubits[j]).
inline std::vector<double> marginal_distribution(const StateVector& state,
                                                 std::span<const Qubit> qubits) {
  detail::check_subset(state, qubits);
  std::vector<double> marginal(std::size_t{1} << qubits.size(), 0.0);
  const auto amps = state.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p == 0.0) continue;
    std::uint64_t sub = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) sub |= ((i >> qubits[j]) & 1U) << j;
    marginal[sub] += p;
  }
  return marginal;
}

/// Nonzero marginal probabilities keyed by sub-bitstring (qubits[0] rightmost).
inline std::map<std::string, double> probabilities_of_subset(const StateVector& state,
                                                             std::span<const Qubit> qubits) {
  std::map<std::string, double> out;
  const auto marginal = marginal_distribution(state, qubits);
  for (std::uint64_t sub = 0; sub < marginal.size(); ++sub) {
    if (marginal[sub] > 0.0) out.emplace(to_bitstring(sub, qubits.size()), marginal[sub]);
  }
  return out;
}

struct Histogram {
  std::size_t width = 0;
  std::uint64_t shots = 0;
  std::map<std::string, std::uint64_t> counts;

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

/// Draws `shots` independent outcomes from the marginal over `qubits`.
///
/// The generator is std::mt19937_64 seeded with `seed` (its output sequence is
/// fixed by the C++ standard). Each draw takes one 64-bit word, keeps the top 53
/// bits as u ∈ [0,1), and selects the first outcome whose cumulative probability
/// exceeds u·total, with the cumulative sums formed in ascending index order.
inline Histogram sample(const StateVector& state, std::span<const Qubit> qubits,
                        std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("sample: shots must be >= 1");
  const auto marginal = marginal_distribution(state, qubits);
  std::vector<double> cdf(marginal.size());
  double running = 0.0;
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    running += marginal[i];
    cdf[i] = running;
  }
  const double total = running;

  std::mt19937_64 rng(seed);
  std::map<std::uint64_t, std::uint64_t> tally;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u * total);
    auto idx = static_cast<std::size_t>(it - cdf.begin());
    if (it == cdf.end()) {
      // u·total rounded up to total; take the last outcome with mass.
      idx = marginal.size() - 1;
      while (idx > 0 && marginal[idx] == 0.0) --idx;
    }
    ++tally[idx];
  }

  Histogram hist{qubits.size(), shots, {}};
  for (const auto& [idx, count] : tally) hist.counts.emplace(to_bitstring(idx, qubits.size()), count);
  return hist;
}

}  // namespace qobf
