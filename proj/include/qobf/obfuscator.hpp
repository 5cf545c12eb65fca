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
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "qobf/arithmetic.hpp"
#include "qobf/circuit.hpp"
#include "qobf/error.hpp"
#include "qobf/gate.hpp"
#include "qobf/grover.hpp"
#include "qobf/statevector.hpp"

namespace qobf {

struct QubitMap {
  SumLayout sum;
  Qubit grover_ancilla = 0;
};

struct ObfuscationPlan {
  std::uint64_t N = 0;
  std::size_t n = 0;
  std::uint64_t T = 0;
  std::uint64_t M = 0;
  std::uint64_t R = 0;
  double theoretical_success = 0.0;
  QubitMap qubit_map;
  std::size_t total_qubits = 0;

  std::vector<Qubit> input_qubits() const { return qubit_map.sum.input_qubits(); }
};

/// Smallest n with 3·(2^n − 1) ≥ target.
inline std::size_t minimal_register_bits(std::uint64_t target) {
  for (std::size_t n = 1; n <= kMaxRegisterBits; ++n) {
    if (max_reachable_sum(n) >= target) return n;
  }
  throw ConstraintError("N=" + std::to_string(target) + " needs more than " +
                        std::to_string(kMaxRegisterBits) + " bits per register");
}

/// Picks n (when not given) and fills in M, R and the qubit map.
inline ObfuscationPlan plan(std::uint64_t target, std::optional<std::size_t> bits = std::nullopt) {
  if (target == 0) throw ConstraintError("N must be a natural number (N >= 1)");
  const std::size_t n = bits ? *bits : minimal_register_bits(target);
  const GroverPlan g = make_grover_plan(target, n);

  ObfuscationPlan p;
  p.N = target;
  p.n = n;
  p.T = g.T;
  p.M = g.M;
  p.R = g.R;
  p.theoretical_success = g.theoretical_success;
  p.qubit_map.sum = SumLayout::standard(n);
  p.qubit_map.grover_ancilla = static_cast<Qubit>(p.qubit_map.sum.width());
  p.total_qubits = 3 * n + 5;
  return p;
}

/// Uniform superposition over the inputs, |−⟩ on the Grover ancilla, then R
/// rounds of oracle followed by diffuser.
inline Circuit build_full_circuit(const ObfuscationPlan& p) {
  const SumLayout& layout = p.qubit_map.sum;
  const Qubit flag = p.qubit_map.grover_ancilla;
  const auto inputs = layout.input_qubits();

  const Circuit oracle = build_oracle(p.n, p.N);
  const auto diffuser = diffuser_ops(inputs, flag);

  Circuit circuit(p.total_qubits);
  for (Qubit q : inputs) circuit.append(GateOp::h(q));
  circuit.append(GateOp::x(flag));
  circuit.append(GateOp::h(flag));
  for (std::uint64_t r = 0; r < p.R; ++r) {
    circuit.append(oracle.ops());
    circuit.append(diffuser);
  }
  label_sum_registers(circuit, layout);
  circuit.add_label("grover_ancilla", {flag});
  return circuit;
}

struct Triplet {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::uint64_t z = 0;

  std::uint64_t sum() const noexcept { return x + y + z; }
  friend auto operator<=>(const Triplet&, const Triplet&) = default;
};

/// Splits a 3n-character bitstring (qubit 0 rightmost) into little-endian x, y, z.
inline Triplet decode(std::string_view bitstring, std::size_t n) {
  if (bitstring.size() != 3 * n) {
    throw ConstructionError("bitstring has " + std::to_string(bitstring.size()) +
                            " characters, expected 3n = " + std::to_string(3 * n));
  }
  auto bit = [&](std::size_t qubit) -> std::uint64_t {
    const char c = bitstring[bitstring.size() - 1 - qubit];
    if (c != '0' && c != '1') throw ConstructionError("bitstring contains a non-binary character");
    return c == '1' ? 1 : 0;
  };
  Triplet t;
  for (std::size_t k = 0; k < n; ++k) {
    t.x |= bit(k) << k;
    t.y |= bit(n + k) << k;
    t.z |= bit(2 * n + k) << k;
  }
  return t;
}

inline Triplet decode(std::string_view bitstring, const ObfuscationPlan& p) {
  return decode(bitstring, p.n);
}

/// Inverse of decode.
inline std::string encode(const Triplet& t, std::size_t n) {
  const std::uint64_t limit = std::uint64_t{1} << n;
  if (t.x >= limit || t.y >= limit || t.z >= limit) {
    throw ConstraintError("triplet component does not fit in " + std::to_string(n) + " bits");
  }
  const std::uint64_t packed = t.x | (t.y << n) | (t.z << (2 * n));
  return to_bitstring(packed, 3 * n);
}

struct DecodedHistogram {
  std::map<Triplet, std::uint64_t> counts;
  std::uint64_t shots = 0;
  double valid_fraction = 0.0;

  /// Entries by count descending, ties by (x, y, z) ascending.
  std::vector<std::pair<Triplet, std::uint64_t>> ranked() const {
    std::vector<std::pair<Triplet, std::uint64_t>> v(counts.begin(), counts.end());
    std::stable_sort(v.begin(), v.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return v;
  }

  friend bool operator==(const DecodedHistogram&, const DecodedHistogram&) = default;
};

inline DecodedHistogram decode_histogram(const Histogram& hist, const ObfuscationPlan& p) {
  DecodedHistogram out;
  out.shots = hist.shots;
  std::uint64_t valid = 0;
  for (const auto& [bits, count] : hist.counts) {
    const Triplet t = decode(bits, p);
    out.counts[t] += count;
    if (t.sum() == p.N) valid += count;
  }
  out.valid_fraction =
      hist.shots == 0 ? 0.0 : static_cast<double>(valid) / static_cast<double>(hist.shots);
  return out;
}

/// Total marginal probability of the triplets summing to N.
inline double solution_probability(const StateVector& state, const ObfuscationPlan& p) {
  const auto inputs = p.input_qubits();
  const auto marginal = marginal_distribution(state, inputs);
  const std::size_t n = p.n;
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  double total = 0.0;
  for (std::uint64_t idx = 0; idx < marginal.size(); ++idx) {
    const std::uint64_t s = (idx & mask) + ((idx >> n) & mask) + ((idx >> (2 * n)) & mask);
    if (s == p.N) total += marginal[idx];
  }
  return total;
}

struct RunOptions {
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
  std::size_t max_qubits = kDefaultMaxQubits;
};

struct RunReport {
  ObfuscationPlan plan;
  DecodedHistogram histogram;
  double exact_success = 0.0;
  double simulation_seconds = 0.0;
};

/// Simulates the plan from |0…0⟩, samples the input qubits and decodes triplets.
inline StateVector simulate(const ObfuscationPlan& p, const Circuit& circuit,
                            std::size_t max_qubits = kDefaultMaxQubits) {
  StateVector state = StateVector::zero(p.total_qubits, max_qubits);
  state.apply(circuit);
  return state;
}

inline RunReport run(const ObfuscationPlan& p, const RunOptions& options = {}) {
  if (options.shots == 0) throw std::invalid_argument("shots must be >= 1");
  if (p.total_qubits > options.max_qubits) {
    throw ResourceError("plan needs " + std::to_string(p.total_qubits) +
                        " qubits, simulator cap is " + std::to_string(options.max_qubits));
  }
  const Circuit circuit = build_full_circuit(p);

  const auto start = std::chrono::steady_clock::now();
  const StateVector state = simulate(p, circuit, options.max_qubits);
  const auto stop = std::chrono::steady_clock::now();

  RunReport report;
  report.plan = p;
  report.simulation_seconds = std::chrono::duration<double>(stop - start).count();
  report.exact_success = solution_probability(state, p);
  const auto inputs = p.input_qubits();
  report.histogram = decode_histogram(sample(state, inputs, options.shots, options.seed), p);
  return report;
}

inline nlohmann::json to_json(const RunReport& r) {
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& [t, count] : r.histogram.ranked()) {
    counts.push_back({{"x", t.x}, {"y", t.y}, {"z", t.z}, {"count", count}});
  }
  return nlohmann::json{{"n_value", r.plan.N},
                        {"bits", r.plan.n},
                        {"iterations", r.plan.R},
                        {"shots", r.histogram.shots},
                        {"valid_fraction", r.histogram.valid_fraction},
                        {"exact_success", r.exact_success},
                        {"counts", std::move(counts)}};
}

}  // namespace qobf
