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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "qobf/arithmetic.hpp"
#include "qobf/circuit.hpp"
#include "qobf/error.hpp"
#include "qobf/gate.hpp"

namespace qobf {

/// Largest register width for which 2^(3n) fits in 64 bits.
inline constexpr std::size_t kMaxRegisterBits = 21;

inline void check_register_bits(std::size_t n) {
  if (n == 0 || n > kMaxRegisterBits) {
    throw ConstraintError("register width n=" + std::to_string(n) + " outside 1.." +
                          std::to_string(kMaxRegisterBits));
  }
}

/// 3·(2^n − 1): the largest value x+y+z can take with n-bit registers.
inline std::uint64_t max_reachable_sum(std::size_t n) {
  check_register_bits(n);
  return 3 * ((std::uint64_t{1} << n) - 1);
}

/// Number of triplets 0 ≤ x,y,z < 2^n with x+y+z = target, by inclusion–exclusion
/// over how many components exceed their bound.
inline std::uint64_t count_solutions(std::uint64_t target, std::size_t n) {
  check_register_bits(n);
  auto choose2 = [](std::int64_t k) -> std::int64_t { return k < 2 ? 0 : k * (k - 1) / 2; };
  constexpr std::int64_t kChoose3[4] = {1, 3, 3, 1};
  const auto t = static_cast<std::int64_t>(target);
  const std::int64_t span = std::int64_t{1} << n;
  std::int64_t m = 0;
  for (int j = 0; j <= 3; ++j) {
    const std::int64_t rest = t - j * span;
    if (rest < 0) break;
    m += (j % 2 == 0 ? 1 : -1) * kChoose3[j] * choose2(rest + 2);
  }
  return static_cast<std::uint64_t>(m);
}

/// round(π/4 · √(T/M)), halves rounded away from zero.
inline std::uint64_t optimal_iterations(std::uint64_t space, std::uint64_t marked) {
  if (marked == 0) throw NoSolutionError("no marked states: Grover search has nothing to amplify");
  if (marked > space) {
    throw ConstraintError("marked count " + std::to_string(marked) + " exceeds search space " +
                          std::to_string(space));
  }
  const double ratio = static_cast<double>(space) / static_cast<double>(marked);
  return static_cast<std::uint64_t>(std::llround(std::numbers::pi / 4.0 * std::sqrt(ratio)));
}

/// Probability of measuring a marked state after `iterations` ideal rounds:
/// sin²((2R+1)·asin(√(M/T))).
inline double theoretical_success(std::uint64_t space, std::uint64_t marked,
                                  std::uint64_t iterations) {
  if (marked == 0 || marked > space) {
    throw ConstraintError("theoretical_success needs 1 <= M <= T");
  }
  const double theta =
      std::asin(std::sqrt(static_cast<double>(marked) / static_cast<double>(space)));
  const double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * theta);
  return s * s;
}

struct GroverPlan {
  std::size_t n = 0;
  std::uint64_t N = 0;
  std::uint64_t T = 0;
  std::uint64_t M = 0;
  std::uint64_t R = 0;
  double theoretical_success = 0.0;

  friend bool operator==(const GroverPlan&, const GroverPlan&) = default;
};

inline GroverPlan make_grover_plan(std::uint64_t target, std::size_t n) {
  check_register_bits(n);
  if (target > max_reachable_sum(n)) {
    throw ConstraintError("N=" + std::to_string(target) + " is unreachable with n=" +
                          std::to_string(n) + " bits: need N <= 3*(2^n - 1) = " +
                          std::to_string(max_reachable_sum(n)));
  }
  GroverPlan p;
  p.n = n;
  p.N = target;
  p.T = std::uint64_t{1} << (3 * n);
  p.M = count_solutions(target, n);
  p.R = optimal_iterations(p.T, p.M);
  p.theoretical_success = qobf::theoretical_success(p.T, p.M, p.R);
  return p;
}

inline void to_json(nlohmann::json& j, const GroverPlan& p) {
  j = nlohmann::json{{"n", p.n}, {"N", p.N}, {"T", p.T}, {"M", p.M}, {"R", p.R},
                     {"theoretical_success", p.theoretical_success}};
}

inline void from_json(const nlohmann::json& j, GroverPlan& p) {
  j.at("n").get_to(p.n);
  j.at("N").get_to(p.N);
  j.at("T").get_to(p.T);
  j.at("M").get_to(p.M);
  j.at("R").get_to(p.R);
  j.at("theoretical_success").get_to(p.theoretical_success);
}

/// Equality test on the sum register: X on every sum bit where `target` has a 0,
/// one NOT on `flag` controlled by the whole register, then the X gates again.
inline std::vector<GateOp> query_ops(std::span<const Qubit> sum_qubits, std::uint64_t target,
                                     Qubit flag) {
  const std::size_t bits = sum_qubits.size();
  if (bits < 64 && (target >> bits) != 0) {
    throw ConstraintError("N=" + std::to_string(target) + " does not fit the " +
                          std::to_string(bits) + "-bit sum register");
  }
  std::vector<GateOp> flips;
  for (std::size_t k = 0; k < bits; ++k) {
    if (((target >> k) & 1U) == 0) flips.push_back(GateOp::x(sum_qubits[k]));
  }
  std::vector<GateOp> ops = flips;
  ops.push_back(GateOp::mcx(std::vector<Qubit>(sum_qubits.begin(), sum_qubits.end()), flag));
  ops.insert(ops.end(), flips.rbegin(), flips.rend());
  return ops;
}

inline Circuit build_query(const SumLayout& layout, std::uint64_t target, Qubit grover_ancilla) {
  for (Qubit q : layout.sum_qubits) {
    if (q == grover_ancilla) throw ConstructionError("grover ancilla overlaps the sum register");
  }
  Circuit circuit(std::max<std::size_t>(layout.width(), grover_ancilla + std::size_t{1}));
  circuit.append(query_ops(layout.sum_qubits, target, grover_ancilla));
  return circuit;
}

/// Phase oracle for x+y+z = target over width 3n+5: sum, compare into the
/// Grover ancilla, uncompute the sum. With the ancilla in |−⟩ it is diagonal on
/// the 3n input qubits.
inline Circuit build_oracle(std::size_t n, std::uint64_t target) {
  check_register_bits(n);
  if (target > max_reachable_sum(n)) {
    throw ConstraintError("N=" + std::to_string(target) + " is unreachable with n=" +
                          std::to_string(n) + " bits: need N <= 3*(2^n - 1) = " +
                          std::to_string(max_reachable_sum(n)));
  }
  const SumLayout layout = SumLayout::standard(n);
  const auto flag = static_cast<Qubit>(layout.width());
  const auto sum = triple_sum_ops(layout);

  Circuit circuit(layout.width() + 1);
  circuit.append(sum);
  circuit.append(query_ops(layout.sum_qubits, target, flag));
  for (auto it = sum.rbegin(); it != sum.rend(); ++it) circuit.append(*it);
  label_sum_registers(circuit, layout);
  circuit.add_label("grover_ancilla", {flag});
  return circuit;
}

/// Inversion about the mean on `inputs` via phase kickback onto `flag` (|−⟩):
/// H, X, multi-controlled NOT, X, H.
inline std::vector<GateOp> diffuser_ops(std::span<const Qubit> inputs, Qubit flag) {
  std::vector<GateOp> ops;
  ops.reserve(4 * inputs.size() + 1);
  for (Qubit q : inputs) ops.push_back(GateOp::h(q));
  for (Qubit q : inputs) ops.push_back(GateOp::x(q));
  ops.push_back(GateOp::controlled_x(std::vector<Qubit>(inputs.begin(), inputs.end()), flag));
  for (Qubit q : inputs) ops.push_back(GateOp::x(q));
  for (Qubit q : inputs) ops.push_back(GateOp::h(q));
  return ops;
}

inline Circuit build_diffuser(std::span<const Qubit> inputs, Qubit grover_ancilla) {
  std::size_t width = grover_ancilla + std::size_t{1};
  for (Qubit q : inputs) width = std::max<std::size_t>(width, q + std::size_t{1});
  Circuit circuit(width);
  circuit.append(diffuser_ops(inputs, grover_ancilla));
  return circuit;
}

}  // namespace qobf
