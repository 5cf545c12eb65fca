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
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qobf/circuit.hpp"
#include "qobf/error.hpp"
#include "qobf/gate.hpp"

namespace qobf {

/// Qubits of one half ripple-carry adder: b ← a + b, with the carry-in
/// ancilla `ancilla` (starts and ends in |0⟩) and the top sum bit on `carry_out`.
struct AdderLayout {
  std::vector<Qubit> a_qubits;
  std::vector<Qubit> b_qubits;
  Qubit ancilla = 0;
  Qubit carry_out = 0;

  std::vector<Qubit> all() const {
    std::vector<Qubit> v = a_qubits;
    v.insert(v.end(), b_qubits.begin(), b_qubits.end());
    v.push_back(ancilla);
    v.push_back(carry_out);
    return v;
  }
};

/// Register map of the cascaded x + y + z adder (width 3n+4).
struct SumLayout {
  std::size_t bits = 0;
  std::vector<Qubit> x_qubits;
  std::vector<Qubit> y_qubits;
  std::vector<Qubit> z_qubits;
  Qubit cout0 = 0;
  Qubit shared_ancilla = 0;
  Qubit cout1 = 0;
  Qubit adder2_ancilla = 0;
  /// z_qubits ++ [shared_ancilla, cout1], little-endian, n+2 bits.
  std::vector<Qubit> sum_qubits;

  std::size_t width() const noexcept { return 3 * bits + 4; }

  /// x ++ y ++ z.
  std::vector<Qubit> input_qubits() const {
    std::vector<Qubit> v = x_qubits;
    v.insert(v.end(), y_qubits.begin(), y_qubits.end());
    v.insert(v.end(), z_qubits.begin(), z_qubits.end());
    return v;
  }

  /// Registers x, y, z in order, then cout0, shared ancilla,
  /// cout1, second adder's ancilla.
  static SumLayout standard(std::size_t n) {
    if (n == 0) throw ConstructionError("register width must be at least 1 bit");
    SumLayout l;
    l.bits = n;
    for (std::size_t i = 0; i < n; ++i) {
      l.x_qubits.push_back(static_cast<Qubit>(i));
      l.y_qubits.push_back(static_cast<Qubit>(n + i));
      l.z_qubits.push_back(static_cast<Qubit>(2 * n + i));
    }
    l.cout0 = static_cast<Qubit>(3 * n);
    l.shared_ancilla = static_cast<Qubit>(3 * n + 1);
    l.cout1 = static_cast<Qubit>(3 * n + 2);
    l.adder2_ancilla = static_cast<Qubit>(3 * n + 3);
    l.sum_qubits = l.z_qubits;
    l.sum_qubits.push_back(l.shared_ancilla);
    l.sum_qubits.push_back(l.cout1);
    return l;
  }
};

/// Majority: [CX(a→b), CX(a→c), CCX(c,b→a)]. Leaves the carry on `a`.
inline std::vector<GateOp> maj(Qubit c, Qubit b, Qubit a) {
  return {GateOp::cx(a, b), GateOp::cx(a, c), GateOp::ccx(c, b, a)};
}

/// Unmajority-and-add: [CCX(c,b→a), CX(a→c), CX(c→b)]. Restores `a` and `c`,
/// leaves the sum bit on `b`.
inline std::vector<GateOp> uma(Qubit c, Qubit b, Qubit a) {
  return {GateOp::ccx(c, b, a), GateOp::cx(a, c), GateOp::cx(c, b)};
}

/// Cuccaro ripple-carry adder without carry-in:
/// |a⟩|b⟩|0⟩_anc|0⟩_cout ↦ |a⟩|(a+b) mod 2^n⟩|0⟩_anc|msb(a+b)⟩.
inline std::vector<GateOp> half_adder_ops(const AdderLayout& layout) {
  const std::size_t n = layout.a_qubits.size();
  if (n == 0) throw ConstructionError("adder needs at least one bit");
  if (layout.b_qubits.size() != n) {
    throw ConstructionError("adder operands differ in width (" + std::to_string(n) + " vs " +
                            std::to_string(layout.b_qubits.size()) + ")");
  }
  auto all = layout.all();
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw ConstructionError("adder layout reuses a qubit index");
  }

  const auto& a = layout.a_qubits;
  const auto& b = layout.b_qubits;
  // Carry into column i lives on the ancilla (i = 0) or on a[i-1].
  auto carry_in = [&](std::size_t i) { return i == 0 ? layout.ancilla : a[i - 1]; };

  std::vector<GateOp> ops;
  ops.reserve(6 * n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (GateOp& op : maj(carry_in(i), b[i], a[i])) ops.push_back(std::move(op));
  }
  ops.push_back(GateOp::cx(a[n - 1], layout.carry_out));
  for (std::size_t i = n; i-- > 0;) {
    for (GateOp& op : uma(carry_in(i), b[i], a[i])) ops.push_back(std::move(op));
  }
  return ops;
}

/// The half adder as a circuit just wide enough for its layout.
inline Circuit build_half_adder(std::size_t n, const AdderLayout& layout) {
  if (n == 0) throw ConstructionError("adder needs at least one bit");
  if (layout.a_qubits.size() != n) {
    throw ConstructionError("layout has " + std::to_string(layout.a_qubits.size()) +
                            " operand bits, expected " + std::to_string(n));
  }
  auto ops = half_adder_ops(layout);
  const auto all = layout.all();
  Circuit circuit(*std::max_element(all.begin(), all.end()) + std::size_t{1});
  circuit.append(ops);
  circuit.add_label("a", layout.a_qubits);
  circuit.add_label("b", layout.b_qubits);
  return circuit;
}

/// Adder 1 (x into y, carry cout0) followed by adder 2 ((y,cout0) into
/// (z,shared_ancilla), carry cout1). Restricted to x and the sum register the map
/// is (x, y, z) ↦ (x, x+y+z); all ancillas and carries start in |0⟩.
inline std::vector<GateOp> triple_sum_ops(const SumLayout& l) {
  AdderLayout first{l.x_qubits, l.y_qubits, l.shared_ancilla, l.cout0};

  AdderLayout second;
  second.a_qubits = l.y_qubits;
  second.a_qubits.push_back(l.cout0);
  second.b_qubits = l.z_qubits;
  second.b_qubits.push_back(l.shared_ancilla);
  second.ancilla = l.adder2_ancilla;
  second.carry_out = l.cout1;

  auto ops = half_adder_ops(first);
  auto more = half_adder_ops(second);
  ops.insert(ops.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  return ops;
}

inline void label_sum_registers(Circuit& circuit, const SumLayout& l) {
  circuit.add_label("x", l.x_qubits);
  circuit.add_label("y", l.y_qubits);
  circuit.add_label("z", l.z_qubits);
  circuit.add_label("cout0", {l.cout0});
  // The sum register is z ++ sum_hi; labels may not overlap, so only the two
  // extension bits get their own name.
  circuit.add_label("sum_hi", {l.shared_ancilla, l.cout1});
  circuit.add_label("adder2_ancilla", {l.adder2_ancilla});
}

inline std::pair<Circuit, SumLayout> build_triple_sum(std::size_t n) {
  SumLayout layout = SumLayout::standard(n);
  Circuit circuit(layout.width());
  circuit.append(triple_sum_ops(layout));
  label_sum_registers(circuit, layout);
  return {std::move(circuit), std::move(layout)};
}

}  // namespace qobf
