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
#include <vector>

#include "qobf/circuit.hpp"
#include "qobf/error.hpp"
#include "qobf/gate.hpp"

namespace qobf {

/// Where the V-chain decomposition may borrow work qubits.
///
/// `clean` lists qubits of the input circuit the caller guarantees are |0⟩ at
/// every MCX. With `allow_allocation`, missing ancillas are appended past the
/// original width; fresh ancillas are shared across gates since every chain
/// returns them to |0⟩.
struct AncillaPolicy {
  std::vector<Qubit> clean;
  bool allow_allocation = false;

  static AncillaPolicy allocate() { return {{}, true}; }
  static AncillaPolicy use(std::vector<Qubit> qubits) { return {std::move(qubits), false}; }
};

/// Emits the clean-ancilla V-chain for one k-control NOT (k ≥ 3): 2k−3 Toffolis
/// over k−2 ancillas, which end in |0⟩.
inline void append_vchain(Circuit& out, std::span<const Qubit> controls, Qubit target,
                          std::span<const Qubit> ancillas) {
  const std::size_t k = controls.size();
  std::vector<GateOp> compute;
  compute.reserve(k - 2);
  compute.push_back(GateOp::ccx(controls[0], controls[1], ancillas[0]));
  for (std::size_t i = 2; i + 1 < k; ++i) {
    compute.push_back(GateOp::ccx(controls[i], ancillas[i - 2], ancillas[i - 1]));
  }
  for (const GateOp& op : compute) out.append(op);
  out.append(GateOp::ccx(controls[k - 1], ancillas[k - 3], target));
  for (auto it = compute.rbegin(); it != compute.rend(); ++it) out.append(*it);
}

/// Rewrites every MCX into {CCX}; other gates pass through unchanged.
inline Circuit decompose_mcx(const Circuit& circuit, const AncillaPolicy& policy) {
  for (Qubit q : policy.clean) {
    if (q >= circuit.width()) {
      throw ConstructionError("ancilla " + std::to_string(q) + " outside width " +
                              std::to_string(circuit.width()));
    }
  }

  std::size_t fresh_needed = 0;
  for (const GateOp& op : circuit.ops()) {
    if (op.kind() != GateKind::MCX) continue;
    const std::size_t need = op.controls().size() - 2;
    std::size_t usable = 0;
    for (Qubit q : policy.clean) usable += op.acts_on(q) ? 0 : 1;
    if (usable < need) {
      if (!policy.allow_allocation) {
        throw ConstructionError("mcx with " + std::to_string(op.controls().size()) +
                                " controls needs " + std::to_string(need) + " clean ancillas, " +
                                std::to_string(usable) + " available");
      }
      fresh_needed = std::max(fresh_needed, need - usable);
    }
  }

  Circuit out(circuit.width() + fresh_needed);
  for (const auto& [name, qubits] : circuit.labels()) out.add_label(name, qubits);

  std::vector<Qubit> ancillas;
  for (const GateOp& op : circuit.ops()) {
    if (op.kind() != GateKind::MCX) {
      out.append(op);
      continue;
    }
    const std::size_t need = op.controls().size() - 2;
    ancillas.clear();
    for (Qubit q : policy.clean) {
      if (ancillas.size() == need) break;
      if (!op.acts_on(q)) ancillas.push_back(q);
    }
    for (Qubit q = static_cast<Qubit>(circuit.width()); ancillas.size() < need; ++q) {
      ancillas.push_back(q);
    }
    append_vchain(out, op.controls(), op.target(), ancillas);
  }
  return out;
}

}  // namespace qobf
