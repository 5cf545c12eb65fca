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
#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qobf/error.hpp"
#include "qobf/gate.hpp"

namespace qobf {

/// An ordered list of gates over a fixed-width register, with optional named
/// register labels ("x" → {0,1,2}). Labels never overlap.
class Circuit {
 public:
  using Labels = std::map<std::string, std::vector<Qubit>>;

  Circuit() = default;
  explicit Circuit(std::size_t width) : width_(width) {}

  std::size_t width() const noexcept { return width_; }
  std::span<const GateOp> ops() const& noexcept { return ops_; }
  std::span<const GateOp> ops() const&& = delete;
  std::size_t size() const noexcept { return ops_.size(); }
  bool empty() const noexcept { return ops_.empty(); }
  const Labels& labels() const noexcept { return labels_; }

  Circuit& append(GateOp op) {
    if (op.max_qubit() >= width_) {
      throw ConstructionError("gate '" + to_string(op) + "' addresses qubit " +
                              std::to_string(op.max_qubit()) + " outside width " +
                              std::to_string(width_));
    }
    ops_.push_back(std::move(op));
    return *this;
  }

  Circuit& append(std::span<const GateOp> ops) {
    ops_.reserve(ops_.size() + ops.size());
    for (const GateOp& op : ops) append(op);
    return *this;
  }

  /// Appends every op of `other`; its labels are not copied.
  Circuit& append(const Circuit& other) {
    if (other.width() > width_) {
      throw ConstructionError("cannot append a width-" + std::to_string(other.width()) +
                              " circuit onto width " + std::to_string(width_));
    }
    return append(other.ops());
  }

  Circuit& add_label(const std::string& name, std::vector<Qubit> qubits) {
    if (name.empty() || name.find_first_of(" \t\n#") != std::string::npos) {
      throw ConstructionError("invalid label name '" + name + "'");
    }
    for (Qubit q : qubits) {
      if (q >= width_) {
        throw ConstructionError("label '" + name + "' references qubit " + std::to_string(q) +
                                " outside width " + std::to_string(width_));
      }
      for (const auto& [other, indices] : labels_) {
        if (other != name && std::find(indices.begin(), indices.end(), q) != indices.end()) {
          throw ConstructionError("label '" + name + "' overlaps label '" + other + "' at qubit " +
                                  std::to_string(q));
        }
      }
    }
    std::vector<Qubit> sorted = qubits;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ConstructionError("label '" + name + "' repeats a qubit");
    }
    labels_[name] = std::move(qubits);
    return *this;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<GateOp> ops_;
  Labels labels_;
};

/// `a` followed by `b`. Labels of `a` are kept.
inline Circuit compose(const Circuit& a, const Circuit& b) {
  if (a.width() != b.width()) {
    throw ConstructionError("compose: width mismatch (" + std::to_string(a.width()) + " vs " +
                            std::to_string(b.width()) + ")");
  }
  Circuit out = a;
  out.append(b.ops());
  return out;
}

/// Every gate in the set is self-inverse, so inversion is reversal.
inline Circuit inverse(const Circuit& circuit) {
  Circuit out(circuit.width());
  for (const auto& [name, qubits] : circuit.labels()) out.add_label(name, qubits);
  auto ops = circuit.ops();
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) out.append(*it);
  return out;
}

/// Layer count under as-soon-as-possible scheduling; two gates conflict iff
/// they share a qubit.
inline std::size_t depth(const Circuit& circuit) {
  std::vector<std::size_t> level(circuit.width(), 0);
  std::size_t result = 0;
  for (const GateOp& op : circuit.ops()) {
    std::size_t layer = level[op.target()];
    for (Qubit c : op.controls()) layer = std::max(layer, level[c]);
    ++layer;
    level[op.target()] = layer;
    for (Qubit c : op.controls()) level[c] = layer;
    result = std::max(result, layer);
  }
  return result;
}

struct GateCounts {
  std::array<std::size_t, kAllGateKinds.size()> by_kind{};
  std::size_t total = 0;

  std::size_t operator[](GateKind kind) const noexcept {
    return by_kind[static_cast<std::size_t>(kind)];
  }
  friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

inline GateCounts gate_counts(const Circuit& circuit) {
  GateCounts counts;
  for (const GateOp& op : circuit.ops()) {
    ++counts.by_kind[static_cast<std::size_t>(op.kind())];
    ++counts.total;
  }
  return counts;
}

}  // namespace qobf
