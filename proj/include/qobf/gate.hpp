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
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qobf/error.hpp"

namespace qobf {

using Qubit = std::uint32_t;

enum class GateKind : std::uint8_t { H, X, Z, CX, CCX, MCX };

inline constexpr std::array<GateKind, 6> kAllGateKinds = {GateKind::H,  GateKind::X,   GateKind::Z,
                                                          GateKind::CX, GateKind::CCX, GateKind::MCX};

/// Lowercase mnemonic used by the text format ("h", "cx", ...).
constexpr std::string_view mnemonic(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Z: return "z";
    case GateKind::CX: return "cx";
    case GateKind::CCX: return "ccx";
    case GateKind::MCX: return "mcx";
  }
  return "?";
}

inline std::optional<GateKind> kind_from_mnemonic(std::string_view text) noexcept {
  for (GateKind kind : kAllGateKinds) {
    if (mnemonic(kind) == text) return kind;
  }
  return std::nullopt;
}

/// One gate of the restricted gate set. Instances are always canonical:
/// controls sorted ascending, all indices distinct, and the kind agrees with the
/// control count (CX has 1, CCX has 2, MCX has 3 or more).
class GateOp {
 public:
  static GateOp h(Qubit target) { return GateOp(GateKind::H, {}, target); }
  static GateOp x(Qubit target) { return GateOp(GateKind::X, {}, target); }
  static GateOp z(Qubit target) { return GateOp(GateKind::Z, {}, target); }
  static GateOp cx(Qubit control, Qubit target) { return controlled_x({control}, target); }
  static GateOp ccx(Qubit c0, Qubit c1, Qubit target) { return controlled_x({c0, c1}, target); }

  /// NOT on `target` conditioned on every control; the kind is chosen from the
  /// number of controls (0 → X, 1 → CX, 2 → CCX, otherwise MCX).
  static GateOp controlled_x(std::vector<Qubit> controls, Qubit target) {
    GateKind kind = GateKind::MCX;
    switch (controls.size()) {
      case 0: kind = GateKind::X; break;
      case 1: kind = GateKind::CX; break;
      case 2: kind = GateKind::CCX; break;
      default: break;
    }
    return GateOp(kind, std::move(controls), target);
  }
  static GateOp controlled_x(std::initializer_list<Qubit> controls, Qubit target) {
    return controlled_x(std::vector<Qubit>(controls), target);
  }
  static GateOp mcx(std::vector<Qubit> controls, Qubit target) {
    return controlled_x(std::move(controls), target);
  }

  GateKind kind() const noexcept { return kind_; }
  std::span<const Qubit> controls() const noexcept { return controls_; }
  Qubit target() const noexcept { return target_; }

  /// Controls followed by the target.
  std::vector<Qubit> qubits() const {
    std::vector<Qubit> all(controls_);
    all.push_back(target_);
    return all;
  }

  Qubit max_qubit() const noexcept {
    Qubit m = target_;
    if (!controls_.empty()) m = std::max(m, controls_.back());
    return m;
  }

  bool acts_on(Qubit q) const noexcept {
    return q == target_ || std::binary_search(controls_.begin(), controls_.end(), q);
  }

  bool is_permutation() const noexcept { return kind_ != GateKind::H && kind_ != GateKind::Z; }

  friend bool operator==(const GateOp&, const GateOp&) = default;

 private:
  GateOp(GateKind kind, std::vector<Qubit> controls, Qubit target)
      : kind_(kind), controls_(std::move(controls)), target_(target) {
    std::sort(controls_.begin(), controls_.end());
    if (std::adjacent_find(controls_.begin(), controls_.end()) != controls_.end()) {
      throw ConstructionError("gate " + std::string(mnemonic(kind_)) + " has a repeated control qubit");
    }
    if (std::binary_search(controls_.begin(), controls_.end(), target_)) {
      throw ConstructionError("gate " + std::string(mnemonic(kind_)) + " uses qubit " +
                              std::to_string(target_) + " as both control and target");
    }
  }

  GateKind kind_;
  std::vector<Qubit> controls_;
  Qubit target_;
};

inline std::string to_string(const GateOp& op) {
  std::string out(mnemonic(op.kind()));
  for (Qubit c : op.controls()) out += ' ' + std::to_string(c);
  out += ' ' + std::to_string(op.target());
  return out;
}

}  // namespace qobf
