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

// Text format, one statement per line ('\n' endings, ASCII):
//
//   width <w>                  (first statement, required)
//   label <name> <i> <i> ...   (zero or more)
//   <mnemonic> <controls...> <target>
//
// Mnemonics are h, x, z, cx, ccx, mcx. '#' starts a comment; blank lines are
// ignored.

#include <algorithm>
#include <charconv>
#include <optional>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qobf/circuit.hpp"
#include "qobf/error.hpp"
#include "qobf/gate.hpp"

namespace qobf {

inline std::string serialize(const Circuit& circuit) {
  std::string out = "width " + std::to_string(circuit.width()) + "\n";
  for (const auto& [name, qubits] : circuit.labels()) {
    out += "label " + name;
    for (Qubit q : qubits) out += ' ' + std::to_string(q);
    out += '\n';
  }
  for (const GateOp& op : circuit.ops()) {
    out += to_string(op);
    out += '\n';
  }
  return out;
}

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

inline std::size_t parse_index(std::string_view token, std::size_t line_no) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line_no, std::string(token), "expected a non-negative integer");
  }
  return value;
}

}  // namespace detail

inline Circuit parse(std::string_view text) {
  std::optional<Circuit> circuit;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = detail::split_tokens(line);
    if (tokens.empty()) continue;

    const std::string_view head = tokens.front();
    if (!circuit) {
      if (head != "width") throw ParseError(line_no, std::string(head), "expected 'width' header");
      if (tokens.size() != 2) {
        throw ParseError(line_no, std::string(head), "'width' takes exactly one value");
      }
      circuit.emplace(detail::parse_index(tokens[1], line_no));
      continue;
    }
    if (head == "width") throw ParseError(line_no, std::string(head), "duplicate 'width' header");

    std::vector<Qubit> indices;
    for (std::size_t i = (head == "label" ? 2 : 1); i < tokens.size(); ++i) {
      std::size_t idx = detail::parse_index(tokens[i], line_no);
      if (idx >= circuit->width()) {
        throw ParseError(line_no, std::string(tokens[i]),
                         "qubit index outside width " + std::to_string(circuit->width()));
      }
      indices.push_back(static_cast<Qubit>(idx));
    }

    try {
      if (head == "label") {
        if (tokens.size() < 2) throw ParseError(line_no, std::string(head), "label needs a name");
        circuit->add_label(std::string(tokens[1]), std::move(indices));
        continue;
      }
      auto kind = kind_from_mnemonic(head);
      if (!kind) throw ParseError(line_no, std::string(head), "unknown gate");
      std::size_t expected = 0;
      switch (*kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Z: expected = 1; break;
        case GateKind::CX: expected = 2; break;
        case GateKind::CCX: expected = 3; break;
        case GateKind::MCX: expected = 0; break;
      }
      if ((expected != 0 && indices.size() != expected) ||
          (expected == 0 && indices.size() < 2)) {
        throw ParseError(line_no, std::string(head),
                         "wrong number of qubit operands (" + std::to_string(indices.size()) + ")");
      }
      const Qubit target = indices.back();
      indices.pop_back();
      switch (*kind) {
        case GateKind::H: circuit->append(GateOp::h(target)); break;
        case GateKind::X: circuit->append(GateOp::x(target)); break;
        case GateKind::Z: circuit->append(GateOp::z(target)); break;
        default: circuit->append(GateOp::controlled_x(std::move(indices), target)); break;
      }
    } catch (const ConstructionError& e) {
      throw ParseError(line_no, std::string(head), e.what());
    }
  }
  if (!circuit) throw ParseError(std::max<std::size_t>(line_no, 1), "", "missing 'width' header");
  return *std::move(circuit);
}

}  // namespace qobf
