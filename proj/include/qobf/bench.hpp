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

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include "qobf/circuit.hpp"
#include "qobf/decompose.hpp"
#include "qobf/obfuscator.hpp"
#include "qobf/statevector.hpp"

namespace qobf {

/// Targets N = 2^k − 1, k = 3..8.
inline constexpr std::array<std::uint64_t, 6> kBenchmarkTargets = {7, 15, 31, 63, 127, 255};

/// Targets above this many qubits only run on request.
inline constexpr std::size_t kLightQubitLimit = 20;

struct BenchRow {
  std::uint64_t N = 0;
  std::size_t n = 0;
  std::uint64_t iterations = 0;
  std::size_t qubits = 0;
  std::size_t depth = 0;
  std::size_t gate_total = 0;
  std::optional<double> run_time_seconds;
  std::uint64_t valid_solutions = 0;
};

struct CircuitMetrics {
  std::size_t depth = 0;
  GateCounts counts;
  std::size_t decomposed_depth = 0;
  GateCounts decomposed_counts;
  std::size_t decomposed_width = 0;
};

/// Depth and counts at MCX granularity and after the V-chain rewrite with
/// freshly allocated ancillas.
inline CircuitMetrics measure(const Circuit& circuit) {
  CircuitMetrics m;
  m.depth = depth(circuit);
  m.counts = gate_counts(circuit);
  const Circuit flat = decompose_mcx(circuit, AncillaPolicy::allocate());
  m.decomposed_depth = depth(flat);
  m.decomposed_counts = gate_counts(flat);
  m.decomposed_width = flat.width();
  return m;
}

inline BenchRow bench_row(std::uint64_t target, bool simulate_circuit,
                          std::size_t max_qubits = kDefaultMaxQubits) {
  const ObfuscationPlan p = plan(target);
  const Circuit circuit = build_full_circuit(p);
  const CircuitMetrics m = measure(circuit);

  BenchRow row;
  row.N = p.N;
  row.n = p.n;
  row.iterations = p.R;
  row.qubits = p.total_qubits;
  row.depth = m.decomposed_depth;
  row.gate_total = m.decomposed_counts.total;
  row.valid_solutions = p.M;
  if (simulate_circuit) {
    StateVector state = StateVector::zero(p.total_qubits, max_qubits);
    const auto start = std::chrono::steady_clock::now();
    state.apply(circuit);
    const auto stop = std::chrono::steady_clock::now();
    row.run_time_seconds = std::chrono::duration<double>(stop - start).count();
  }
  return row;
}

inline constexpr const char* kBenchCsvHeader =
    "N,n,iterations,qubits,depth,gates,run_time_s,valid_solutions";

/// One CSV line, no trailing newline. A skipped simulation leaves run_time_s empty.
inline std::string to_csv(const BenchRow& r) {
  std::string time;
  if (r.run_time_seconds) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", *r.run_time_seconds);
    time = buf;
  }
  return std::to_string(r.N) + ',' + std::to_string(r.n) + ',' + std::to_string(r.iterations) +
         ',' + std::to_string(r.qubits) + ',' + std::to_string(r.depth) + ',' +
         std::to_string(r.gate_total) + ',' + time + ',' + std::to_string(r.valid_solutions);
}

}  // namespace qobf
