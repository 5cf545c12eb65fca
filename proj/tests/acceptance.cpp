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

// Acceptance suite: one line per criterion, nonzero exit if any fails.
//
// Criterion 8 simulates the two heavy targets (23 and 26 qubits); the 26-qubit
// run allocates 1 GiB and takes several minutes on one core.

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qobf/qobf.hpp"
#include "test_util.hpp"

using namespace qobf;
using qobf::testing::read_register;
using qobf::testing::write_register;

namespace {

int g_failures = 0;

class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw CheckFailed(what);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void criterion(const std::string& name, const std::function<std::string()>& body) {
  const auto start = std::chrono::steady_clock::now();
  try {
    const std::string detail = body();
    std::cout << "[PASS] " << name << " (" << detail << ", " << seconds_since(start) << " s)"
              << std::endl;
  } catch (const std::exception& e) {
    std::cout << "[FAIL] " << name << ": " << e.what() << std::endl;
    ++g_failures;
  }
}

void require_within(std::chrono::steady_clock::time_point start, double limit, const std::string& what) {
  const double took = seconds_since(start);
  require(took < limit, what + " took " + std::to_string(took) + " s, limit " + std::to_string(limit) + " s");
}

std::uint64_t brute_force_count(std::uint64_t target, std::size_t n) {
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < limit; ++x)
    for (std::uint64_t y = 0; y < limit; ++y)
      for (std::uint64_t z = 0; z < limit; ++z) count += (x + y + z == target) ? 1 : 0;
  return count;
}

double peak_rss_mib() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<double>(usage.ru_maxrss) / 1024.0;  // Linux reports KiB.
}

/// Exact probability of the solution set after the full Grover schedule.
double simulated_success(const ObfuscationPlan& p) {
  const Circuit c = build_full_circuit(p);
  StateVector s = StateVector::zero(p.total_qubits);
  s.apply(c);
  return solution_probability(s, p);
}

}  // namespace

int main() {
  criterion("AC1 benchmark table exact columns (n, iterations, qubits, valid solutions)", [] {
    struct Row {
      std::uint64_t N;
      std::size_t n;
      std::uint64_t R;
      std::size_t qubits;
      std::uint64_t M;
    };
    const Row table[] = {{7, 2, 3, 11, 6},       {15, 3, 3, 14, 28},     {31, 4, 5, 17, 120},
                         {63, 5, 6, 20, 496},    {127, 6, 9, 23, 2016},  {255, 7, 13, 26, 8128}};
    for (const Row& row : table) {
      const ObfuscationPlan p = plan(row.N);
      std::ostringstream got;
      got << p.n << ',' << p.R << ',' << p.total_qubits << ',' << p.M;
      require(p.n == row.n && p.R == row.R && p.total_qubits == row.qubits && p.M == row.M,
              "N=" + std::to_string(row.N) + " got " + got.str());
    }
    return std::string("6 rows match");
  });

  criterion("AC2 N=19 end to end (plan, sampled valid fraction, exact success)", [] {
    const auto start = std::chrono::steady_clock::now();
    const ObfuscationPlan p = plan(19);
    require(p.n == 3 && p.M == 6 && p.R == 7, "plan mismatch");
    const RunReport r = run(p, {1024, 0});
    const double closed = std::pow(std::sin(15.0 * std::asin(std::sqrt(6.0 / 512.0))), 2);
    require(r.histogram.valid_fraction >= 0.86,
            "valid_fraction " + std::to_string(r.histogram.valid_fraction) + " < 0.86");
    require(std::abs(r.exact_success - closed) <= 1e-6,
            "exact " + std::to_string(r.exact_success) + " vs closed form " + std::to_string(closed));
    require_within(start, 60.0, "N=19 run");
    std::ostringstream os;
    os << "valid_fraction=" << r.histogram.valid_fraction << " exact=" << r.exact_success;
    return os.str();
  });

  criterion("AC3 triple-sum adder exhaustive against integer addition, n=1..3", [] {
    const auto start = std::chrono::steady_clock::now();
    std::size_t cases = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
      auto [circuit, l] = build_triple_sum(n);
      // Adder 1 on its own must hand back a clean shared ancilla for adder 2.
      Circuit first(l.width());
      first.append(half_adder_ops(AdderLayout{l.x_qubits, l.y_qubits, l.shared_ancilla, l.cout0}));
      const std::uint64_t limit = std::uint64_t{1} << n;
      for (std::uint64_t x = 0; x < limit; ++x) {
        for (std::uint64_t y = 0; y < limit; ++y) {
          for (std::uint64_t z = 0; z < limit; ++z) {
            std::uint64_t in = write_register(0, l.x_qubits, x);
            in = write_register(in, l.y_qubits, y);
            in = write_register(in, l.z_qubits, z);
            const auto out = qobf::testing::run_basis(circuit, in);
            require(out.has_value(), "output is not a basis state");
            require(read_register(*out, l.sum_qubits) == x + y + z, "wrong sum");
            require(((*out >> l.adder2_ancilla) & 1U) == 0, "adder-2 ancilla dirty");
            const auto mid = qobf::testing::run_basis(first, in);
            require(mid.has_value() && ((*mid >> l.shared_ancilla) & 1U) == 0, "adder-1 ancilla dirty");
            ++cases;
          }
        }
      }
    }
    require(cases == 8 + 64 + 512, "case count " + std::to_string(cases));
    require_within(start, 30.0, "adder check");
    return std::to_string(cases) + " cases";
  });

  criterion("AC4 oracle phase property, n=2, N=0..9", [] {
    const auto start = std::chrono::steady_clock::now();
    std::size_t checked = 0;
    for (std::uint64_t target = 0; target <= 9; ++target) {
      const Circuit oracle = build_oracle(2, target);
      const Qubit flag = 10;
      std::uint64_t flipped = 0;
      for (std::uint64_t in = 0; in < 64; ++in) {
        StateVector s = StateVector::basis(oracle.width(), in);
        s.apply(GateOp::x(flag));
        s.apply(GateOp::h(flag));
        const StateVector before = s;
        s.apply(oracle);
        Amplitude overlap{0.0, 0.0};
        for (std::size_t i = 0; i < s.dimension(); ++i) overlap += std::conj(before[i]) * s[i];
        const bool solution = (in & 3) + ((in >> 2) & 3) + ((in >> 4) & 3) == target;
        const double expected = solution ? -1.0 : 1.0;
        require(std::abs(overlap - Amplitude(expected, 0.0)) < 1e-9,
                "N=" + std::to_string(target) + " input " + std::to_string(in));
        flipped += solution ? 1 : 0;
        ++checked;
      }
      require(flipped == count_solutions(target, 2), "flip count mismatch at N=" + std::to_string(target));
    }
    require_within(start, 60.0, "oracle check");
    return std::to_string(checked) + " basis states";
  });

  criterion("AC5 counting formula equals brute force, n=1..5", [] {
    const auto start = std::chrono::steady_clock::now();
    std::size_t checks = 0;
    for (std::size_t n = 1; n <= 5; ++n) {
      for (std::uint64_t t = 0; t <= max_reachable_sum(n); ++t) {
        require(count_solutions(t, n) == brute_force_count(t, n),
                "N=" + std::to_string(t) + " n=" + std::to_string(n));
        ++checks;
      }
    }
    require_within(start, 5.0, "counting check");
    return std::to_string(checks) + " (N, n) pairs";
  });

  criterion("AC6 Grover dynamics match closed form within 1e-6", [] {
    std::ostringstream os;
    for (auto [target, n] : {std::pair<std::uint64_t, std::size_t>{7, 2}, {19, 3}, {15, 3}}) {
      const ObfuscationPlan p = plan(target, n);
      const double sim = simulated_success(p);
      const double closed = theoretical_success(p.T, p.M, p.R);
      require(std::abs(sim - closed) <= 1e-6, "N=" + std::to_string(target) + " sim " +
                                                  std::to_string(sim) + " closed " + std::to_string(closed));
      os << "N=" << target << ":" << sim << " ";
    }
    return os.str();
  });

  criterion("AC7 reversibility on random states and text round-trips", [] {
    std::mt19937_64 rng(2026);
    std::size_t states = 0;
    std::vector<Circuit> generated;
    for (std::size_t n = 1; n <= 3; ++n) {
      auto [sum, layout] = build_triple_sum(n);
      const Circuit oracle = build_oracle(n, max_reachable_sum(n) / 2);
      for (const Circuit* c : {static_cast<const Circuit*>(&sum), &oracle}) {
        const Circuit round_trip = compose(*c, inverse(*c));
        for (int i = 0; i < 20; ++i) {
          StateVector s = qobf::testing::random_state(c->width(), rng);
          const StateVector before = s;
          s.apply(round_trip);
          require(fidelity(s, before) >= 1.0 - 1e-9, "fidelity below 1 - 1e-9 at n=" + std::to_string(n));
          ++states;
        }
        generated.push_back(*c);
        generated.push_back(inverse(*c));
      }
      generated.push_back(build_query(layout, max_reachable_sum(n), static_cast<Qubit>(layout.width())));
      const auto inputs = layout.input_qubits();
      generated.push_back(build_diffuser(inputs, static_cast<Qubit>(layout.width())));
    }
    for (std::uint64_t target : {3u, 7u, 19u, 31u}) {
      const Circuit full = build_full_circuit(plan(target));
      generated.push_back(full);
      generated.push_back(decompose_mcx(full, AncillaPolicy::allocate()));
    }
    for (const Circuit& c : generated) require(parse(serialize(c)) == c, "round-trip mismatch");
    return std::to_string(states) + " random states, " + std::to_string(generated.size()) +
           " circuits round-tripped";
  });

  criterion("AC8 depth/gates strictly increase; heavy targets finish within 1536 MiB", [] {
    constexpr double kMemoryBudgetMiB = 1536.0;
    std::ostringstream os;
    std::size_t prev_depth = 0;
    std::size_t prev_gates = 0;
    for (std::uint64_t target : kBenchmarkTargets) {
      const BenchRow row = bench_row(target, false);
      require(row.depth > prev_depth && row.gate_total > prev_gates,
              "not strictly increasing at N=" + std::to_string(target));
      prev_depth = row.depth;
      prev_gates = row.gate_total;
      os << "N=" << target << " depth=" << row.depth << " gates=" << row.gate_total << "; ";
    }
    for (std::uint64_t target : {127u, 255u}) {
      const BenchRow row = bench_row(target, true);
      require(row.run_time_seconds.has_value(), "heavy run produced no timing");
      os << "N=" << target << " run_time=" << *row.run_time_seconds << "s; ";
    }
    const double rss = peak_rss_mib();
    require(rss <= kMemoryBudgetMiB, "peak RSS " + std::to_string(rss) + " MiB over budget");
    os << "peak_rss=" << rss << "MiB";
    return os.str();
  });

  std::cout << (g_failures == 0 ? "all acceptance criteria passed" : "acceptance failures: " + std::to_string(g_failures))
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
