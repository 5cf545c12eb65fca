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

#include "qobf/obfuscator.hpp"

#include <cmath>
#include <cstdint>

#include "gtest/gtest.h"
#include "json.hpp"
#include "qobf/circuit.hpp"
#include "qobf/grover.hpp"

using namespace qobf;

TEST(Plan, Nineteen) {
  const ObfuscationPlan p = plan(19, 3);
  EXPECT_EQ(p.n, 3u);
  EXPECT_EQ(p.T, 512u);
  EXPECT_EQ(p.M, 6u);
  EXPECT_EQ(p.R, 7u);
  EXPECT_EQ(p.total_qubits, 14u);
  EXPECT_EQ(p.qubit_map.grover_ancilla, 13u);
  EXPECT_EQ(p.qubit_map.sum.sum_qubits, (std::vector<Qubit>{6, 7, 8, 10, 11}));
}

TEST(Plan, ChoosesMinimalWidth) {
  EXPECT_EQ(plan(7).n, 2u);
  EXPECT_EQ(plan(7).total_qubits, 11u);
  EXPECT_EQ(plan(9).n, 2u);
  EXPECT_EQ(plan(10).n, 3u);
  EXPECT_EQ(plan(21).n, 3u);
  EXPECT_EQ(plan(22).n, 4u);
  EXPECT_EQ(plan(3).n, 1u);
  EXPECT_EQ(plan(19).n, 3u);
}

TEST(Plan, Errors) {
  try {
    plan(7, 1);
    FAIL() << "expected ConstraintError";
  } catch (const ConstraintError& e) {
    EXPECT_NE(std::string(e.what()).find("3*(2^n - 1) = 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(plan(0), ConstraintError);
  EXPECT_THROW(plan(19, 0), ConstraintError);
}

TEST(Plan, TotalQubitsIsThreeNPlusFive) {
  for (std::uint64_t target = 1; target < 400; target += 13) {
    const auto p = plan(target);
    EXPECT_EQ(p.total_qubits, 3 * p.n + 5);
    EXPECT_EQ(build_full_circuit(p).width(), 3 * p.n + 5);
    EXPECT_LE(target, 3 * ((std::uint64_t{1} << p.n) - 1));
  }
}

TEST(FullCircuit, InitialisationLayer) {
  const ObfuscationPlan p = plan(19, 3);
  const Circuit c = build_full_circuit(p);
  EXPECT_EQ(c.width(), 14u);
  for (Qubit q = 0; q < 9; ++q) EXPECT_EQ(c.ops()[q], GateOp::h(q));
  EXPECT_EQ(c.ops()[9], GateOp::x(13));
  EXPECT_EQ(c.ops()[10], GateOp::h(13));
  EXPECT_EQ(c.labels().at("grover_ancilla"), std::vector<Qubit>{13});
}

TEST(FullCircuit, ZeroIterationsIsJustInitialisation) {
  ObfuscationPlan p = plan(19, 3);
  p.R = 0;
  EXPECT_EQ(build_full_circuit(p).size(), 11u);
}

TEST(FullCircuit, RoundsAreOracleThenDiffuser) {
  const ObfuscationPlan p = plan(7);
  const Circuit c = build_full_circuit(p);
  const Circuit oracle = build_oracle(p.n, p.N);
  const std::size_t diffuser = 4 * 3 * p.n + 1;
  EXPECT_EQ(c.size(), 3 * p.n + 2 + p.R * (oracle.size() + diffuser));
}

TEST(FullCircuit, NormPreservedEndToEnd) {
  const ObfuscationPlan p = plan(19, 3);
  const Circuit c = build_full_circuit(p);
  StateVector s = StateVector::zero(p.total_qubits);
  for (const GateOp& op : c.ops()) {
    s.apply(op);
    ASSERT_NEAR(s.norm_squared(), 1.0, 1e-9);
  }
}

TEST(Decode, NineteenBitstring) {
  // q0..q8 = 1,1,1,1,1,1,1,0,1, written with q0 rightmost.
  EXPECT_EQ(decode("101111111", 3), (Triplet{7, 7, 5}));
  EXPECT_EQ(decode("000000000", plan(19, 3)), (Triplet{0, 0, 0}));
  EXPECT_THROW(decode("0101", 3), ConstructionError);
  EXPECT_THROW(decode("10111111x", 3), ConstructionError);
}

TEST(Decode, InvertsEncodeExhaustively) {
  for (std::uint64_t x = 0; x < 4; ++x)
    for (std::uint64_t y = 0; y < 4; ++y)
      for (std::uint64_t z = 0; z < 4; ++z) {
        const Triplet t{x, y, z};
        EXPECT_EQ(decode(encode(t, 2), 2), t);
      }
  EXPECT_THROW(encode(Triplet{4, 0, 0}, 2), ConstraintError);
}

TEST(Run, TargetNineteen) {
  const RunReport r = run(plan(19, 3), {1024, 7});
  EXPECT_EQ(r.histogram.shots, 1024u);
  EXPECT_GE(r.histogram.valid_fraction, 0.86);
  EXPECT_NEAR(r.exact_success, theoretical_success(512, 6, 7), 1e-6);
  const auto ranked = r.histogram.ranked();
  ASSERT_GE(ranked.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(ranked[i].first.sum(), 19u);
  std::uint64_t total = 0;
  for (const auto& [t, count] : r.histogram.counts) {
    EXPECT_LT(t.x, 8u);
    EXPECT_LT(t.y, 8u);
    EXPECT_LT(t.z, 8u);
    total += count;
  }
  EXPECT_EQ(total, 1024u);
}

TEST(Run, SingleBitRegisters) {
  const ObfuscationPlan p = plan(3, 1);
  EXPECT_EQ(p.M, 1u);
  EXPECT_EQ(p.R, 2u);
  const RunReport r = run(p, {2000, 1});
  EXPECT_NEAR(r.exact_success, theoretical_success(8, 1, 2), 1e-6);
  const auto ranked = r.histogram.ranked();
  EXPECT_EQ(ranked.front().first, (Triplet{1, 1, 1}));
  // 2000 shots at p ~ 0.9453: five sigma is about 0.025.
  EXPECT_NEAR(r.histogram.valid_fraction, r.exact_success, 0.03);
}

TEST(Run, ExactSuccessMatchesClosedFormForSmallWidths) {
  for (std::uint64_t target : {1u, 2u, 3u, 4u, 5u, 7u, 9u, 11u, 17u}) {
    const ObfuscationPlan p = plan(target);
    const RunReport r = run(p, {16, 0});
    EXPECT_NEAR(r.exact_success, theoretical_success(p.T, p.M, p.R), 1e-6) << "N=" << target;
  }
}

TEST(Run, Deterministic) {
  const ObfuscationPlan p = plan(7);
  EXPECT_EQ(run(p, {512, 99}).histogram, run(p, {512, 99}).histogram);
}

TEST(Run, Errors) {
  EXPECT_THROW(run(plan(19, 3), {0, 1}), std::invalid_argument);
  RunOptions tight;
  tight.max_qubits = 13;
  EXPECT_THROW(run(plan(19, 3), tight), ResourceError);
}

TEST(RunJson, SchemaAndOrdering) {
  const RunReport r = run(plan(19, 3), {1024, 7});
  const nlohmann::json j = to_json(r);
  EXPECT_EQ(j.at("n_value"), 19);
  EXPECT_EQ(j.at("bits"), 3);
  EXPECT_EQ(j.at("iterations"), 7);
  EXPECT_EQ(j.at("shots"), 1024);
  EXPECT_DOUBLE_EQ(j.at("valid_fraction").get<double>(), r.histogram.valid_fraction);
  EXPECT_DOUBLE_EQ(j.at("exact_success").get<double>(), r.exact_success);
  const auto& counts = j.at("counts");
  ASSERT_EQ(counts.size(), r.histogram.counts.size());
  for (std::size_t i = 1; i < counts.size(); ++i) {
    const auto& a = counts[i - 1];
    const auto& b = counts[i];
    const auto key = [](const nlohmann::json& e) {
      return std::tuple(e.at("x").get<std::uint64_t>(), e.at("y").get<std::uint64_t>(),
                        e.at("z").get<std::uint64_t>());
    };
    const auto ca = a.at("count").get<std::uint64_t>();
    const auto cb = b.at("count").get<std::uint64_t>();
    EXPECT_TRUE(ca > cb || (ca == cb && key(a) < key(b)));
  }
}
