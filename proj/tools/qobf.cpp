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

// qobf: hide a natural number N as x + y + z = N in three quantum registers,
// amplify the valid triplets with Grover search, and report what comes out.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qobf/qobf.hpp"

namespace {

constexpr int kExitConstraint = 2;
constexpr int kExitResource = 3;
constexpr int kExitIo = 4;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t max_qubits_from_env() {
  const char* raw = std::getenv("QOBF_MAX_QUBITS");
  if (raw == nullptr || *raw == '\0') return qobf::kDefaultMaxQubits;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0 || v > 40) {
    throw qobf::ConstraintError(std::string("QOBF_MAX_QUBITS must be an integer in 1..40, got '") +
                                raw + "'");
  }
  return static_cast<std::size_t>(v);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) throw IoError("write to '" + path + "' failed");
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// --- obfuscate -------------------------------------------------------------

struct ObfuscateArgs {
  std::uint64_t n_value = 0;
  std::optional<std::size_t> bits;
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string out;
  std::size_t top = 12;
};

std::string render_text(const qobf::RunReport& r, const ObfuscateArgs& args) {
  std::ostringstream os;
  const auto& p = r.plan;
  os << "N=" << p.N << " n=" << p.n << " qubits=" << p.total_qubits << " T=" << p.T
     << " M=" << p.M << " R=" << p.R << "\n";
  os << "shots=" << r.histogram.shots << " seed=" << args.seed << "\n\n";

  const auto ranked = r.histogram.ranked();
  std::uint64_t peak = ranked.empty() ? 1 : ranked.front().second;
  os << "rank      x      y      z  valid   count\n";
  std::size_t rank = 0;
  for (const auto& [t, count] : ranked) {
    if (rank == args.top) break;
    ++rank;
    char line[128];
    std::snprintf(line, sizeof line, "%4zu %6llu %6llu %6llu  %-5s %7llu  ", rank,
                  static_cast<unsigned long long>(t.x), static_cast<unsigned long long>(t.y),
                  static_cast<unsigned long long>(t.z), t.sum() == p.N ? "yes" : "no",
                  static_cast<unsigned long long>(count));
    os << line << std::string(static_cast<std::size_t>(40 * count / peak), '#') << "\n";
  }
  if (ranked.size() > rank) os << "(" << ranked.size() - rank << " more outcomes)\n";
  os << "\nvalid_fraction=" << fixed(r.histogram.valid_fraction, 4) << "\n";
  os << "exact_success=" << fixed(r.exact_success, 6) << "\n";
  os << "theoretical_success=" << fixed(p.theoretical_success, 6) << "\n";
  return os.str();
}

std::string render_csv(const qobf::RunReport& r) {
  std::string s = "x,y,z,count,valid\n";
  for (const auto& [t, count] : r.histogram.ranked()) {
    s += std::to_string(t.x) + ',' + std::to_string(t.y) + ',' + std::to_string(t.z) + ',' +
         std::to_string(count) + ',' + (t.sum() == r.plan.N ? "1" : "0") + '\n';
  }
  return s;
}

int cmd_obfuscate(const ObfuscateArgs& args) {
  const qobf::ObfuscationPlan p = qobf::plan(args.n_value, args.bits);
  qobf::RunOptions opts;
  opts.shots = args.shots;
  opts.seed = args.seed;
  opts.max_qubits = max_qubits_from_env();
  const qobf::RunReport report = qobf::run(p, opts);

  std::string text;
  if (args.format == "json") {
    text = qobf::to_json(report).dump(2) + "\n";
  } else if (args.format == "csv") {
    text = render_csv(report);
  } else {
    text = render_text(report, args);
  }
  emit(text, args.out);
  return 0;
}

// --- bench -----------------------------------------------------------------

struct BenchArgs {
  std::vector<std::uint64_t> targets = {7, 15, 31, 63};
  bool heavy = false;
  bool skip_sim = false;
  std::string format = "csv";
  std::string out;
};

int cmd_bench(const BenchArgs& args) {
  const std::size_t cap = max_qubits_from_env();
  for (std::uint64_t target : args.targets) {
    const auto p = qobf::plan(target);
    if (!args.heavy && !args.skip_sim && p.total_qubits > qobf::kLightQubitLimit) {
      std::cerr << "qobf: target N=" << target << " needs " << p.total_qubits
                << " qubits; pass --heavy to simulate targets above "
                << qobf::kLightQubitLimit << " qubits\n";
      return kExitResource;
    }
    if (!args.skip_sim && p.total_qubits > cap) {
      throw qobf::ResourceError("target N=" + std::to_string(target) + " needs " +
                                std::to_string(p.total_qubits) + " qubits, cap is " +
                                std::to_string(cap) + " (set QOBF_MAX_QUBITS)");
    }
  }

  std::string text;
  if (args.format == "table") {
    char line[160];
    std::snprintf(line, sizeof line, "%6s %4s %10s %7s %8s %8s %11s %9s\n", "N", "n", "iterations",
                  "qubits", "depth", "gates", "run_time_s", "solutions");
    text += line;
  } else {
    text += std::string(qobf::kBenchCsvHeader) + "\n";
  }
  for (std::uint64_t target : args.targets) {
    const qobf::BenchRow row = qobf::bench_row(target, !args.skip_sim, cap);
    if (args.format == "table") {
      char line[160];
      std::snprintf(line, sizeof line, "%6llu %4zu %10llu %7zu %8zu %8zu %11s %9llu\n",
                    static_cast<unsigned long long>(row.N), row.n,
                    static_cast<unsigned long long>(row.iterations), row.qubits, row.depth,
                    row.gate_total,
                    row.run_time_seconds ? fixed(*row.run_time_seconds, 3).c_str() : "-",
                    static_cast<unsigned long long>(row.valid_solutions));
      text += line;
    } else {
      text += qobf::to_csv(row) + "\n";
    }
    // Stream rows as they finish when writing to the terminal.
    if (args.out.empty()) {
      std::cout << text << std::flush;
      text.clear();
    }
  }
  if (!args.out.empty()) emit(text, args.out);
  return 0;
}

// --- count -----------------------------------------------------------------

std::uint64_t brute_force_count(std::uint64_t target, std::size_t n) {
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < limit; ++x) {
    for (std::uint64_t y = 0; y < limit; ++y) {
      if (x + y > target) break;
      const std::uint64_t z = target - x - y;
      if (z < limit) ++count;
    }
  }
  return count;
}

int cmd_count(std::uint64_t n_value, std::size_t bits, bool verify) {
  const std::uint64_t m = qobf::count_solutions(n_value, bits);
  if (!verify) {
    std::cout << m << "\n";
    return 0;
  }
  const std::uint64_t brute = brute_force_count(n_value, bits);
  std::cout << "formula " << m << "\n"
            << "brute_force " << brute << "\n"
            << (m == brute ? "match" : "mismatch") << "\n";
  return m == brute ? 0 : 1;
}

// --- inspect / export ------------------------------------------------------

int cmd_inspect(std::uint64_t n_value, std::optional<std::size_t> bits, const std::string& format) {
  const auto p = qobf::plan(n_value, bits);
  const qobf::Circuit circuit = qobf::build_full_circuit(p);
  const qobf::CircuitMetrics m = qobf::measure(circuit);

  if (format == "json") {
    nlohmann::json j;
    j["plan"] = qobf::make_grover_plan(p.N, p.n);
    j["width"] = circuit.width();
    nlohmann::json counts;
    for (qobf::GateKind k : qobf::kAllGateKinds) counts[std::string(qobf::mnemonic(k))] = m.counts[k];
    counts["total"] = m.counts.total;
    j["gate_counts"] = counts;
    j["depth"] = m.depth;
    j["decomposed"] = {{"width", m.decomposed_width},
                       {"depth", m.decomposed_depth},
                       {"ccx", m.decomposed_counts[qobf::GateKind::CCX]},
                       {"total", m.decomposed_counts.total}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  std::cout << "N=" << p.N << " n=" << p.n << "\n"
            << "width " << circuit.width() << "\n"
            << "T " << p.T << "\n"
            << "M " << p.M << "\n"
            << "R " << p.R << "\n"
            << "theoretical_success " << fixed(p.theoretical_success, 6) << "\n"
            << "gates";
  for (qobf::GateKind k : qobf::kAllGateKinds) std::cout << ' ' << qobf::mnemonic(k) << '=' << m.counts[k];
  std::cout << " total=" << m.counts.total << "\n"
            << "depth " << m.depth << "\n"
            << "decomposed width " << m.decomposed_width << " depth " << m.decomposed_depth
            << " gates " << m.decomposed_counts.total << "\n";

  // Per half adder, measured against the textbook Cuccaro counts.
  const qobf::SumLayout layout = qobf::SumLayout::standard(p.n);
  qobf::AdderLayout first{layout.x_qubits, layout.y_qubits, layout.shared_ancilla, layout.cout0};
  const auto adder = qobf::gate_counts(qobf::build_half_adder(p.n, first));
  std::cout << "half adder (n=" << p.n << ") ccx=" << adder[qobf::GateKind::CCX]
            << " cx=" << adder[qobf::GateKind::CX] << " (reference 2n-1=" << 2 * p.n - 1
            << " toffoli, 5n-3=" << 5 * p.n - 3 << " cnot)\n";
  return 0;
}

int cmd_export(std::uint64_t n_value, std::optional<std::size_t> bits, const std::string& out,
               bool decompose) {
  const auto p = qobf::plan(n_value, bits);
  qobf::Circuit circuit = qobf::build_full_circuit(p);
  if (decompose) circuit = qobf::decompose_mcx(circuit, qobf::AncillaPolicy::allocate());
  emit(qobf::serialize(circuit), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Encode N as x+y+z=N over quantum registers and recover the triplets with Grover search"};
  app.require_subcommand(1);

  ObfuscateArgs ob;
  auto* obfuscate = app.add_subcommand("obfuscate", "Plan, simulate and sample the obfuscation circuit");
  obfuscate->add_option("--n-value", ob.n_value, "Target natural number N")->required();
  obfuscate->add_option("--bits", ob.bits, "Bits per register (default: smallest that fits)");
  obfuscate->add_option("--shots", ob.shots, "Measurement shots")->check(CLI::PositiveNumber);
  obfuscate->add_option("--seed", ob.seed, "Sampling seed");
  obfuscate->add_option("--format", ob.format)->check(CLI::IsMember({"text", "json", "csv"}));
  obfuscate->add_option("--out", ob.out, "Write to file instead of stdout");
  obfuscate->add_option("--top", ob.top, "Rows shown in the text histogram");

  BenchArgs bn;
  auto* bench = app.add_subcommand("bench", "Reproduce the benchmark table for a list of targets");
  bench->add_option("--targets", bn.targets, "Comma-separated target values")->delimiter(',');
  bench->add_flag("--heavy", bn.heavy, "Allow targets above 20 qubits (N=127 needs 23, N=255 needs 26)");
  bench->add_flag("--skip-sim", bn.skip_sim, "Report planning and circuit metrics only");
  bench->add_option("--format", bn.format)->check(CLI::IsMember({"csv", "table"}));
  bench->add_option("--out", bn.out);

  std::uint64_t count_n = 0;
  std::size_t count_bits = 0;
  bool verify = false;
  auto* count = app.add_subcommand("count", "Count triplets with x+y+z=N");
  count->add_option("--n-value", count_n)->required();
  count->add_option("--bits", count_bits)->required();
  count->add_flag("--verify", verify, "Cross-check against brute-force enumeration");

  std::uint64_t insp_n = 0;
  std::optional<std::size_t> insp_bits;
  std::string insp_format = "text";
  auto* inspect = app.add_subcommand("inspect", "Print circuit metrics and the Grover plan");
  inspect->add_option("--n-value", insp_n)->required();
  inspect->add_option("--bits", insp_bits);
  inspect->add_option("--format", insp_format)->check(CLI::IsMember({"text", "json"}));

  std::uint64_t exp_n = 0;
  std::optional<std::size_t> exp_bits;
  std::string exp_out;
  bool exp_decompose = false;
  auto* exporter = app.add_subcommand("export", "Write the full circuit in the text format");
  exporter->add_option("--n-value", exp_n)->required();
  exporter->add_option("--bits", exp_bits);
  exporter->add_option("--out", exp_out);
  exporter->add_flag("--decompose", exp_decompose, "Rewrite multi-controlled NOTs into Toffolis");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*obfuscate) return cmd_obfuscate(ob);
    if (*bench) return cmd_bench(bn);
    if (*count) return cmd_count(count_n, count_bits, verify);
    if (*inspect) return cmd_inspect(insp_n, insp_bits, insp_format);
    if (*exporter) return cmd_export(exp_n, exp_bits, exp_out, exp_decompose);
  } catch (const qobf::ResourceError& e) {
    std::cerr << "qobf: " << e.what() << "\n";
    return kExitResource;
  } catch (const qobf::ConstraintError& e) {
    std::cerr << "qobf: " << e.what() << "\n";
    return kExitConstraint;
  } catch (const qobf::ConstructionError& e) {
    std::cerr << "qobf: " << e.what() << "\n";
    return kExitConstraint;
  } catch (const IoError& e) {
    std::cerr << "qobf: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
