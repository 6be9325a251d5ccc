// Copyright 2026 The QCL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// qcl: capacity point evaluation, grid sweeps, verification and protocol
// reports for the Landau-Streater family Λ_x.
//
// Exit codes: 0 success, 1 verification or numerical failure, 2 usage error,
// 3 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qcl/capacities.hpp"
#include "qcl/protocols.hpp"
#include "qcl/sweep.hpp"
#include "qcl/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<qcl::Quantity> quantities_from(const std::string& list) {
  try {
    return qcl::parse_quantities(list);
  } catch (const qcl::DomainError& e) {
    throw UsageError(e.what());
  }
}

int cmd_point(double x, const std::string& list, int starts, std::uint64_t seed) {
  if (!(x >= 0.0 && x <= 1.0)) throw UsageError("x out of range");
  if (starts < 1) throw UsageError("starts must be at least 1");
  const auto qs = quantities_from(list);
  const qcl::CapacityPoint pt = qcl::evaluate_point(x, qs, starts, seed);
  std::cout << "x=" << qcl::format_number(pt.x) << '\n';
  for (qcl::Quantity q : qs)
    std::cout << qcl::quantity_name(q) << '=' << qcl::format_number(*pt[q]) << '\n';
  return kExitOk;
}

int cmd_sweep(qcl::SweepConfig cfg, const std::string& list, const std::string& format) {
  cfg.quantities = quantities_from(list);
  if (format == "csv") {
    cfg.format = qcl::OutputFormat::Csv;
  } else if (format == "json") {
    cfg.format = qcl::OutputFormat::Json;
  } else {
    throw UsageError("unknown format '" + format + "' (expected csv or json)");
  }
  try {
    cfg.validate();
  } catch (const qcl::DomainError& e) {
    throw UsageError(e.what());
  }

  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + cfg.out + "' for writing");
  }
  const auto rows = qcl::run_sweep(cfg);
  std::ostringstream text;
  if (cfg.format == qcl::OutputFormat::Csv) {
    qcl::write_csv(text, rows, cfg.quantities);
  } else {
    qcl::write_json(text, rows, cfg.quantities);
  }
  std::ostream& os = cfg.out.empty() ? std::cout : file;
  os << text.str();
  os.flush();
  if (!os) throw IoError("write to '" + (cfg.out.empty() ? "stdout" : cfg.out) + "' failed");
  return kExitOk;
}

int cmd_verify(const std::string& level, const std::string& fault) {
  qcl::VerifyLevel lv;
  if (level == "quick") {
    lv = qcl::VerifyLevel::Quick;
  } else if (level == "full") {
    lv = qcl::VerifyLevel::Full;
  } else {
    throw UsageError("unknown level '" + level + "' (expected quick or full)");
  }
  qcl::Fault f = qcl::Fault::None;
  if (fault == "corrupt-kraus") {
    f = qcl::Fault::CorruptKraus;
  } else if (!fault.empty()) {
    throw UsageError("unknown fault '" + fault + "'");
  }
  return qcl::run_verify(lv, std::cout, f) ? kExitOk : kExitFailure;
}

int cmd_protocol(const std::string& name) {
  qcl::ProtocolResult r;
  if (name == "phase") {
    r = qcl::phase_protocol();
  } else if (name == "bell") {
    r = qcl::bell_protocol();
  } else {
    throw UsageError("unknown protocol '" + name + "' (expected phase or bell)");
  }
  const auto& joint = r.joint_distribution;
  std::cout << "protocol " << r.protocol_name << ": joint distribution P(message, outcome)\n";
  for (std::size_t i = 0; i < joint.rows(); ++i) {
    for (std::size_t j = 0; j < joint.cols(); ++j)
      std::cout << (j ? " " : "") << qcl::format_number(joint(i, j));
    std::cout << '\n';
  }
  const double cea1 = qcl::c_ea(qcl::LSParam(1.0));
  std::cout << "mutual_information=" << qcl::format_number(r.mutual_information) << " bits\n";
  std::cout << "c_ea(1)=" << qcl::format_number(cea1) << " bits\n";
  std::cout << "gap=" << qcl::format_number(cea1 - r.mutual_information) << " bits\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity toolbox for the Landau-Streater channel family"};
  app.require_subcommand(1);

  double x = 0.0;
  std::string quantities = "chi_star,c_ea,q1_lower,q_sdp,q_flag";
  int starts = qcl::kDefaultStarts;
  std::uint64_t seed = qcl::kDefaultSeed;

  auto* point = app.add_subcommand("point", "Evaluate the requested quantities at one x");
  point->add_option("--x", x, "Channel parameter in [0, 1]")->required();
  point->add_option("--quantities", quantities, "Comma-separated quantities");
  point->add_option("--starts", starts, "Optimizer starts for q1_lower");
  point->add_option("--seed", seed, "Random seed");

  qcl::SweepConfig cfg;
  std::string format = "csv";
  auto* sweep = app.add_subcommand("sweep", "Evaluate quantities on an x grid");
  sweep->add_option("--x-min", cfg.x_min, "Grid start");
  sweep->add_option("--x-max", cfg.x_max, "Grid end");
  sweep->add_option("--steps", cfg.steps, "Number of grid points");
  sweep->add_option("--quantities", quantities, "Comma-separated quantities");
  sweep->add_option("--seed", cfg.seed, "Random seed");
  sweep->add_option("--starts", cfg.starts, "Optimizer starts for q1_lower");
  sweep->add_option("--out", cfg.out, "Output path (default stdout)");
  sweep->add_option("--format", format, "csv or json");

  std::string level = "quick";
  std::string fault;
  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  verify->add_option("--level", level, "quick or full");
  verify->add_option("--inject-fault", fault)->group("");

  std::string protocol_name;
  auto* protocol = app.add_subcommand("protocol", "Report a dense-coding protocol through Lambda_1");
  protocol->add_option("name", protocol_name, "phase or bell")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*point) return cmd_point(x, quantities, starts, seed);
    if (*sweep) return cmd_sweep(cfg, quantities, format);
    if (*verify) return cmd_verify(level, fault);
    if (*protocol) return cmd_protocol(protocol_name);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
