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


#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "qcl/errors.hpp"
#include "qcl/sweep.hpp"

namespace qcl {
namespace {

TEST(FormatNumber, TwelveDecimalsTrimmed) {
  EXPECT_EQ(format_number(kLog2Of3), "1.584962500721");
  EXPECT_EQ(format_number(2.0 * kLog2Of3), "3.169925001442");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(-4e-16), "0");
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(-0.25), "-0.25");
}

TEST(FormatNumber, ParseRoundTripToPrintedDigits) {
  for (double v : {kLog2Of3, 0.1, 1.0 / 3.0, 0.792481250360578, 1e-13}) {
    const std::string s = format_number(v);
    EXPECT_EQ(format_number(parse_number(s)), s);
  }
  EXPECT_THROW(parse_number("1.2.3"), DomainError);
  EXPECT_THROW(parse_number(""), DomainError);
}

TEST(Quantities, ParsedInCanonicalOrder) {
  const auto qs = parse_quantities("q_flag,chi_star,q_flag");
  ASSERT_EQ(qs.size(), 2u);
  EXPECT_EQ(qs[0], Quantity::ChiStar);
  EXPECT_EQ(qs[1], Quantity::QFlag);
  EXPECT_THROW(parse_quantities("chi_star,nope"), DomainError);
  EXPECT_THROW(parse_quantities(""), DomainError);
}

TEST(SweepConfig, Validation) {
  SweepConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.x_max = 1.5;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = SweepConfig{};
  cfg.x_min = 0.8;
  cfg.x_max = 0.2;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = SweepConfig{};
  cfg.steps = 0;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = SweepConfig{};
  cfg.quantities.clear();
  EXPECT_THROW(cfg.validate(), DomainError);
}

TEST(SweepGrid, DefaultHasOneHundredOnePoints) {
  const auto xs = sweep_grid(SweepConfig{});
  ASSERT_EQ(xs.size(), 101u);
  EXPECT_EQ(xs.front(), 0.0);
  EXPECT_EQ(xs.back(), 1.0);
  EXPECT_EQ(format_number(xs[38]), "0.38");
}

TEST(SweepGrid, SinglePoint) {
  SweepConfig cfg;
  cfg.x_min = cfg.x_max = 0.3;
  cfg.steps = 1;
  EXPECT_EQ(sweep_grid(cfg), std::vector<double>{0.3});
}

TEST(EvaluatePoint, ClosedFormsAtZero) {
  const CapacityPoint pt = evaluate_point(0.0, {Quantity::ChiStar, Quantity::CEa});
  EXPECT_EQ(format_number(*pt[Quantity::ChiStar]), "1.584962500721");
  EXPECT_EQ(format_number(*pt[Quantity::CEa]), "3.169925001442");
  EXPECT_FALSE(pt[Quantity::Q1Lower].has_value());
}

TEST(EvaluatePoint, BoundsCoincideAtIdentity) {
  const CapacityPoint pt = evaluate_point(0.0, {kAllQuantities.begin(), kAllQuantities.end()});
  EXPECT_NEAR(*pt[Quantity::Q1Lower], kLog2Of3, 1e-6);
  EXPECT_NEAR(*pt[Quantity::QSdp], kLog2Of3, 1e-4);
  EXPECT_NEAR(*pt[Quantity::QFlag], kLog2Of3, 1e-12);
}

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.steps = 11;
  cfg.starts = 10;
  return cfg;
}

TEST(Sweep, CsvHeaderAndRowCount) {
  SweepConfig cfg = small_config();
  cfg.quantities = {Quantity::ChiStar, Quantity::QFlag};
  std::ostringstream os;
  write_csv(os, run_sweep(cfg), cfg.quantities);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "x,chi_star,q_flag");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 11);
}

TEST(Sweep, SandwichHoldsOnEveryRow) {
  const auto rows = run_sweep(small_config());
  for (const auto& r : rows) {
    const double upper = std::min(*r[Quantity::QSdp], *r[Quantity::QFlag]);
    EXPECT_LE(*r[Quantity::Q1Lower], upper + 1e-5) << r.x;
    EXPECT_LE(*r[Quantity::ChiStar], *r[Quantity::CEa]) << r.x;
  }
}

TEST(Sweep, CsvRoundTripReproducesPrintedDigits) {
  const SweepConfig cfg = small_config();
  const auto rows = run_sweep(cfg);
  std::ostringstream os;
  write_csv(os, rows, cfg.quantities);
  std::istringstream is(os.str());
  const CsvTable table = read_csv(is);
  ASSERT_EQ(table.rows.size(), rows.size());
  EXPECT_EQ(table.quantities, cfg.quantities);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(format_number(table.rows[i].x), format_number(rows[i].x));
    for (Quantity q : cfg.quantities)
      EXPECT_EQ(format_number(*table.rows[i][q]), format_number(*rows[i][q]));
  }
  std::ostringstream again;
  write_csv(again, table.rows, table.quantities);
  EXPECT_EQ(again.str(), os.str());
}

TEST(Sweep, ByteIdenticalUnderFixedSeed) {
  const SweepConfig cfg = small_config();
  std::ostringstream a, b;
  write_csv(a, run_sweep(cfg), cfg.quantities);
  write_csv(b, run_sweep(cfg), cfg.quantities);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Sweep, JsonMirrorsCsvRecords) {
  SweepConfig cfg = small_config();
  cfg.steps = 3;
  cfg.quantities = {Quantity::CEa, Quantity::QFlag};
  const auto rows = run_sweep(cfg);
  std::ostringstream os;
  write_json(os, rows, cfg.quantities);
  EXPECT_EQ(os.str(),
            "[\n"
            "  {\"x\": 0, \"c_ea\": 3.169925001442, \"q_flag\": 1.584962500721},\n"
            "  {\"x\": 0.5, \"c_ea\": " + format_number(*rows[1][Quantity::CEa]) +
            ", \"q_flag\": 0.792481250361},\n"
            "  {\"x\": 1, \"c_ea\": 1.584962500721, \"q_flag\": 0}\n"
            "]\n");
}

TEST(ReadCsv, RejectsMalformedInput) {
  std::istringstream empty("");
  EXPECT_THROW(read_csv(empty), DomainError);
  std::istringstream bad_header("y,chi_star\n0,1\n");
  EXPECT_THROW(read_csv(bad_header), DomainError);
  std::istringstream ragged("x,chi_star\n0\n");
  EXPECT_THROW(read_csv(ragged), DomainError);
}

}  // namespace
}  // namespace qcl
