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

#pragma once

// Grid evaluation of the capacity quantities and their CSV / JSON encodings.

#include <array>
#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qcl/capacities.hpp"
#include "qcl/errors.hpp"
#include "qcl/ls_family.hpp"
#include "qcl/optimize.hpp"
#include "qcl/sdpbound.hpp"

namespace qcl {

enum class Quantity { ChiStar, CEa, Q1Lower, QSdp, QFlag };

inline constexpr std::array<Quantity, 5> kAllQuantities = {
    Quantity::ChiStar, Quantity::CEa, Quantity::Q1Lower, Quantity::QSdp, Quantity::QFlag};

inline std::string_view quantity_name(Quantity q) {
  switch (q) {
    case Quantity::ChiStar: return "chi_star";
    case Quantity::CEa: return "c_ea";
    case Quantity::Q1Lower: return "q1_lower";
    case Quantity::QSdp: return "q_sdp";
    case Quantity::QFlag: return "q_flag";
  }
  return "";
}

inline std::optional<Quantity> parse_quantity(std::string_view name) {
  for (Quantity q : kAllQuantities)
    if (quantity_name(q) == name) return q;
  return std::nullopt;
}

/// Parses a comma-separated list; result is in canonical column order with
/// duplicates removed.
inline std::vector<Quantity> parse_quantities(std::string_view list) {
  std::array<bool, kAllQuantities.size()> wanted{};
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t end = std::min(list.find(',', pos), list.size());
    const std::string_view item = list.substr(pos, end - pos);
    const auto q = parse_quantity(item);
    if (!q) throw DomainError("unknown quantity '" + std::string(item) + "'");
    wanted[static_cast<std::size_t>(*q)] = true;
    pos = end + 1;
  }
  std::vector<Quantity> out;
  for (Quantity q : kAllQuantities)
    if (wanted[static_cast<std::size_t>(q)]) out.push_back(q);
  return out;
}

enum class OutputFormat { Csv, Json };

struct SweepConfig {
  double x_min = 0.0;
  double x_max = 1.0;
  int steps = 101;
  std::vector<Quantity> quantities{kAllQuantities.begin(), kAllQuantities.end()};
  std::uint64_t seed = kDefaultSeed;
  int starts = kDefaultStarts;
  std::string out;
  OutputFormat format = OutputFormat::Csv;

  void validate() const {
    if (!(x_min >= 0.0 && x_min <= 1.0) || !(x_max >= 0.0 && x_max <= 1.0))
      throw DomainError("x out of range");
    if (x_min > x_max) throw DomainError("x-min exceeds x-max");
    if (steps < 1) throw DomainError("steps must be at least 1");
    if (quantities.empty()) throw DomainError("no quantities requested");
    if (starts < 1) throw DomainError("starts must be at least 1");
  }
};

struct CapacityPoint {
  double x = 0.0;
  std::array<std::optional<double>, kAllQuantities.size()> values{};

  std::optional<double>& operator[](Quantity q) { return values[static_cast<std::size_t>(q)]; }
  const std::optional<double>& operator[](Quantity q) const {
    return values[static_cast<std::size_t>(q)];
  }
};

/// Evenly spaced grid with both endpoints hit exactly.
inline std::vector<double> sweep_grid(const SweepConfig& cfg) {
  std::vector<double> xs(static_cast<std::size_t>(cfg.steps));
  for (int k = 0; k < cfg.steps; ++k) {
    xs[k] = cfg.steps == 1 ? cfg.x_min
                           : cfg.x_min + (cfg.x_max - cfg.x_min) * k / (cfg.steps - 1);
  }
  if (cfg.steps > 1) xs.back() = cfg.x_max;
  return xs;
}

inline CapacityPoint evaluate_point(double x, const std::vector<Quantity>& quantities,
                                    int starts = kDefaultStarts,
                                    std::uint64_t seed = kDefaultSeed) {
  const LSParam p(x);
  CapacityPoint pt;
  pt.x = x;
  for (Quantity q : quantities) {
    switch (q) {
      case Quantity::ChiStar: pt[q] = chi_star(p); break;
      case Quantity::CEa: pt[q] = c_ea(p); break;
      case Quantity::Q1Lower: pt[q] = q1_lower(p, starts, seed).best_value; break;
      case Quantity::QSdp: pt[q] = q_gamma(p); break;
      case Quantity::QFlag: pt[q] = q_flag(p); break;
    }
  }
  return pt;
}

/// Grid point k uses seed derive_seed(cfg.seed, k); rows come back in x order.
inline std::vector<CapacityPoint> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const std::vector<double> xs = sweep_grid(cfg);
  std::vector<CapacityPoint> rows(xs.size());
  parallel_for(xs.size(), [&](std::size_t k) {
    rows[k] = evaluate_point(xs[k], cfg.quantities, cfg.starts, derive_seed(cfg.seed, k));
  });
  return rows;
}

/// Fixed-point with 12 decimals, trailing zeros and a bare sign on zero
/// removed. Locale independent.
inline std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::fixed, 12);
  std::string s(buf.data(), res.ptr);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

inline double parse_number(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw DomainError("bad number '" + std::string(s) + "'");
  return v;
}

inline void write_csv(std::ostream& os, const std::vector<CapacityPoint>& rows,
                      const std::vector<Quantity>& quantities) {
  os << "x";
  for (Quantity q : quantities) os << ',' << quantity_name(q);
  os << '\n';
  for (const auto& r : rows) {
    os << format_number(r.x);
    for (Quantity q : quantities) os << ',' << (r[q] ? format_number(*r[q]) : std::string());
    os << '\n';
  }
}

inline void write_json(std::ostream& os, const std::vector<CapacityPoint>& rows,
                       const std::vector<Quantity>& quantities) {
  os << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << "  {\"x\": " << format_number(rows[i].x);
    for (Quantity q : quantities) {
      os << ", \"" << quantity_name(q) << "\": ";
      os << (rows[i][q] ? format_number(*rows[i][q]) : std::string("null"));
    }
    os << '}' << (i + 1 < rows.size() ? "," : "") << '\n';
  }
  os << "]\n";
}

struct CsvTable {
  std::vector<Quantity> quantities;
  std::vector<CapacityPoint> rows;
};

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = line.find(',', pos);
    out.push_back(line.substr(pos, end == std::string_view::npos ? end : end - pos));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

inline CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) throw DomainError("empty CSV");
  const auto header = split_commas(line);
  if (header.empty() || header[0] != "x") throw DomainError("CSV header must start with x");
  for (std::size_t i = 1; i < header.size(); ++i) {
    const auto q = parse_quantity(header[i]);
    if (!q) throw DomainError("unknown CSV column '" + std::string(header[i]) + "'");
    table.quantities.push_back(*q);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != header.size()) throw DomainError("ragged CSV row: " + line);
    CapacityPoint pt;
    pt.x = parse_number(cells[0]);
    for (std::size_t i = 1; i < cells.size(); ++i)
      if (!cells[i].empty()) pt[table.quantities[i - 1]] = parse_number(cells[i]);
    table.rows.push_back(pt);
  }
  return table;
}

}  // namespace qcl
