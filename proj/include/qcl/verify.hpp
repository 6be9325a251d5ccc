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

// Invariant suites behind `qcl verify`. Each suite stops at its first failing
// assertion and reports it by name.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qcl/capacities.hpp"
#include "qcl/channels.hpp"
#include "qcl/errors.hpp"
#include "qcl/linalg.hpp"
#include "qcl/ls_family.hpp"
#include "qcl/protocols.hpp"
#include "qcl/sdpbound.hpp"

namespace qcl {

enum class VerifyLevel { Quick, Full };

/// Test-only faults used to exercise the failure path.
enum class Fault { None, CorruptKraus };

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::string failure;  // first failing assertion
  double seconds = 0.0;
};

namespace detail {

struct AssertionFailed {
  std::string what;
};

inline void expect(bool ok, const std::string& what) {
  if (!ok) throw AssertionFailed{what};
}

inline std::string describe(const std::string& label, double value, double lo, double hi,
                            bool open = false) {
  std::ostringstream os;
  os.precision(12);
  os << label << " = " << value << " not in " << (open ? '(' : '[') << lo << ", " << hi
     << (open ? ')' : ']');
  return os.str();
}

inline void expect_near(double value, double target, double tol, const std::string& label) {
  expect(std::abs(value - target) <= tol, describe(label, value, target - tol, target + tol));
}

inline void expect_in(double value, double lo, double hi, const std::string& label) {
  expect(value > lo && value < hi, describe(label, value, lo, hi, true));
}

inline std::string at_x(const std::string& what, double x) {
  std::ostringstream os;
  os << what << " at x=" << x;
  return os.str();
}

inline std::vector<double> grid(int points) {
  std::vector<double> xs;
  for (int k = 0; k < points; ++k) xs.push_back(static_cast<double>(k) / (points - 1));
  return xs;
}

inline KrausChannel channel_under_test(LSParam p, Fault fault) {
  if (fault != Fault::CorruptKraus) return kraus_for(p);
  std::vector<ComplexMatrix> ks = kraus_for(p).kraus();
  ks[0] *= Complex(1.01);
  return KrausChannel(3, 3, std::move(ks), "corrupted fixture");
}

}  // namespace detail

inline void suite_cpt(Fault fault) {
  for (double x : detail::grid(11)) {
    const KrausChannel ch = detail::channel_under_test(LSParam(x), fault);
    detail::expect(ch.trace_preservation_defect() <= 1e-12, detail::at_x("CPT invariant", x));
    const ChoiMatrix j = choi(ch);
    const auto ev = hermitian_eigenvalues(j.matrix);
    detail::expect(ev.front() >= -1e-12, detail::at_x("Choi matrix positivity", x));
  }
}

inline void suite_closed_forms() {
  using detail::expect_near;
  expect_near(chi_star(LSParam(0.0)), kLog2Of3, 1e-12, "chi_star(0)");
  expect_near(chi_star(LSParam(1.0)), kLog2Of3 - 1.0, 1e-12, "chi_star(1)");
  expect_near(c_ea(LSParam(0.0)), 2.0 * kLog2Of3, 1e-12, "c_ea(0)");
  expect_near(c_ea(LSParam(1.0)), kLog2Of3, 1e-12, "c_ea(1)");
  for (double x : detail::grid(101))
    expect_near(c_ea_numeric(LSParam(x)), c_ea(LSParam(x)), 1e-9, detail::at_x("c_ea numeric", x));
}

inline void suite_spectrum() {
  for (double x : detail::grid(21)) {
    const SpectrumReport s = spectrum(LSParam(x));
    std::vector<double> expected(1, 1.0);
    expected.insert(expected.end(), 5, s.lam_sym);
    expected.insert(expected.end(), 3, s.lam_antisym);
    std::sort(expected.begin(), expected.end());
    const ComplexMatrix t = transfer_matrix(kraus_for(LSParam(x)));
    const auto ev = hermitian_eigenvalues(t);
    for (std::size_t i = 0; i < ev.size(); ++i)
      detail::expect_near(ev[i], expected[i], 1e-9, detail::at_x("transfer eigenvalue", x));
    detail::expect_near(determinant(t).real(), s.determinant, 1e-9,
                        detail::at_x("transfer determinant", x));
  }
  detail::expect(!spectrum(LSParam(0.66)).markovian_obstruction &&
                     spectrum(LSParam(0.67)).markovian_obstruction,
                 "determinant sign flip at x = 2/3");
}

inline void suite_endpoints() {
  endpoint_checks();
  std::mt19937_64 gen(11);
  for (double x : detail::grid(11)) {
    const KrausChannel comp = complement(kraus_for(LSParam(x)));
    for (int i = 0; i < 100; ++i) {
      const ComplexMatrix m = random_hermitian(3, gen);
      const double d = (apply_channel(comp, m) - complement_closed(LSParam(x), m)).max_abs();
      detail::expect(d <= 1e-12, detail::at_x("complement closed form vs Kraus recipe", x));
    }
  }
}

inline void suite_covariance() {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (double x : detail::grid(11)) {
    const KrausChannel ch = kraus_for(LSParam(x));
    for (int i = 0; i < 50; ++i) {
      const ComplexMatrix o = sample_so3(angle(gen), angle(gen), angle(gen));
      detail::expect(covariance_defect(ch, o, o) <= 1e-10, detail::at_x("SO(3) covariance", x));
    }
  }
  const KrausChannel one = kraus_for(LSParam(1.0));
  for (std::uint64_t s = 0; s < 20; ++s) {
    const ComplexMatrix u = sample_su3(s);
    detail::expect(covariance_defect(one, u, u.conj()) <= 1e-10, "SU(3) covariance of Lambda_1");
  }
  for (double x : detail::grid(11)) {
    const KrausChannel ch = kraus_for(LSParam(x));
    for (int i = 0; i < 10; ++i) {
      const std::array<double, 3> axis{std::cos(i), std::sin(i), 0.3 * i - 1.0};
      const double theta = 0.37 * (i + 1);
      const RealMatrix r = adjoint_rotation(theta, axis);
      ComplexMatrix omega(4, 4);
      omega(0, 0) = 1.0;
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) omega(a + 1, b + 1) = r(b, a);
      const ComplexMatrix u = spin1_rotation(theta, axis);
      detail::expect(omega_defect(ch, u, u, omega) <= 1e-10,
                     detail::at_x("Kraus representation Omega", x));
    }
  }
}

inline void suite_min_output_entropy() {
  for (double x : detail::grid(11)) {
    const LSParam p(x);
    detail::expect_near(min_output_entropy_numeric(p).s_min, kLog2Of3 - chi_star(p), 1e-6,
                        detail::at_x("minimum output entropy", x));
  }
}

inline void suite_coherent_info() {
  const ComplexMatrix mixed = ComplexMatrix::identity(3) * Complex(1.0 / 3.0);
  detail::expect_near(q1_lower(LSParam(0.0)).best_value, kLog2Of3, 1e-6, "q1_lower(0)");
  for (double x : {0.1, 0.2, 0.3})
    detail::expect_near(q1_lower(LSParam(x)).best_value,
                        coherent_info(LSParam(x), DensityMatrix(mixed)), 1e-6,
                        detail::at_x("q1_lower vs I_c(I/3)", x));
  for (double x : {0.5, 0.75, 1.0})
    detail::expect_near(q1_lower(LSParam(x)).best_value, 0.0, 1e-6, detail::at_x("q1_lower", x));
  detail::expect_in(ic_zero_crossing(), 0.37, 0.39, "ic_zero_crossing");
}

inline void suite_sdp() {
  const QGammaResult q0 = q_gamma_detailed(LSParam(0.0));
  detail::expect_near(q0.bits, kLog2Of3, 1e-4, "q_gamma(0)");
  detail::expect(q0.solution.duality_gap <= 1e-6, "q_gamma(0) duality gap");
  for (double x : detail::grid(11))
    detail::expect(q_gamma(LSParam(x)) >= q1_lower(LSParam(x)).best_value - 1e-5,
                   detail::at_x("q_gamma >= q1_lower", x));
  detail::expect_in(bound_crossing(), 0.70, 0.80, "bound_crossing");
}

inline void suite_protocols() {
  const double target = kLog2Of3 - 1.0;
  const ProtocolResult phase = phase_protocol();
  for (std::size_t n = 0; n < 3; ++n)
    for (std::size_t p = 0; p < 3; ++p)
      detail::expect_near(3.0 * phase.joint_distribution(n, p), n == p ? 0.0 : 0.5, 1e-12,
                          "phase protocol P(" + std::to_string(p) + "|" + std::to_string(n) + ")");
  detail::expect_near(phase.mutual_information, target, 1e-9, "phase protocol MI");
  detail::expect_near(bell_protocol().mutual_information, target, 1e-9, "bell protocol MI");
}

struct Suite {
  std::string name;
  std::function<void()> body;
};

inline std::vector<Suite> verify_suites(VerifyLevel level, Fault fault = Fault::None) {
  std::vector<Suite> suites = {
      {"cpt", [fault] { suite_cpt(fault); }},
      {"closed_forms", suite_closed_forms},
      {"spectrum", suite_spectrum},
      {"endpoints", suite_endpoints},
      {"covariance", suite_covariance},
  };
  if (level == VerifyLevel::Full) {
    suites.push_back({"min_output_entropy", suite_min_output_entropy});
    suites.push_back({"coherent_info", suite_coherent_info});
    suites.push_back({"sdp", suite_sdp});
    suites.push_back({"protocols", suite_protocols});
  }
  return suites;
}

inline SuiteResult run_suite(const Suite& suite) {
  SuiteResult r;
  r.name = suite.name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    suite.body();
  } catch (const detail::AssertionFailed& e) {
    r.passed = false;
    r.failure = e.what;
  } catch (const std::exception& e) {
    r.passed = false;
    r.failure = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Runs every suite, printing one line each; returns true iff all pass.
inline bool run_verify(VerifyLevel level, std::ostream& os, Fault fault = Fault::None) {
  bool all = true;
  std::string first;
  for (const auto& suite : verify_suites(level, fault)) {
    const SuiteResult r = run_suite(suite);
    os << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << std::fixed;
    os.precision(2);
    os << r.seconds << " s)" << std::defaultfloat;
    if (!r.passed) os << ": " << r.failure;
    os << '\n' << std::flush;
    if (!r.passed && all) {
      all = false;
      first = r.name + ": " + r.failure;
    }
  }
  os << (all ? "verify: all suites passed\n" : "verify: FAILED, first failure in " + first + "\n");
  return all;
}

}  // namespace qcl
