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

// Upper bounds on the quantum capacity of Λ_x.
//
// Q_Γ: log2 of max Tr(J R) over density matrices ρ_A and R ⪰ 0 subject to
// −ρ_A ⊗ I ⪯ R^{T_B} ⪯ ρ_A ⊗ I. The R ⪰ 0 constraint is kept as stated in
// the source of this bound; dropping it would enlarge the feasible set.
//
// Flagged extension: Λ_x = (1 − x)Λ_0 + xΛ_1 with both endpoints degradable,
// Λ_1 anti-degradable, gives Q ≤ (1 − x) log2 3.

#include <cmath>
#include <cstddef>
#include <iostream>
#include <vector>

#include "qcl/channels.hpp"
#include "qcl/errors.hpp"
#include "qcl/linalg.hpp"
#include "qcl/ls_family.hpp"
#include "qcl/sdp.hpp"

namespace qcl {

inline constexpr double kQGammaInitialEpsilon = 1e-3;

/// Variable layout of the Q_Γ program: first the coordinates of R in
/// hermitian_basis(d_A·d_B), then those of ρ_A in hermitian_basis(d_A).
struct QGammaLayout {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::size_t r_vars() const { return dim_a * dim_b * dim_a * dim_b; }
  std::size_t rho_vars() const { return dim_a * dim_a; }
};

inline SdpProblem build_qgamma(const ChoiMatrix& choi) {
  const std::size_t da = choi.dim_in, db = choi.dim_out;
  if (choi.matrix.rows() != da * db || choi.matrix.cols() != da * db) {
    throw DimensionMismatch("Choi matrix " + choi.matrix.shape() + " for dims " +
                            std::to_string(da) + "," + std::to_string(db));
  }
  if (hermiticity_defect(choi.matrix) > 1e-10) throw NotHermitian("Choi matrix");
  const QGammaLayout layout{da, db};
  const auto r_basis = hermitian_basis(da * db);
  const auto rho_basis = hermitian_basis(da);
  const std::size_t nr = layout.r_vars(), nrho = layout.rho_vars();
  const std::size_t n = nr + nrho;
  const ComplexMatrix id_b = ComplexMatrix::identity(db);

  SdpProblem prob;
  prob.num_variables = n;
  prob.objective.assign(n, 0.0);
  for (std::size_t a = 0; a < nr; ++a) prob.objective[a] = inner(choi.matrix, r_basis[a]).real();

  EqualityConstraint unit_trace;
  unit_trace.coefficients.assign(n, 0.0);
  for (std::size_t b = 0; b < nrho; ++b) unit_trace.coefficients[nr + b] = rho_basis[b].trace().real();
  unit_trace.rhs = 1.0;
  prob.equalities.push_back(std::move(unit_trace));

  const std::size_t big = 2 * da * db, small = 2 * da;
  PsdBlock r_block{"R", RealMatrix(big, big), {}};
  PsdBlock rho_block{"rho", RealMatrix(small, small), {}};
  PsdBlock upper{"rho(x)I-R^TB", RealMatrix(big, big), {}};
  PsdBlock lower{"rho(x)I+R^TB", RealMatrix(big, big), {}};
  for (std::size_t a = 0; a < nr; ++a) {
    const RealMatrix pt = realify(partial_transpose(r_basis[a], da, db));
    r_block.coefficients.push_back(realify(r_basis[a]));
    rho_block.coefficients.emplace_back(small, small);
    upper.coefficients.push_back(pt * -1.0);
    lower.coefficients.push_back(pt);
  }
  for (std::size_t b = 0; b < nrho; ++b) {
    const RealMatrix lifted = realify(kron(rho_basis[b], id_b));
    r_block.coefficients.emplace_back(big, big);
    rho_block.coefficients.push_back(realify(rho_basis[b]));
    upper.coefficients.push_back(lifted);
    lower.coefficients.push_back(lifted);
  }
  prob.blocks = {std::move(r_block), std::move(rho_block), std::move(upper), std::move(lower)};

  // ρ_A = I/d_A, R = εI: strictly inside every cone.
  prob.initial_point.assign(n, 0.0);
  for (std::size_t k = 0; k < da * db; ++k) prob.initial_point[k] = kQGammaInitialEpsilon;
  for (std::size_t k = 0; k < da; ++k) prob.initial_point[nr + k] = 1.0 / static_cast<double>(da);
  return prob;
}

struct QGammaPoint {
  ComplexMatrix rho_a;
  ComplexMatrix r;
};

/// Rebuilds (ρ_A, R) from a variable vector laid out by build_qgamma.
inline QGammaPoint decode_qgamma(const std::vector<double>& y, std::size_t dim_a,
                                 std::size_t dim_b) {
  const QGammaLayout layout{dim_a, dim_b};
  if (y.size() != layout.r_vars() + layout.rho_vars()) throw DimensionMismatch("Q_Gamma variables");
  const auto r_basis = hermitian_basis(dim_a * dim_b);
  const auto rho_basis = hermitian_basis(dim_a);
  QGammaPoint pt{ComplexMatrix(dim_a, dim_a), ComplexMatrix(dim_a * dim_b, dim_a * dim_b)};
  for (std::size_t a = 0; a < r_basis.size(); ++a) pt.r += r_basis[a] * Complex(y[a]);
  for (std::size_t b = 0; b < rho_basis.size(); ++b)
    pt.rho_a += rho_basis[b] * Complex(y[layout.r_vars() + b]);
  return pt;
}

/// Inverse of decode_qgamma.
inline std::vector<double> encode_qgamma(const QGammaPoint& pt, std::size_t dim_a,
                                         std::size_t dim_b) {
  const auto r_basis = hermitian_basis(dim_a * dim_b);
  const auto rho_basis = hermitian_basis(dim_a);
  std::vector<double> y;
  auto coords = [&](const std::vector<ComplexMatrix>& basis, const ComplexMatrix& m) {
    for (const auto& h : basis) y.push_back(inner(h, m).real() / inner(h, h).real());
  };
  coords(r_basis, pt.r);
  coords(rho_basis, pt.rho_a);
  return y;
}

struct QGammaResult {
  double bits = 0.0;
  double pre_log = 0.0;
  bool floored = false;  // pre_log < 1 was reported as 0 bits
  SdpSolution solution;
  QGammaPoint point;
};

inline QGammaResult q_gamma_detailed(LSParam p, const SdpSolverOptions& opts = {}) {
  const ChoiMatrix j = choi(kraus_for(p));
  const SdpProblem prob = build_qgamma(j);
  QGammaResult res;
  res.solution = solve(prob, opts);
  if (!res.solution.certified) {
    throw NumericalBreakdown("Q_Gamma SDP not certified at x=" + std::to_string(p.x()) +
                             " (gap " + std::to_string(res.solution.duality_gap) + ")");
  }
  res.pre_log = res.solution.optimal_value;
  res.point = decode_qgamma(res.solution.variables, j.dim_in, j.dim_out);
  if (res.pre_log < 1.0) {
    std::cerr << "warning: Q_Gamma optimum " << res.pre_log << " < 1 at x=" << p.x()
              << ", reporting 0 bits\n";
    res.floored = true;
    res.bits = 0.0;
  } else {
    res.bits = std::log2(res.pre_log);
  }
  return res;
}

inline double q_gamma(LSParam p) { return q_gamma_detailed(p).bits; }

inline double q_flag(LSParam p) { return (1.0 - p.x()) * kLog2Of3; }

/// x where the SDP bound overtakes the flagged-extension bound, bisected on
/// (0.5, 1.0) to 1e-3.
inline double bound_crossing(double tol = 1e-3) {
  auto f = [](double x) { return q_gamma(LSParam(x)) - q_flag(LSParam(x)); };
  double lo = 0.5, hi = 1.0;
  const double flo = f(lo), fhi = f(hi);
  if (!(flo < 0.0 && fhi > 0.0)) {
    throw NoSignChange("q_gamma - q_flag: " + std::to_string(flo) + " at 0.5, " +
                       std::to_string(fhi) + " at 1.0");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace qcl
