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

// Small dense semidefinite programs in linear-matrix-inequality form:
//
//   maximize   c·y
//   subject to a_k·y = b_k                      (equalities)
//              F0 + Σ_i y_i F_i ⪰ 0             (one LMI per block)
//
// Equalities are eliminated up front (y = y0 + N z with orthonormal N). The
// reduced LMI is solved by an infeasible primal-dual path-following method
// with Nesterov-Todd scaling and a predictor/centering step, working on the
// conic dual
//
//   minimize ⟨G0, X⟩  subject to  ⟨G_j, X⟩ = −c̃_j,  X ⪰ 0,
//
// whose optimal value equals the LMI optimum under strict feasibility.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "qcl/errors.hpp"
#include "qcl/linalg.hpp"
#include "qcl/matrix.hpp"

namespace qcl {

struct PsdBlock {
  std::string name;
  RealMatrix constant;                   // F0
  std::vector<RealMatrix> coefficients;  // F_i, one per variable
};

struct EqualityConstraint {
  std::vector<double> coefficients;
  double rhs = 0.0;
};

struct SdpProblem {
  std::size_t num_variables = 0;
  std::vector<double> objective;  // maximized
  std::vector<EqualityConstraint> equalities;
  std::vector<PsdBlock> blocks;
  /// Optional strictly feasible starting point; empty means y = y0.
  std::vector<double> initial_point;

  void validate() const {
    if (objective.size() != num_variables) throw DimensionMismatch("objective length");
    for (const auto& e : equalities)
      if (e.coefficients.size() != num_variables) throw DimensionMismatch("equality length");
    for (const auto& b : blocks) {
      b.constant.require_square("PSD block");
      if (b.coefficients.size() != num_variables) {
        throw DimensionMismatch("block " + b.name + " has " +
                                std::to_string(b.coefficients.size()) + " coefficient matrices");
      }
      const auto sym_check = [&](const RealMatrix& m) {
        if (m.rows() != b.constant.rows() || m.cols() != b.constant.cols()) {
          throw DimensionMismatch("block " + b.name + " coefficient shape " + m.shape());
        }
        if (hermiticity_defect(m) > 1e-12) {
          throw NotHermitian("block " + b.name + " has a non-symmetric coefficient");
        }
      };
      sym_check(b.constant);
      for (const auto& f : b.coefficients) sym_check(f);
    }
    if (!initial_point.empty() && initial_point.size() != num_variables) {
      throw DimensionMismatch("initial point length");
    }
  }
};

struct SdpSolverOptions {
  double gap_tol = 1e-6;         // certification threshold on the duality gap
  double infeasibility_tol = 1e-8;
  double target_rel_gap = 1e-11;  // keep iterating past certification until here
  int max_iterations = 150;
};

struct SdpIterate {
  int iteration = 0;
  double primal_objective = 0.0;  // c·y at the LMI iterate
  double dual_objective = 0.0;    // ⟨G0, X⟩ + constant
  double complementarity = 0.0;   // ⟨S, X⟩
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
};

enum class SdpStatus { Optimal, MaxIterations };

struct SdpSolution {
  SdpStatus status = SdpStatus::MaxIterations;
  bool certified = false;
  double optimal_value = 0.0;  // primal objective c·y
  double dual_value = 0.0;
  double duality_gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;  // index of the returned iterate in `trace`
  std::vector<double> variables;      // y
  std::vector<RealMatrix> slacks;     // F0 + Σ y_i F_i per block
  std::vector<RealMatrix> multipliers;  // X per block
  std::vector<SdpIterate> trace;
};

/// F0 + Σ y_i F_i for one block.
inline RealMatrix evaluate_block(const PsdBlock& b, const std::vector<double>& y) {
  RealMatrix out = b.constant;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] != 0.0) out += b.coefficients[i] * y[i];
  return out;
}

inline double min_eigenvalue(const RealMatrix& m) { return symmetric_eig(m).values.front(); }

namespace detail {

using BlockMat = std::vector<RealMatrix>;

inline double block_inner(const BlockMat& a, const BlockMat& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += inner(a[k], b[k]);
  return s;
}

inline RealMatrix sym_part(const RealMatrix& m) { return (m + m.transpose()) * 0.5; }

inline RealMatrix eig_function(const SymmetricEigen& e, double (*f)(double)) {
  const std::size_t n = e.values.size();
  RealMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(e.values[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = e.vectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += v * e.vectors(j, k);
    }
  }
  return out;
}

/// Largest α ≤ 1/… with m + α d ⪰ 0, given the eigendecomposition of m ≻ 0.
inline double max_step(const SymmetricEigen& m_eig, const RealMatrix& d) {
  for (double l : m_eig.values)
    if (!(l > 0.0)) throw NumericalBreakdown("iterate left the cone");
  const RealMatrix inv_sqrt = eig_function(m_eig, [](double l) { return 1.0 / std::sqrt(l); });
  const double lmin = min_eigenvalue(inv_sqrt * d * inv_sqrt);
  return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

struct Reduced {
  std::vector<double> y0;
  RealMatrix basis;  // n × m, orthonormal columns
};

/// Particular solution and orthonormal null-space basis of the equalities.
inline Reduced eliminate_equalities(const SdpProblem& prob) {
  const std::size_t n = prob.num_variables;
  std::vector<std::vector<double>> rows;  // orthonormalized constraint rows
  std::vector<double> y0(n, 0.0);
  // Gram-Schmidt on the constraint rows, carrying the right-hand sides.
  std::vector<double> rhs;
  for (const auto& eq : prob.equalities) {
    std::vector<double> r = eq.coefficients;
    double b = eq.rhs;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      double proj = 0.0;
      for (std::size_t i = 0; i < n; ++i) proj += rows[k][i] * r[i];
      for (std::size_t i = 0; i < n; ++i) r[i] -= proj * rows[k][i];
      b -= proj * rhs[k];
    }
    double nrm = 0.0;
    for (double v : r) nrm += v * v;
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) {
      if (std::abs(b) > 1e-9) throw DimensionMismatch("inconsistent equality constraints");
      continue;
    }
    for (double& v : r) v /= nrm;
    rows.push_back(std::move(r));
    rhs.push_back(b / nrm);
  }
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (std::size_t i = 0; i < n; ++i) y0[i] += rhs[k] * rows[k][i];

  std::vector<std::vector<double>> null;
  const std::size_t want = n - rows.size();
  for (std::size_t e = 0; e < n && null.size() < want; ++e) {
    std::vector<double> v(n, 0.0);
    v[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto* set : {&rows, &null})
        for (const auto& q : *set) {
          double proj = 0.0;
          for (std::size_t i = 0; i < n; ++i) proj += q[i] * v[i];
          for (std::size_t i = 0; i < n; ++i) v[i] -= proj * q[i];
        }
    }
    double nrm = 0.0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (nrm < 1e-6) continue;
    for (double& x : v) x /= nrm;
    null.push_back(std::move(v));
  }
  Reduced red{std::move(y0), RealMatrix(n, null.size())};
  for (std::size_t j = 0; j < null.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) red.basis(i, j) = null[j][i];
  return red;
}

}  // namespace detail

/// Solves the problem; see the file comment for the method. Returns the best
/// iterate with `certified == false` if the iteration budget runs out.
inline SdpSolution solve(const SdpProblem& prob, const SdpSolverOptions& opts = {}) {
  using detail::BlockMat;
  prob.validate();
  const std::size_t n = prob.num_variables;
  const std::size_t nb = prob.blocks.size();
  const detail::Reduced red = detail::eliminate_equalities(prob);
  const std::size_t m = red.basis.cols();

  // Reduced data: S(z) = G0 + Σ z_j G_j, objective c̃·z + c0.
  BlockMat g0(nb);
  std::vector<BlockMat> g(m, BlockMat(nb));
  for (std::size_t b = 0; b < nb; ++b) {
    g0[b] = evaluate_block(prob.blocks[b], red.y0);
    for (std::size_t j = 0; j < m; ++j) {
      RealMatrix gj(g0[b].rows(), g0[b].cols());
      for (std::size_t i = 0; i < n; ++i) {
        const double nij = red.basis(i, j);
        if (nij != 0.0) gj += prob.blocks[b].coefficients[i] * nij;
      }
      g[j][b] = std::move(gj);
    }
  }
  std::vector<double> cred(m, 0.0);
  double c0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) c0 += prob.objective[i] * red.y0[i];
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) cred[j] += prob.objective[i] * red.basis(i, j);

  auto lift = [&](const std::vector<double>& z) {
    std::vector<double> y = red.y0;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < n; ++i) y[i] += red.basis(i, j) * z[j];
    return y;
  };
  auto op_adjoint = [&](const std::vector<double>& z) {  // Σ z_j G_j
    BlockMat out(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      out[b] = RealMatrix(g0[b].rows(), g0[b].cols());
      for (std::size_t j = 0; j < m; ++j)
        if (z[j] != 0.0) out[b] += g[j][b] * z[j];
    }
    return out;
  };
  auto op = [&](const BlockMat& x) {  // (⟨G_j, X⟩)_j
    std::vector<double> out(m);
    for (std::size_t j = 0; j < m; ++j) out[j] = detail::block_inner(g[j], x);
    return out;
  };

  // Starting point.
  std::vector<double> z(m, 0.0);
  if (!prob.initial_point.empty()) {
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < n; ++i)
        z[j] += red.basis(i, j) * (prob.initial_point[i] - red.y0[i]);
  }
  BlockMat s = op_adjoint(z);
  std::size_t total_dim = 0;
  for (std::size_t b = 0; b < nb; ++b) {
    s[b] += g0[b];
    total_dim += s[b].rows();
    const double lmin = min_eigenvalue(s[b]);
    if (lmin < 1e-8) {
      s[b] += RealMatrix::identity(s[b].rows()) * (1.0 - lmin);
    }
  }
  double xi = std::max(10.0, std::sqrt(static_cast<double>(total_dim)));
  for (std::size_t j = 0; j < m; ++j) {
    double nrm = 0.0;
    for (std::size_t b = 0; b < nb; ++b) nrm += std::pow(g[j][b].frobenius_norm(), 2);
    xi = std::max(xi, static_cast<double>(total_dim) * (1.0 + std::abs(cred[j])) /
                          (1.0 + std::sqrt(nrm)));
  }
  BlockMat x(nb);
  for (std::size_t b = 0; b < nb; ++b) x[b] = RealMatrix::identity(s[b].rows()) * xi;

  double norm_c = 0.0, norm_g0 = 0.0;
  for (double v : cred) norm_c = std::max(norm_c, std::abs(v));
  for (const auto& blk : g0) norm_g0 = std::max(norm_g0, blk.max_abs());

  SdpSolution best;
  bool have_certified = false;
  SdpSolution result;

  auto snapshot = [&](int it, const std::vector<double>& zz, const BlockMat& ss, const BlockMat& xx) {
    SdpSolution sol;
    sol.iterations = it;
    sol.variables = lift(zz);
    double pobj = c0;
    for (std::size_t j = 0; j < m; ++j) pobj += cred[j] * zz[j];
    const double dobj = detail::block_inner(g0, xx) + c0;
    // LMI residual: G0 + Σ z G − S.
    BlockMat rd = op_adjoint(zz);
    double pinf = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      rd[b] += g0[b];
      rd[b] -= ss[b];
      pinf = std::max(pinf, rd[b].max_abs());
    }
    const std::vector<double> ax = op(xx);
    double dinf = 0.0;
    for (std::size_t j = 0; j < m; ++j) dinf = std::max(dinf, std::abs(ax[j] + cred[j]));
    sol.optimal_value = pobj;
    sol.dual_value = dobj;
    sol.duality_gap = std::abs(dobj - pobj);
    sol.primal_infeasibility = pinf / (1.0 + norm_g0);
    sol.dual_infeasibility = dinf / (1.0 + norm_c);
    sol.slacks.clear();
    for (std::size_t b = 0; b < nb; ++b) sol.slacks.push_back(evaluate_block(prob.blocks[b], sol.variables));
    sol.multipliers = xx;
    sol.certified = sol.duality_gap <= opts.gap_tol &&
                    sol.primal_infeasibility <= opts.infeasibility_tol &&
                    sol.dual_infeasibility <= opts.infeasibility_tol;
    sol.trace.push_back({it, pobj, dobj, detail::block_inner(ss, xx), sol.primal_infeasibility,
                         sol.dual_infeasibility});
    return sol;
  };

  std::vector<SdpIterate> trace;
  for (int it = 0; it <= opts.max_iterations; ++it) {
    SdpSolution cur = snapshot(it, z, s, x);
    trace.push_back(cur.trace.back());
    if (cur.certified) {
      const bool better = !have_certified || cur.duality_gap < best.duality_gap;
      if (better) {
        best = cur;
        have_certified = true;
      }
      if (cur.duality_gap <= opts.target_rel_gap * (1.0 + std::abs(cur.optimal_value))) break;
    } else if (!have_certified) {
      best = cur;
    }
    if (it == opts.max_iterations) break;

    try {
      // Nesterov-Todd scaling W with W S W = X, blockwise.
      BlockMat w(nb), s_inv(nb);
      std::vector<SymmetricEigen> s_eig(nb), x_eig(nb);
      for (std::size_t b = 0; b < nb; ++b) {
        x_eig[b] = symmetric_eig(x[b]);
        s_eig[b] = symmetric_eig(s[b]);
        for (double l : x_eig[b].values)
          if (!(l > 0.0)) throw NumericalBreakdown("multiplier left the cone");
        for (double l : s_eig[b].values)
          if (!(l > 0.0)) throw NumericalBreakdown("slack left the cone");
        const RealMatrix xh = detail::eig_function(x_eig[b], [](double l) { return std::sqrt(l); });
        const SymmetricEigen mid = symmetric_eig(detail::sym_part(xh * s[b] * xh));
        const RealMatrix mid_isqrt =
            detail::eig_function(mid, [](double l) { return 1.0 / std::sqrt(std::max(l, 1e-300)); });
        w[b] = detail::sym_part(xh * mid_isqrt * xh);
        s_inv[b] = detail::eig_function(s_eig[b], [](double l) { return 1.0 / l; });
      }

      // Schur complement M_kl = ⟨G_k, W G_l W⟩.
      std::vector<BlockMat> wgw(m, BlockMat(nb));
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t b = 0; b < nb; ++b) wgw[j][b] = w[b] * g[j][b] * w[b];
      RealMatrix schur(m, m);
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = k; l < m; ++l) {
          const double v = detail::block_inner(g[k], wgw[l]);
          schur(k, l) = schur(l, k) = v;
        }
      const RealMatrix chol = cholesky(schur);

      // Residuals in the conic-dual form: A_j = −G_j, C = G0, b = c̃.
      //   rp = c̃ − A(X) = c̃ + op(X),  Rd = C − S − Aᵀz = G0 + Σ z G − S.
      std::vector<double> rp = op(x);
      for (std::size_t j = 0; j < m; ++j) rp[j] += cred[j];
      BlockMat rd = op_adjoint(z);
      for (std::size_t b = 0; b < nb; ++b) {
        rd[b] += g0[b];
        rd[b] -= s[b];
      }
      const double mu = detail::block_inner(x, s) / static_cast<double>(total_dim);

      auto direction = [&](double sigma, std::vector<double>& dz, BlockMat& ds, BlockMat& dx) {
        // ΔX + W ΔS W = σμ S⁻¹ − X, with ΔS = Rd + Σ Δz G (A_j = −G_j).
        BlockMat rc(nb);
        for (std::size_t b = 0; b < nb; ++b) rc[b] = s_inv[b] * (sigma * mu) - x[b];
        BlockMat t(nb);  // Rc − W Rd W
        for (std::size_t b = 0; b < nb; ++b) t[b] = rc[b] - w[b] * rd[b] * w[b];
        // A(ΔX) = rp with A = −op:  −op(T) + op(W ΣΔz G W)·(−1)(−1)...
        // ΔX = T − W (Σ Δz G) W, so −op(ΔX) = rp gives M Δz = rp + op(T).
        std::vector<double> rhs = op(t);
        for (std::size_t j = 0; j < m; ++j) rhs[j] += rp[j];
        dz = cholesky_solve(chol, rhs);
        ds = rd;
        BlockMat sum_g(nb);
        for (std::size_t b = 0; b < nb; ++b) {
          sum_g[b] = RealMatrix(s[b].rows(), s[b].cols());
          for (std::size_t j = 0; j < m; ++j)
            if (dz[j] != 0.0) sum_g[b] += g[j][b] * dz[j];
          ds[b] += sum_g[b];
        }
        dx.assign(nb, RealMatrix());
        for (std::size_t b = 0; b < nb; ++b) {
          RealMatrix wsw(s[b].rows(), s[b].cols());
          for (std::size_t j = 0; j < m; ++j)
            if (dz[j] != 0.0) wsw += wgw[j][b] * dz[j];
          dx[b] = detail::sym_part(t[b] - wsw);
        }
      };
      auto step_lengths = [&](const BlockMat& dx, const BlockMat& ds) {
        double ap = std::numeric_limits<double>::infinity();
        double ad = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < nb; ++b) {
          ap = std::min(ap, detail::max_step(x_eig[b], dx[b]));
          ad = std::min(ad, detail::max_step(s_eig[b], ds[b]));
        }
        return std::pair<double, double>(ap, ad);
      };

      std::vector<double> dz;
      BlockMat ds, dx;
      direction(0.0, dz, ds, dx);
      auto [ax_aff, as_aff] = step_lengths(dx, ds);
      ax_aff = std::min(1.0, ax_aff);
      as_aff = std::min(1.0, as_aff);
      BlockMat x_aff = x, s_aff = s;
      for (std::size_t b = 0; b < nb; ++b) {
        x_aff[b] += dx[b] * ax_aff;
        s_aff[b] += ds[b] * as_aff;
      }
      const double mu_aff = detail::block_inner(x_aff, s_aff) / static_cast<double>(total_dim);
      const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);
      direction(sigma, dz, ds, dx);
      auto [ax_max, as_max] = step_lengths(dx, ds);
      const double tau = 0.98;
      const double ax = std::min(1.0, tau * ax_max);
      const double as = std::min(1.0, tau * as_max);
      for (std::size_t b = 0; b < nb; ++b) {
        x[b] = detail::sym_part(x[b] + dx[b] * ax);
        s[b] = detail::sym_part(s[b] + ds[b] * as);
      }
      for (std::size_t j = 0; j < m; ++j) z[j] += dz[j] * as;
      if (ax < 1e-12 && as < 1e-12) break;
    } catch (const NumericalBreakdown&) {
      if (have_certified) break;
      throw;
    }
  }
  result = best;
  result.trace = std::move(trace);
  result.status = result.certified ? SdpStatus::Optimal : SdpStatus::MaxIterations;
  return result;
}

/// Plain-text listing of the problem for cross-checking with external
/// solvers. Layout, one record per line:
///   qcl-sdp 1
///   variables <n>
///   objective <c_1> ... <c_n>
///   equality <k> <rhs> <a_1> ... <a_n>
///   block <b> <name> <dim>
///   entry <b> <i> <row> <col> <value>     (i = 0 is F0, i ≥ 1 is F_i;
///                                          upper triangle, nonzeros only)
/// Indices are 0-based except the variable index i in `entry` lines.
inline void write_sdp_listing(std::ostream& os, const SdpProblem& prob) {
  os << std::setprecision(17);
  os << "qcl-sdp 1\n";
  os << "variables " << prob.num_variables << '\n';
  os << "objective";
  for (double c : prob.objective) os << ' ' << c;
  os << '\n';
  for (std::size_t k = 0; k < prob.equalities.size(); ++k) {
    os << "equality " << k << ' ' << prob.equalities[k].rhs;
    for (double a : prob.equalities[k].coefficients) os << ' ' << a;
    os << '\n';
  }
  for (std::size_t b = 0; b < prob.blocks.size(); ++b) {
    const auto& blk = prob.blocks[b];
    os << "block " << b << ' ' << (blk.name.empty() ? "-" : blk.name) << ' '
       << blk.constant.rows() << '\n';
    auto emit = [&](std::size_t i, const RealMatrix& f) {
      for (std::size_t r = 0; r < f.rows(); ++r)
        for (std::size_t c = r; c < f.cols(); ++c)
          if (f(r, c) != 0.0) os << "entry " << b << ' ' << i << ' ' << r << ' ' << c << ' ' << f(r, c) << '\n';
    };
    emit(0, blk.constant);
    for (std::size_t i = 0; i < blk.coefficients.size(); ++i) emit(i + 1, blk.coefficients[i]);
  }
}

}  // namespace qcl
