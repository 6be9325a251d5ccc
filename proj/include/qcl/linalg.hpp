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

// Dense kernels shared by every module: Jacobi eigensolvers, LU determinant,
// Cholesky, partial trace/transpose, entropy and group sampling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "qcl/errors.hpp"
#include "qcl/matrix.hpp"

namespace qcl {

inline constexpr double kLog2Of3 = 1.5849625007211561815;  // log2(3)

/// -p log2 p with 0 log 0 = 0.
inline double xlog2x_neg(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  RealMatrix vectors;          // columns
};

struct HermitianEigen {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns, orthonormal
};

namespace detail {

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiOffTol = 1e-14;

inline double off_diagonal_norm(const RealMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace detail

/// Cyclic Jacobi diagonalization of a real symmetric matrix. The input is
/// symmetrized first; convergence when the off-diagonal Frobenius norm drops
/// below 1e-14 relative to max(1, ‖a‖_F).
inline SymmetricEigen symmetric_eig(const RealMatrix& input) {
  input.require_square("symmetric_eig");
  const std::size_t n = input.rows();
  RealMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (input(i, j) + input(j, i));
  RealMatrix v = RealMatrix::identity(n);

  const double target = detail::kJacobiOffTol * std::max(1.0, a.frobenius_norm());
  int sweep = 0;
  for (; sweep < detail::kJacobiMaxSweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (sweep == detail::kJacobiMaxSweeps && detail::off_diagonal_norm(a) > target) {
    throw NumericalBreakdown("Jacobi did not converge in 100 sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  SymmetricEigen out{std::vector<double>(n), RealMatrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

/// Real symmetric embedding [[Re m, −Im m], [Im m, Re m]] of a complex matrix.
inline RealMatrix realify(const ComplexMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  RealMatrix out(2 * r, 2 * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      const Complex z = m(i, j);
      out(i, j) = z.real();
      out(i, j + c) = -z.imag();
      out(i + r, j) = z.imag();
      out(i + r, j + c) = z.real();
    }
  return out;
}

/// Inverse of realify for matrices that carry the embedding structure.
inline ComplexMatrix complexify(const RealMatrix& m) {
  const std::size_t r = m.rows() / 2, c = m.cols() / 2;
  ComplexMatrix out(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      out(i, j) = Complex(0.5 * (m(i, j) + m(i + r, j + c)),
                          0.5 * (m(i + r, j) - m(i, j + c)));
  return out;
}

/// Eigendecomposition of a Hermitian matrix through Jacobi on its realified
/// embedding. Every eigenvalue of the embedding appears twice; each pair is
/// folded back into one complex eigenvector.
inline HermitianEigen hermitian_eig(const ComplexMatrix& m) {
  m.require_square("hermitian_eig");
  if (!m.all_finite()) throw NumericalBreakdown("non-finite matrix entry");
  if (hermiticity_defect(m) > 1e-8) {
    throw NotHermitian("asymmetry " + std::to_string(hermiticity_defect(m)));
  }
  const std::size_t n = m.rows();
  ComplexMatrix h = (m + m.adjoint()) * Complex(0.5);
  const SymmetricEigen real_eig = symmetric_eig(realify(h));

  const double scale = std::max(1.0, h.max_abs());
  const double cluster_tol = 1e-12 * scale;

  HermitianEigen out{{}, ComplexMatrix(n, n)};
  std::vector<ComplexVector> chosen;
  chosen.reserve(n);

  std::size_t begin = 0;
  while (begin < 2 * n) {
    std::size_t end = begin + 1;
    while (end < 2 * n &&
           (real_eig.values[end] - real_eig.values[end - 1] <= cluster_tol ||
            (end - begin) % 2 == 1)) {
      ++end;
    }
    const std::size_t want = (end - begin) / 2;
    std::vector<ComplexVector> candidates;
    for (std::size_t c = begin; c < end; ++c) {
      ComplexVector u(n);
      for (std::size_t r = 0; r < n; ++r)
        u[r] = Complex(real_eig.vectors(r, c), real_eig.vectors(r + n, c));
      candidates.push_back(std::move(u));
    }
    // Pivoted Gram-Schmidt: the complex images of a cluster span exactly
    // `want` dimensions.
    std::vector<ComplexVector> basis;
    for (std::size_t pick = 0; pick < want; ++pick) {
      double best_norm = -1.0;
      std::size_t best = 0;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        double nrm = 0.0;
        for (const auto& z : candidates[c]) nrm += std::norm(z);
        if (nrm > best_norm) {
          best_norm = nrm;
          best = c;
        }
      }
      if (best_norm <= 1e-20) throw NumericalBreakdown("degenerate eigenvector fold");
      ComplexVector q = candidates[best];
      const double inv = 1.0 / std::sqrt(best_norm);
      for (auto& z : q) z *= inv;
      for (auto& cand : candidates) {
        Complex proj{};
        for (std::size_t r = 0; r < n; ++r) proj += std::conj(q[r]) * cand[r];
        for (std::size_t r = 0; r < n; ++r) cand[r] -= proj * q[r];
      }
      basis.push_back(std::move(q));
    }
    for (auto& q : basis) chosen.push_back(std::move(q));
    begin = end;
  }

  std::vector<double> rayleigh(n);
  for (std::size_t c = 0; c < n; ++c) {
    const ComplexVector hq = h * chosen[c];
    Complex s{};
    for (std::size_t r = 0; r < n; ++r) s += std::conj(chosen[c][r]) * hq[r];
    rayleigh[c] = s.real();
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return rayleigh[i] < rayleigh[j]; });
  out.eigenvalues.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = rayleigh[order[c]];
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = chosen[order[c]][r];
  }
  return out;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  return hermitian_eig(m).eigenvalues;
}

/// V f(Λ) V† for Hermitian m.
inline ComplexMatrix hermitian_function(const ComplexMatrix& m,
                                        const std::function<Complex(double)>& f) {
  const HermitianEigen eig = hermitian_eig(m);
  const std::size_t n = m.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex fk = f(eig.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eig.eigenvectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

/// exp(iH) for Hermitian H.
inline ComplexMatrix exp_i_hermitian(const ComplexMatrix& h) {
  return hermitian_function(h, [](double l) { return std::polar(1.0, l); });
}

/// Determinant by LU with partial pivoting.
template <typename T>
T determinant(BasicMatrix<T> a) {
  a.require_square("determinant");
  const std::size_t n = a.rows();
  T det{1};
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (a(piv, col) == T{}) return T{};
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const T f = a(r, col) / a(col, col);
      if (f == T{}) continue;
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

/// Lower Cholesky factor of a symmetric positive definite matrix.
inline RealMatrix cholesky(const RealMatrix& a) {
  a.require_square("cholesky");
  const std::size_t n = a.rows();
  RealMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) throw NumericalBreakdown("matrix not positive definite");
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

/// Solves (L Lᵀ) x = b.
inline std::vector<double> cholesky_solve(const RealMatrix& l, std::vector<double> b) {
  const std::size_t n = l.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) b[i] -= l(i, k) * b[k];
    b[i] /= l(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) b[i] -= l(k, i) * b[k];
    b[i] /= l(i, i);
  }
  return b;
}

enum class Subsystem { A, B };

/// Partial trace of an operator on A⊗B; `keep` names the surviving factor.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a,
                                   std::size_t dim_b, Subsystem keep) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw DimensionMismatch("partial_trace expects " + std::to_string(dim_a * dim_b) +
                            "-square, got " + m.shape());
  }
  if (keep == Subsystem::A) {
    ComplexMatrix out(dim_a, dim_a);
    for (std::size_t i = 0; i < dim_a; ++i)
      for (std::size_t j = 0; j < dim_a; ++j)
        for (std::size_t k = 0; k < dim_b; ++k) out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
  }
  ComplexMatrix out(dim_b, dim_b);
  for (std::size_t k = 0; k < dim_b; ++k)
    for (std::size_t l = 0; l < dim_b; ++l)
      for (std::size_t i = 0; i < dim_a; ++i) out(k, l) += m(i * dim_b + k, i * dim_b + l);
  return out;
}

/// Transpose on the B factor: (|ij><kl|)^{T_B} = |il><kj|.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a,
                                       std::size_t dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw DimensionMismatch("partial_transpose expects " + std::to_string(dim_a * dim_b) +
                            "-square, got " + m.shape());
  }
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_b; ++j)
      for (std::size_t k = 0; k < dim_a; ++k)
        for (std::size_t l = 0; l < dim_b; ++l)
          out(i * dim_b + l, k * dim_b + j) = m(i * dim_b + j, k * dim_b + l);
  return out;
}

inline constexpr double kEigenClipTol = 1e-10;

/// Entropy in bits of a spectrum; entries in [−1e-10, 0) count as zero.
inline double entropy_of_spectrum(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double l : eigenvalues) {
    if (l < -kEigenClipTol) {
      throw NegativeEigenvalue("eigenvalue " + std::to_string(l));
    }
    s += xlog2x_neg(l);
  }
  return std::max(0.0, s);
}

/// −Tr ρ log2 ρ for a Hermitian positive semidefinite matrix.
inline double von_neumann_entropy(const ComplexMatrix& rho) {
  const auto ev = hermitian_eigenvalues(rho);
  return entropy_of_spectrum(ev);
}

/// O3(γ) O2(β) O1(α): rotations in the (1,2), (1,3) and (2,3) planes.
inline ComplexMatrix sample_so3(double alpha, double beta, double gamma) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  const double cg = std::cos(gamma), sg = std::sin(gamma);
  const RealMatrix o1{{ca, sa, 0}, {-sa, ca, 0}, {0, 0, 1}};
  const RealMatrix o2{{cb, 0, sb}, {0, 1, 0}, {-sb, 0, cb}};
  const RealMatrix o3{{1, 0, 0}, {0, cg, sg}, {0, -sg, cg}};
  return to_complex(o3 * o2 * o1);
}

/// Random traceless Hermitian generator with Gaussian entries.
inline ComplexMatrix random_traceless_hermitian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = normal(gen);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double re = normal(gen), im = normal(gen);
      h(i, j) = Complex(re, im);
      h(j, i) = Complex(re, -im);
    }
  }
  const Complex shift = h.trace() / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) h(i, i) -= shift;
  return h;
}

/// U = exp(iH) for a seeded random traceless Hermitian H, so det U = 1.
inline ComplexMatrix sample_su3(std::uint64_t seed) {
  return exp_i_hermitian(random_traceless_hermitian(3, seed));
}

/// ‖U†U − I‖_max
inline double unitarity_defect(const ComplexMatrix& u) {
  if (!u.is_square()) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - ComplexMatrix::identity(u.rows())).max_abs();
}

/// Random density matrix A A† / Tr(A A†) with Gaussian A.
template <typename Rng>
ComplexMatrix random_density(std::size_t n, Rng& gen) {
  std::normal_distribution<double> normal;
  ComplexMatrix a(n, n);
  for (auto& z : a.data()) z = Complex(normal(gen), normal(gen));
  ComplexMatrix rho = a * a.adjoint();
  rho *= Complex(1.0 / rho.trace().real());
  return rho;
}

/// Random Hermitian matrix with Gaussian entries of unit scale.
template <typename Rng>
ComplexMatrix random_hermitian(std::size_t n, Rng& gen) {
  std::normal_distribution<double> normal;
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = normal(gen);
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = Complex(normal(gen), normal(gen));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

}  // namespace qcl
