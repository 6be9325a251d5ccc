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

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qcl/errors.hpp"
#include "qcl/linalg.hpp"
#include "qcl/matrix.hpp"

namespace qcl {

inline constexpr double kStateTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;

/// Hermitian, positive semidefinite, unit-trace operator.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (!m_.is_square()) throw InvalidState("density matrix must be square, got " + m_.shape());
    if (!m_.all_finite()) throw InvalidState("non-finite entry");
    if (hermiticity_defect(m_) > kStateTol) {
      throw InvalidState("not Hermitian, defect " + std::to_string(hermiticity_defect(m_)));
    }
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) {
      throw InvalidState("trace " + std::to_string(tr));
    }
    const double lmin = hermitian_eigenvalues(m_).front();
    if (lmin < -kStateTol) throw InvalidState("negative eigenvalue " + std::to_string(lmin));
  }

  static DensityMatrix maximally_mixed(std::size_t dim) {
    return DensityMatrix(ComplexMatrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
  }
  /// |ψ><ψ| after normalizing ψ.
  static DensityMatrix pure(std::span<const Complex> psi) {
    double n2 = 0.0;
    for (const auto& z : psi) n2 += std::norm(z);
    if (!(n2 > 0.0)) throw InvalidState("zero vector");
    ComplexMatrix p = projector(psi);
    p *= Complex(1.0 / n2);
    return DensityMatrix(std::move(p));
  }
  static DensityMatrix basis(std::size_t dim, std::size_t index) {
    return DensityMatrix(ComplexMatrix::unit(dim, dim, index, index));
  }

  std::size_t dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }

 private:
  ComplexMatrix m_;
};

inline double von_neumann_entropy(const DensityMatrix& rho) {
  return von_neumann_entropy(rho.matrix());
}

/// Completely positive map ρ ↦ Σ K ρ K†, trace preserving unless built with
/// KrausChannel::unchecked.
class KrausChannel {
 public:
  KrausChannel(std::size_t dim_in, std::size_t dim_out, std::vector<ComplexMatrix> kraus,
               std::string label = {})
      : KrausChannel(dim_in, dim_out, std::move(kraus), std::move(label), true) {}

  /// Skips the trace-preservation check; shapes are still validated.
  static KrausChannel unchecked(std::size_t dim_in, std::size_t dim_out,
                                std::vector<ComplexMatrix> kraus, std::string label = {}) {
    return KrausChannel(dim_in, dim_out, std::move(kraus), std::move(label), false);
  }

  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t dim_out() const noexcept { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }
  const std::string& label() const noexcept { return label_; }

  /// ‖Σ K†K − I‖_max
  double trace_preservation_defect() const {
    ComplexMatrix s(dim_in_, dim_in_);
    for (const auto& k : kraus_) s += k.adjoint() * k;
    return (s - ComplexMatrix::identity(dim_in_)).max_abs();
  }

 private:
  KrausChannel(std::size_t dim_in, std::size_t dim_out, std::vector<ComplexMatrix> kraus,
               std::string label, bool check)
      : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)), label_(std::move(label)) {
    if (kraus_.empty()) throw InvalidChannel("empty Kraus list");
    for (const auto& k : kraus_) {
      if (k.rows() != dim_out_ || k.cols() != dim_in_) {
        throw DimensionMismatch("Kraus operator " + k.shape() + ", expected " +
                                std::to_string(dim_out_) + "x" + std::to_string(dim_in_));
      }
    }
    if (check) {
      const double defect = trace_preservation_defect();
      if (defect > 1e-10) {
        throw InvalidChannel("CPT invariant violated: trace preservation defect " +
                             std::to_string(defect) + (label_.empty() ? "" : " in " + label_));
      }
    }
  }

  std::size_t dim_in_;
  std::size_t dim_out_;
  std::vector<ComplexMatrix> kraus_;
  std::string label_;
};

struct ChoiMatrix {
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
  ComplexMatrix matrix;  // input factor first
};

inline KrausChannel identity_channel(std::size_t d) {
  return KrausChannel(d, d, {ComplexMatrix::identity(d)}, "identity");
}

/// Σ K m K† on an arbitrary (not necessarily positive) operator.
inline ComplexMatrix apply_channel(const KrausChannel& ch, const ComplexMatrix& m) {
  if (m.rows() != ch.dim_in() || m.cols() != ch.dim_in()) {
    throw DimensionMismatch("channel input is " + std::to_string(ch.dim_in()) +
                            "-dimensional, got " + m.shape());
  }
  ComplexMatrix out(ch.dim_out(), ch.dim_out());
  for (const auto& k : ch.kraus()) out += k * m * k.adjoint();
  return out;
}

inline DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
  ComplexMatrix out = apply_channel(ch, rho.matrix());
  // Kill roundoff asymmetry before revalidating.
  out = (out + out.adjoint()) * Complex(0.5);
  return DensityMatrix(std::move(out));
}

/// J = Σ_ij |i><j| ⊗ Φ(|i><j|).
inline ChoiMatrix choi(const KrausChannel& ch) {
  const std::size_t din = ch.dim_in(), dout = ch.dim_out();
  ChoiMatrix j{din, dout, ComplexMatrix(din * dout, din * dout)};
  for (std::size_t a = 0; a < din; ++a)
    for (std::size_t b = 0; b < din; ++b) {
      const ComplexMatrix unit = ComplexMatrix::unit(din, din, a, b);
      j.matrix += kron(unit, apply_channel(ch, unit));
    }
  return j;
}

/// Φ(ρ) = Tr_A[J (ρ^T ⊗ I)].
inline ComplexMatrix apply_via_choi(const ChoiMatrix& j, const ComplexMatrix& rho) {
  if (rho.rows() != j.dim_in || rho.cols() != j.dim_in) {
    throw DimensionMismatch("Choi contraction input " + rho.shape());
  }
  const ComplexMatrix lifted = kron(rho.transpose(), ComplexMatrix::identity(j.dim_out));
  return partial_trace(j.matrix * lifted, j.dim_in, j.dim_out, Subsystem::B);
}

/// Complementary channel from the Kraus recipe (R_i)_{α,j} = (K_α)_{i,j}.
/// The environment keeps one dimension per Kraus operator, zero operators
/// included.
inline KrausChannel complement(const KrausChannel& ch) {
  const std::size_t n = ch.kraus().size();
  std::vector<ComplexMatrix> rs;
  rs.reserve(ch.dim_out());
  for (std::size_t i = 0; i < ch.dim_out(); ++i) {
    ComplexMatrix r(n, ch.dim_in());
    for (std::size_t alpha = 0; alpha < n; ++alpha)
      for (std::size_t j = 0; j < ch.dim_in(); ++j) r(alpha, j) = ch.kraus()[alpha](i, j);
    rs.push_back(std::move(r));
  }
  return KrausChannel::unchecked(ch.dim_in(), n, std::move(rs),
                                 ch.label().empty() ? "complement" : ch.label() + "^c");
}

/// Matrix of the channel on column-stacked operators: the unit E_kl maps to
/// column k + d·l and output entry (a, b) sits in row a + d·b.
inline ComplexMatrix transfer_matrix(const KrausChannel& ch) {
  if (ch.dim_in() != ch.dim_out()) {
    throw DimensionMismatch("transfer matrix needs equal input and output dimensions");
  }
  const std::size_t d = ch.dim_in();
  ComplexMatrix t(d * d, d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      const ComplexMatrix image = apply_channel(ch, ComplexMatrix::unit(d, d, k, l));
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) t(a + d * b, k + d * l) = image(a, b);
    }
  return t;
}

/// The d² Hermitian operators E_kk, E_kl + E_lk, −i(E_kl − E_lk).
inline std::vector<ComplexMatrix> hermitian_basis(std::size_t d) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(d * d);
  const Complex i1(0.0, 1.0);
  for (std::size_t k = 0; k < d; ++k) basis.push_back(ComplexMatrix::unit(d, d, k, k));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = k + 1; l < d; ++l) {
      basis.push_back(ComplexMatrix::unit(d, d, k, l) + ComplexMatrix::unit(d, d, l, k));
      basis.push_back((ComplexMatrix::unit(d, d, k, l) - ComplexMatrix::unit(d, d, l, k)) * -i1);
    }
  return basis;
}

inline constexpr double kUnitaryTol = 1e-10;

/// max_B ‖Φ(U B U†) − V Φ(B) V†‖_max over the Hermitian basis.
inline double covariance_defect(const KrausChannel& ch, const ComplexMatrix& u_in,
                                const ComplexMatrix& u_out) {
  if (u_in.rows() != ch.dim_in() || u_out.rows() != ch.dim_out()) {
    throw DimensionMismatch("representation dimensions do not match the channel");
  }
  if (unitarity_defect(u_in) > kUnitaryTol) throw NotUnitary("u_in");
  if (unitarity_defect(u_out) > kUnitaryTol) throw NotUnitary("u_out");
  double worst = 0.0;
  for (const auto& b : hermitian_basis(ch.dim_in())) {
    const ComplexMatrix lhs = apply_channel(ch, u_in * b * u_in.adjoint());
    const ComplexMatrix rhs = u_out * apply_channel(ch, b) * u_out.adjoint();
    worst = std::max(worst, (lhs - rhs).max_abs());
  }
  return worst;
}

/// max_i ‖V† K_i U − Σ_j Ω_ij K_j‖_max
inline double omega_defect(const KrausChannel& ch, const ComplexMatrix& u_in,
                           const ComplexMatrix& u_out, const ComplexMatrix& omega) {
  const std::size_t n = ch.kraus().size();
  if (omega.rows() != n || omega.cols() != n) {
    throw DimensionMismatch("omega is " + omega.shape() + " for " + std::to_string(n) +
                            " Kraus operators");
  }
  if (u_in.rows() != ch.dim_in() || u_out.rows() != ch.dim_out()) {
    throw DimensionMismatch("representation dimensions do not match the channel");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMatrix diff = u_out.adjoint() * ch.kraus()[i] * u_in;
    for (std::size_t j = 0; j < n; ++j) diff -= ch.kraus()[j] * omega(i, j);
    worst = std::max(worst, diff.max_abs());
  }
  return worst;
}

}  // namespace qcl
