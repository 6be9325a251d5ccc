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

// The qutrit family Λ_x(ρ) = (1−x)ρ + (x/2)(Tr(ρ) I − ρᵀ), 0 ≤ x ≤ 1, which
// runs from the identity channel (x = 0) to the Landau-Streater channel
// (x = 1).

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qcl/channels.hpp"
#include "qcl/errors.hpp"
#include "qcl/linalg.hpp"
#include "qcl/matrix.hpp"

namespace qcl {

/// Noise parameter x ∈ [0, 1].
class LSParam {
 public:
  explicit LSParam(double x) : x_(x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("x out of range: " + std::to_string(x));
  }
  double x() const noexcept { return x_; }

 private:
  double x_;
};

/// Spin-1 generators in the Cartesian basis, J_a = −i A_a with A_a real
/// antisymmetric.
inline const std::array<ComplexMatrix, 3>& spin1_generators() {
  static const std::array<ComplexMatrix, 3> gens = [] {
    const Complex mi(0.0, -1.0);
    return std::array<ComplexMatrix, 3>{
        ComplexMatrix{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}} * mi,
        ComplexMatrix{{0, 0, -1}, {0, 0, 0}, {1, 0, 0}} * mi,
        ComplexMatrix{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}} * mi};
  }();
  return gens;
}

/// so(3) generators of the vector representation, (𝒥_a)_{bc} = −ε_{abc}.
inline const std::array<RealMatrix, 3>& adjoint_generators() {
  static const std::array<RealMatrix, 3> gens = {
      RealMatrix{{0, 0, 0}, {0, 0, -1}, {0, 1, 0}},
      RealMatrix{{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}},
      RealMatrix{{0, -1, 0}, {1, 0, 0}, {0, 0, 0}}};
  return gens;
}

/// exp(iθ n·J), n normalized internally.
inline ComplexMatrix spin1_rotation(double theta, std::array<double, 3> axis) {
  const double norm = std::hypot(axis[0], axis[1], axis[2]);
  if (!(norm > 0.0)) throw DomainError("zero rotation axis");
  ComplexMatrix h(3, 3);
  for (int a = 0; a < 3; ++a) h += spin1_generators()[a] * Complex(theta * axis[a] / norm);
  return exp_i_hermitian(h);
}

/// exp(θ n·𝒥) on Cartesian vectors.
inline RealMatrix adjoint_rotation(double theta, std::array<double, 3> axis) {
  const double norm = std::hypot(axis[0], axis[1], axis[2]);
  if (!(norm > 0.0)) throw DomainError("zero rotation axis");
  // θ n·𝒥 is real antisymmetric, so −iθ n·𝒥 is Hermitian.
  ComplexMatrix h(3, 3);
  for (int a = 0; a < 3; ++a)
    h += to_complex(adjoint_generators()[a]) * Complex(0.0, -theta * axis[a] / norm);
  const ComplexMatrix r = exp_i_hermitian(h);
  RealMatrix out(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out(i, j) = r(i, j).real();
  return out;
}

/// K_0 = √(1−x) I and K_a = √(x/2) J_a.
inline KrausChannel kraus_for(LSParam p) {
  const double x = p.x();
  std::vector<ComplexMatrix> ks;
  ks.push_back(ComplexMatrix::identity(3) * Complex(std::sqrt(1.0 - x)));
  for (const auto& j : spin1_generators()) ks.push_back(j * Complex(std::sqrt(x / 2.0)));
  std::ostringstream label;
  label << "Lambda_" << x;
  return KrausChannel(3, 3, std::move(ks), label.str());
}

inline void require_qutrit_operator(const ComplexMatrix& m, const char* op) {
  if (m.rows() != 3 || m.cols() != 3) {
    throw DimensionMismatch(std::string(op) + " expects a 3x3 matrix, got " + m.shape());
  }
}

/// (1−x)ρ + (x/2)(Tr(ρ) I − ρᵀ)
inline ComplexMatrix apply_closed(LSParam p, const ComplexMatrix& rho) {
  require_qutrit_operator(rho, "apply_closed");
  const double x = p.x();
  ComplexMatrix out = rho * Complex(1.0 - x);
  out += (ComplexMatrix::identity(3) * rho.trace() - rho.transpose()) * Complex(x / 2.0);
  return out;
}

/// Environment output of Λ_x on a general 3x3 matrix [[a b c] [d e f] [g h k]].
/// Row/column 0 of the result is the K_0 (identity) slot.
inline ComplexMatrix complement_closed(LSParam p, const ComplexMatrix& m) {
  require_qutrit_operator(m, "complement_closed");
  const double x = p.x();
  const Complex a = m(0, 0), b = m(0, 1), c = m(0, 2);
  const Complex d = m(1, 0), e = m(1, 1), f = m(1, 2);
  const Complex g = m(2, 0), h = m(2, 1), k = m(2, 2);
  const Complex is(0.0, std::sqrt(2.0 * x * (1.0 - x)));
  const ComplexMatrix twice{
      {2.0 * (1.0 - x) * (a + e + k), is * (f - h), -is * (c - g), is * (b - d)},
      {is * (f - h), x * (e + k), -d * x, -g * x},
      {-is * (c - g), -b * x, x * (a + k), -h * x},
      {is * (b - d), -c * x, -f * x, x * (a + e)}};
  return twice * Complex(0.5);
}

/// Eigen-operators of Λ_x: Z_1, Z_2 and X_sr (symmetric, 1 − 3x/2), Y_sr
/// (antisymmetric, 1 − x/2).
struct EigenOperator {
  std::string name;
  ComplexMatrix op;
  bool antisymmetric;
  double eigenvalue(double x) const { return antisymmetric ? 1.0 - x / 2.0 : 1.0 - 1.5 * x; }
};

inline std::vector<EigenOperator> eigen_operators() {
  std::vector<EigenOperator> out;
  auto e = [](std::size_t k, std::size_t l) { return ComplexMatrix::unit(3, 3, k, l); };
  out.push_back({"Z_1", e(0, 0) - e(2, 2), false});
  out.push_back({"Z_2", e(1, 1) - e(2, 2), false});
  for (std::size_t s = 0; s < 3; ++s)
    for (std::size_t r = s + 1; r < 3; ++r) {
      const std::string idx = std::to_string(s + 1) + std::to_string(r + 1);
      out.push_back({"X_" + idx, e(s, r) + e(r, s), false});
      out.push_back({"Y_" + idx, (e(s, r) - e(r, s)) * Complex(0.0, -1.0), true});
    }
  return out;
}

struct SpectrumReport {
  double x = 0.0;
  int eigenvalue_one_mult = 1;
  double lam_sym = 1.0;  // 1 − 3x/2
  int lam_sym_mult = 5;
  double lam_antisym = 1.0;  // 1 − x/2
  int lam_antisym_mult = 3;
  double determinant = 1.0;
  bool markovian_obstruction = false;  // determinant < 0
};

inline SpectrumReport spectrum(LSParam p) {
  const double x = p.x();
  SpectrumReport r;
  r.x = x;
  r.lam_sym = 1.0 - 1.5 * x;
  r.lam_antisym = 1.0 - 0.5 * x;
  r.determinant = std::pow(r.lam_antisym, 3) * std::pow(r.lam_sym, 5);
  r.markovian_obstruction = r.determinant < 0.0;
  return r;
}

struct EndpointReport {
  double self_complement_defect = 0.0;   // x = 1, worst over the random inputs
  double zero_row_defect = 0.0;          // x = 1, first row/column of Λ_1^c
  double identity_complement_defect = 0.0;  // x = 0, against Tr(m)|0><0| ⊕ 0
  int inputs = 0;
};

/// Checks Λ_1^c = 0 ⊕ Λ_1 and Λ_0^c(m) = Tr(m)|0><0| ⊕ 0 on seeded random
/// Hermitian inputs (plus I/3); throws CheckFailed with the offending input.
inline EndpointReport endpoint_checks(int random_inputs = 20, std::uint64_t seed = 2024,
                                      double tol = 1e-12) {
  std::mt19937_64 gen(seed);
  std::vector<ComplexMatrix> inputs;
  inputs.push_back(ComplexMatrix::identity(3) * Complex(1.0 / 3.0));
  for (int i = 0; i < random_inputs; ++i) inputs.push_back(random_hermitian(3, gen));

  EndpointReport rep;
  const LSParam one(1.0), zero(0.0);
  for (const auto& m : inputs) {
    const ComplexMatrix env = complement_closed(one, m);
    const ComplexMatrix out = apply_closed(one, m);
    double row = 0.0, block = 0.0;
    for (std::size_t i = 0; i < 4; ++i) row = std::max({row, std::abs(env(0, i)), std::abs(env(i, 0))});
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) block = std::max(block, std::abs(env(i + 1, j + 1) - out(i, j)));

    ComplexMatrix expected0(4, 4);
    expected0(0, 0) = m.trace();
    const double idc = (complement_closed(zero, m) - expected0).max_abs();

    rep.zero_row_defect = std::max(rep.zero_row_defect, row);
    rep.self_complement_defect = std::max(rep.self_complement_defect, block);
    rep.identity_complement_defect = std::max(rep.identity_complement_defect, idc);
    if (row > tol || block > tol || idc > tol) {
      std::ostringstream msg;
      msg << "endpoint check failed (row " << row << ", block " << block << ", x=0 " << idc
          << ") on input\n" << m;
      throw CheckFailed(msg.str());
    }
    ++rep.inputs;
  }
  return rep;
}

}  // namespace qcl
