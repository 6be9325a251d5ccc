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

// Dense coding through the Landau-Streater channel Λ_1 acting on Alice's half
// of a shared two-qutrit state. Kets are ordered |Alice, Bob>.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qcl/channels.hpp"
#include "qcl/errors.hpp"
#include "qcl/linalg.hpp"
#include "qcl/ls_family.hpp"
#include "qcl/matrix.hpp"

namespace qcl {

struct ProtocolResult {
  std::string protocol_name;
  RealMatrix joint_distribution;  // P(message, outcome)
  double mutual_information = 0.0;
};

/// I(X:Y) = H(X) + H(Y) − H(X,Y) in bits.
inline double mutual_information(const RealMatrix& joint) {
  double total = 0.0;
  for (double p : joint.data()) {
    if (p < -1e-12 || !std::isfinite(p)) throw NotADistribution("entry " + std::to_string(p));
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw NotADistribution("total " + std::to_string(total));
  std::vector<double> px(joint.rows(), 0.0), py(joint.cols(), 0.0);
  double hxy = 0.0;
  for (std::size_t i = 0; i < joint.rows(); ++i)
    for (std::size_t j = 0; j < joint.cols(); ++j) {
      const double p = std::max(0.0, joint(i, j));
      px[i] += p;
      py[j] += p;
      hxy += xlog2x_neg(p);
    }
  double hx = 0.0, hy = 0.0;
  for (double p : px) hx += xlog2x_neg(p);
  for (double p : py) hy += xlog2x_neg(p);
  return hx + hy - hxy;
}

namespace detail {

inline Complex omega_pow(long k) {
  const long r = ((k % 3) + 3) % 3;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / 3.0);
}

inline std::size_t pair_index(std::size_t a, std::size_t b) { return 3 * a + b; }

/// Λ_1 ⊗ id on a two-qutrit operator.
inline ComplexMatrix ls_on_alice(const ComplexMatrix& m) {
  const KrausChannel ls = kraus_for(LSParam(1.0));
  std::vector<ComplexMatrix> lifted;
  for (const auto& k : ls.kraus()) lifted.push_back(kron(k, ComplexMatrix::identity(3)));
  return apply_channel(KrausChannel(9, 9, std::move(lifted), "Lambda_1 (x) id"), m);
}

inline RealMatrix clip_and_check(RealMatrix joint) {
  double total = 0.0;
  for (double& p : joint.data()) {
    if (p < -1e-12) throw NotADistribution("negative probability " + std::to_string(p));
    p = std::max(0.0, p);
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10) throw NotADistribution("total " + std::to_string(total));
  return joint;
}

}  // namespace detail

/// |Φ_n> = (Z^n ⊗ I)|Φ> = (1/√3) Σ_j ω^{jn} |j, j>.
inline ComplexVector phase_encoded_state(int n) {
  ComplexVector v(9);
  for (std::size_t j = 0; j < 3; ++j)
    v[detail::pair_index(j, j)] = detail::omega_pow(static_cast<long>(j) * n) / std::sqrt(3.0);
  return v;
}

/// (1/6)(I ⊗ I − Σ_{j,k} ω^{(j−k)n} |k, j><j, k|)
inline ComplexMatrix phase_output_closed_form(int n) {
  ComplexMatrix rho = ComplexMatrix::identity(9);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k)
      rho(detail::pair_index(k, j), detail::pair_index(j, k)) -=
          detail::omega_pow((static_cast<long>(j) - static_cast<long>(k)) * n);
  return rho * Complex(1.0 / 6.0);
}

/// E_p = Σ_l |l, l+p><l, l+p|.
inline ComplexMatrix shift_povm_element(int p) {
  ComplexMatrix e(9, 9);
  for (std::size_t l = 0; l < 3; ++l) {
    const std::size_t idx = detail::pair_index(l, (l + static_cast<std::size_t>(p)) % 3);
    e(idx, idx) = 1.0;
  }
  return e;
}

/// Channel outputs ρ_n of the phase protocol, cross-checked against the
/// closed form.
inline std::vector<ComplexMatrix> phase_protocol_states(double tol = 1e-12) {
  std::vector<ComplexMatrix> states;
  for (int n = 0; n < 3; ++n) {
    const ComplexMatrix via_kraus = detail::ls_on_alice(projector(phase_encoded_state(n)));
    const double diff = (via_kraus - phase_output_closed_form(n)).max_abs();
    if (diff > tol) {
      throw ClosedFormMismatch("rho_" + std::to_string(n) + " differs by " + std::to_string(diff));
    }
    states.push_back(via_kraus);
  }
  return states;
}

/// Alice encodes a trit n with Z^n on her half of |Φ>, sends it through Λ_1,
/// Bob measures {E_p}. Uniform prior.
inline ProtocolResult phase_protocol() {
  const auto states = phase_protocol_states();
  RealMatrix joint(3, 3);
  for (int n = 0; n < 3; ++n)
    for (int p = 0; p < 3; ++p)
      joint(n, p) = (shift_povm_element(p) * states[n]).trace().real() / 3.0;
  joint = detail::clip_and_check(std::move(joint));
  return {"phase", joint, mutual_information(joint)};
}

/// |Φ_{m,n}> = (1/√3) Σ_j ω^{jn} |j, j − m>.
inline ComplexVector bell_state(int m, int n) {
  ComplexVector v(9);
  for (std::size_t j = 0; j < 3; ++j) {
    const std::size_t b = (j + 3 - static_cast<std::size_t>(m)) % 3;
    v[detail::pair_index(j, b)] = detail::omega_pow(static_cast<long>(j) * n) / std::sqrt(3.0);
  }
  return v;
}

/// Alice encodes two trits (m, n) into one of the nine Bell states, sends her
/// qutrit through Λ_1, Bob measures in the Bell basis. Messages and outcomes
/// are indexed 3m + n. Uniform prior.
inline ProtocolResult bell_protocol() {
  std::vector<ComplexMatrix> projectors;
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) projectors.push_back(projector(bell_state(p, q)));
  RealMatrix joint(9, 9);
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) {
      const ComplexMatrix rho = detail::ls_on_alice(projector(bell_state(m, n)));
      for (std::size_t y = 0; y < 9; ++y)
        joint(3 * m + n, y) = (projectors[y] * rho).trace().real() / 9.0;
    }
  joint = detail::clip_and_check(std::move(joint));
  return {"bell", joint, mutual_information(joint)};
}

}  // namespace qcl
