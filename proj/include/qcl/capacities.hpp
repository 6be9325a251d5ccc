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

// Classical, entanglement-assisted and single-letter quantum capacities of
// Λ_x. All quantities are in bits.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "qcl/channels.hpp"
#include "qcl/errors.hpp"
#include "qcl/linalg.hpp"
#include "qcl/ls_family.hpp"
#include "qcl/optimize.hpp"

namespace qcl {

/// log2 3 + (x/2) log2(x/2) + (1 − x/2) log2(1 − x/2)
inline double chi_star(LSParam p) {
  const double x = p.x();
  return kLog2Of3 - xlog2x_neg(x / 2.0) - xlog2x_neg(1.0 - x / 2.0);
}

/// 2 log2 3 + x log2(x/3) + (1 − x) log2(1 − x)
inline double c_ea(LSParam p) {
  const double x = p.x();
  // x log2(x/3) = −3·(−(x/3) log2(x/3))
  return 2.0 * kLog2Of3 - 3.0 * xlog2x_neg(x / 3.0) - xlog2x_neg(1.0 - x);
}

/// S(I/3) + S(Λ_x(I/3)) − S(Λ_x^c(I/3)) through the generic Kraus machinery.
inline double c_ea_numeric(LSParam p) {
  const KrausChannel ch = kraus_for(p);
  const KrausChannel env = complement(ch);
  const ComplexMatrix mixed = ComplexMatrix::identity(3) * Complex(1.0 / 3.0);
  return von_neumann_entropy(mixed) + von_neumann_entropy(apply_channel(ch, mixed)) -
         von_neumann_entropy(apply_channel(env, mixed));
}

namespace detail {

/// Coherent information without state validation, for optimizer inner loops.
inline double coherent_info_unchecked(LSParam p, const ComplexMatrix& rho) {
  return von_neumann_entropy(apply_closed(p, rho)) -
         von_neumann_entropy(complement_closed(p, rho));
}

/// ρ = A A† / Tr(A A†) for A with real and imaginary parts packed in `v`.
inline ComplexMatrix state_from_factor(const std::vector<double>& v) {
  ComplexMatrix a(3, 3);
  for (std::size_t i = 0; i < 9; ++i) a.data()[i] = Complex(v[i], v[i + 9]);
  ComplexMatrix rho = a * a.adjoint();
  const double tr = rho.trace().real();
  rho *= Complex(1.0 / tr);
  return (rho + rho.adjoint()) * Complex(0.5);
}

/// (cos a, sin a cos b e^{ip}, sin a sin b e^{iq})
inline ComplexVector pure_from_angles(const std::vector<double>& t) {
  return {Complex(std::cos(t[0]), 0.0),
          std::polar(std::sin(t[0]) * std::cos(t[1]), t[2]),
          std::polar(std::sin(t[0]) * std::sin(t[1]), t[3])};
}

}  // namespace detail

/// I_c = S(Λ_x(ρ)) − S(Λ_x^c(ρ)).
inline double coherent_info(LSParam p, const DensityMatrix& rho) {
  require_qutrit_operator(rho.matrix(), "coherent_info");
  return detail::coherent_info_unchecked(p, rho.matrix());
}

/// Coherent information on diag(s, 1 − 2s, s), s ∈ [0, 1/2].
inline double ic_ansatz(LSParam p, double s) {
  if (!(s >= 0.0 && s <= 0.5)) throw DomainError("ansatz parameter s out of [0, 1/2]");
  return detail::coherent_info_unchecked(
      p, ComplexMatrix::diagonal({Complex(s), Complex(1.0 - 2.0 * s), Complex(s)}));
}

struct MinOutputEntropy {
  double s_min = 0.0;
  ComplexVector psi;
};

/// Minimum output entropy over pure inputs, searched over four angles.
inline MinOutputEntropy min_output_entropy_numeric(LSParam p, int starts = 12,
                                                   std::uint64_t seed = 7) {
  auto objective = [p](const std::vector<double>& t) {
    const ComplexVector psi = detail::pure_from_angles(t);
    return von_neumann_entropy(apply_closed(p, projector(psi)));
  };
  NelderMeadOptions opts;
  opts.ftol = 1e-15;
  opts.max_evaluations = 20000;
  opts.initial_step = 0.4;

  MinOutputEntropy best{std::numeric_limits<double>::infinity(), {}};
  for (int s = 0; s < starts; ++s) {
    std::mt19937_64 gen(derive_seed(seed, static_cast<std::uint64_t>(s)));
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<double> start{angle(gen), angle(gen), angle(gen), angle(gen)};
    const NelderMeadResult r = nelder_mead_restarted(objective, start, opts, 6);
    if (std::isfinite(r.value) && r.value < best.s_min) {
      best.s_min = r.value;
      best.psi = detail::pure_from_angles(r.point);
    }
  }
  if (!std::isfinite(best.s_min)) throw OptimizerDiverged("no finite minimum found");
  best.s_min = std::max(0.0, best.s_min);
  return best;
}

struct OptimizerResult {
  double best_value = 0.0;
  ComplexMatrix best_state;
  int starts = 0;
  int converged_starts = 0;
};

inline constexpr int kDefaultStarts = 50;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// Multistart maximization of I_c over all qutrit states. Each start runs a
/// restarted simplex search over the 18 real entries of a factor A with
/// ρ = AA†/Tr(AA†); the three basis states, which certify I_c = 0, are always
/// included as candidates.
inline OptimizerResult q1_lower(LSParam p, int starts = kDefaultStarts,
                                std::uint64_t seed = kDefaultSeed) {
  if (starts < 1) throw DomainError("need at least one start");
  struct Slot {
    double value;
    ComplexMatrix state;
    bool converged;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(starts));
  auto objective = [p](const std::vector<double>& v) {
    return -detail::coherent_info_unchecked(p, detail::state_from_factor(v));
  };
  parallel_for(slots.size(), [&](std::size_t k) {
    std::mt19937_64 gen(derive_seed(seed, k));
    std::normal_distribution<double> normal;
    std::vector<double> start(18);
    for (auto& v : start) v = normal(gen);
    NelderMeadOptions opts;
    opts.ftol = 1e-10;
    opts.max_evaluations = 20000;
    opts.initial_step = 0.5;
    const NelderMeadResult r = nelder_mead_restarted(objective, start, opts, 3);
    slots[k] = {-r.value, detail::state_from_factor(r.point), r.converged};
  });

  OptimizerResult res;
  res.starts = starts;
  res.best_value = 0.0;
  res.best_state = ComplexMatrix::unit(3, 3, 0, 0);
  double best_basis = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < 3; ++k) {
    const ComplexMatrix basis = ComplexMatrix::unit(3, 3, k, k);
    const double v = detail::coherent_info_unchecked(p, basis);
    if (v > best_basis) {
      best_basis = v;
      res.best_state = basis;
    }
  }
  res.best_value = best_basis;
  for (const auto& s : slots) {
    if (s.converged) ++res.converged_starts;
    if (std::isfinite(s.value) && s.value > res.best_value) {
      res.best_value = s.value;
      res.best_state = s.state;
    }
  }
  // Report the value of the returned state exactly.
  res.best_value = detail::coherent_info_unchecked(p, res.best_state);
  return res;
}

/// Root of I_c(Λ_x, I/3) = 0 in (0, 1), bisected to 1e-9 in x. I_c(I/3)
/// also vanishes at x = 1, so the first sign change on a coarse grid is
/// bracketed first.
inline double ic_zero_crossing(double tol = 1e-9) {
  const ComplexMatrix mixed = ComplexMatrix::identity(3) * Complex(1.0 / 3.0);
  auto f = [&](double x) { return detail::coherent_info_unchecked(LSParam(x), mixed); };
  double lo = 0.0, hi = 0.0;
  bool found = false;
  for (int k = 1; k < 20; ++k) {
    hi = 0.05 * k;
    if (f(hi) < 0.0) {
      lo = hi - 0.05;
      found = true;
      break;
    }
  }
  if (!found) throw NoSignChange("I_c(I/3) stays non-negative on (0, 1)");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace qcl
