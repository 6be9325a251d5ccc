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
#include <random>

#include "qcl/capacities.hpp"
#include "qcl/errors.hpp"
#include "qcl/optimize.hpp"

namespace qcl {
namespace {

const DensityMatrix kMixed = DensityMatrix::maximally_mixed(3);

double ic_mixed_formula(double x) {
  return kLog2Of3 - xlog2x_neg(1.0 - x) - 3.0 * xlog2x_neg(x / 3.0);
}

TEST(ChiStar, Endpoints) {
  EXPECT_NEAR(chi_star(LSParam(0.0)), kLog2Of3, 1e-12);
  EXPECT_NEAR(chi_star(LSParam(1.0)), kLog2Of3 - 1.0, 1e-12);
}

TEST(ChiStar, TwoThirds) { EXPECT_NEAR(chi_star(LSParam(2.0 / 3.0)), 2.0 / 3.0, 1e-12); }

TEST(ChiStar, MonotoneDecreasing) {
  for (int k = 1; k <= 100; ++k)
    EXPECT_LT(chi_star(LSParam(k / 100.0)), chi_star(LSParam((k - 1) / 100.0)));
}

TEST(CEa, ClosedFormValues) {
  EXPECT_NEAR(c_ea(LSParam(0.0)), 2.0 * kLog2Of3, 1e-12);
  EXPECT_NEAR(c_ea(LSParam(1.0)), kLog2Of3, 1e-12);
  EXPECT_NEAR(c_ea(LSParam(0.5)), 2.0 * kLog2Of3 + 0.5 * std::log2(1.0 / 6.0) + 0.5 * std::log2(0.5),
              1e-12);
  EXPECT_NEAR(c_ea(LSParam(0.5)), 1.377443751081734, 1e-12);
}

TEST(CEa, MinimumAtThreeQuarters) {
  // d/dx c_ea = log2(x / (3(1 − x))) vanishes at x = 3/4.
  const double at_min = c_ea(LSParam(0.75));
  EXPECT_NEAR(at_min, 2.0 * kLog2Of3 - 2.0, 1e-12);
  EXPECT_LT(at_min, c_ea(LSParam(0.74)));
  EXPECT_LT(at_min, c_ea(LSParam(0.76)));
  EXPECT_LT(at_min, c_ea(LSParam(1.0)));
}

TEST(CEa, NumericMatchesClosedForm) {
  EXPECT_NEAR(c_ea_numeric(LSParam(0.0)), 2.0 * kLog2Of3, 1e-12);
  EXPECT_NEAR(c_ea_numeric(LSParam(1.0)), kLog2Of3, 1e-12);
  for (int k = 0; k <= 100; ++k) {
    const LSParam p(k / 100.0);
    EXPECT_NEAR(c_ea_numeric(p), c_ea(p), 1e-9) << p.x();
  }
}

TEST(CoherentInfo, BasisStatesGiveZero) {
  for (double x : {0.0, 0.2, 0.7, 1.0})
    for (std::size_t i = 0; i < 3; ++i)
      EXPECT_NEAR(coherent_info(LSParam(x), DensityMatrix::basis(3, i)), 0.0, 1e-12);
}

TEST(CoherentInfo, MaximallyMixedFormula) {
  EXPECT_NEAR(coherent_info(LSParam(0.0), kMixed), kLog2Of3, 1e-12);
  for (int k = 0; k <= 20; ++k) {
    const LSParam p(k / 20.0);
    EXPECT_NEAR(coherent_info(p, kMixed), ic_mixed_formula(p.x()), 1e-12);
    EXPECT_NEAR(coherent_info(p, kMixed), c_ea(p) - kLog2Of3, 1e-12);
  }
}

TEST(CoherentInfo, RejectsWrongDimension) {
  EXPECT_THROW(coherent_info(LSParam(0.1), DensityMatrix::maximally_mixed(2)), DimensionMismatch);
}

TEST(IcAnsatz, ReducesToMaximallyMixed) {
  for (double x : {0.1, 0.3, 0.6})
    EXPECT_NEAR(ic_ansatz(LSParam(x), 1.0 / 3.0), coherent_info(LSParam(x), kMixed), 1e-12);
}

TEST(IcAnsatz, PureMiddleStateGivesZero) {
  EXPECT_NEAR(ic_ansatz(LSParam(0.4), 0.0), 0.0, 1e-12);
}

TEST(IcAnsatz, MaximumAtOneThirdForSmallNoise) {
  const LSParam p(0.2);
  double best = -1e9, best_s = -1.0;
  for (int k = 0; k <= 500; ++k) {
    const double s = k * 1e-3;
    const double v = ic_ansatz(p, s);
    if (v > best) {
      best = v;
      best_s = s;
    }
  }
  EXPECT_NEAR(best_s, 1.0 / 3.0, 1e-3);
}

TEST(IcAnsatz, DomainEnforced) {
  EXPECT_THROW(ic_ansatz(LSParam(0.2), 0.6), DomainError);
  EXPECT_THROW(ic_ansatz(LSParam(0.2), -0.1), DomainError);
}

TEST(MinOutputEntropy, IdentityChannelIsZero) {
  EXPECT_NEAR(min_output_entropy_numeric(LSParam(0.0)).s_min, 0.0, 1e-9);
}

TEST(MinOutputEntropy, HalfNoise) {
  const double expected = -0.25 * std::log2(0.25) - 0.75 * std::log2(0.75);
  EXPECT_NEAR(min_output_entropy_numeric(LSParam(0.5)).s_min, expected, 1e-6);
  EXPECT_NEAR(expected, 0.811278124459, 1e-11);
}

TEST(MinOutputEntropy, FullyNoisyIsOneBit) {
  const MinOutputEntropy m = min_output_entropy_numeric(LSParam(1.0));
  EXPECT_NEAR(m.s_min, 1.0, 1e-6);
  const auto ev = hermitian_eigenvalues(apply_closed(LSParam(1.0), projector(m.psi)));
  EXPECT_NEAR(ev[0], 0.0, 1e-4);
  EXPECT_NEAR(ev[1], 0.5, 1e-4);
  EXPECT_NEAR(ev[2], 0.5, 1e-4);
}

TEST(MinOutputEntropy, MatchesHolevoClosedFormOnGrid) {
  for (int k = 0; k <= 10; ++k) {
    const LSParam p(k / 10.0);
    EXPECT_NEAR(min_output_entropy_numeric(p).s_min, kLog2Of3 - chi_star(p), 1e-6) << p.x();
  }
}

TEST(Q1Lower, IdentityChannel) {
  EXPECT_NEAR(q1_lower(LSParam(0.0)).best_value, kLog2Of3, 1e-6);
}

TEST(Q1Lower, LowNoiseMaximizerIsMaximallyMixed) {
  const LSParam p(0.2);
  const OptimizerResult r = q1_lower(p);
  EXPECT_NEAR(r.best_value, coherent_info(p, kMixed), 1e-6);
  EXPECT_NEAR(r.best_value, c_ea(p) - kLog2Of3, 1e-6);
  EXPECT_LE((r.best_state - kMixed.matrix()).max_abs(), 1e-3);
  EXPECT_EQ(r.starts, kDefaultStarts);
  EXPECT_GT(r.converged_starts, 0);
}

TEST(Q1Lower, RandomStatesNeverBeatOptimizer) {
  const LSParam p(0.2);
  const double best = q1_lower(p).best_value;
  std::mt19937_64 gen(99);
  double sampled = -1e9;
  for (int i = 0; i < 100000; ++i)
    sampled = std::max(sampled, detail::coherent_info_unchecked(p, random_density(3, gen)));
  EXPECT_LE(sampled, best + 1e-9);
}

TEST(Q1Lower, ZeroAboveCrossing) {
  for (double x : {0.5, 0.6, 0.75, 1.0}) EXPECT_NEAR(q1_lower(LSParam(x)).best_value, 0.0, 1e-6) << x;
}

TEST(Q1Lower, DeterministicUnderSeed) {
  const OptimizerResult a = q1_lower(LSParam(0.35), 8, 123);
  const OptimizerResult b = q1_lower(LSParam(0.35), 8, 123);
  EXPECT_EQ(a.best_value, b.best_value);
}

TEST(Q1Lower, RejectsZeroStarts) { EXPECT_THROW(q1_lower(LSParam(0.3), 0), DomainError); }

TEST(IcZeroCrossing, BracketsSignChange) {
  const double r = ic_zero_crossing();
  EXPECT_GT(coherent_info(LSParam(r - 0.01), kMixed), 0.0);
  EXPECT_LT(coherent_info(LSParam(r + 0.01), kMixed), 0.0);
  EXPECT_NEAR(ic_mixed_formula(r), 0.0, 1e-8);
}

TEST(IcZeroCrossing, RootOfMaximallyMixedCoherentInformation) {
  // Root of log2 3 + (1−x) log2(1−x) + x log2(x/3).
  EXPECT_NEAR(ic_zero_crossing(), 0.3909102320761796, 1e-8);
}

TEST(Optimize, NelderMeadFindsQuadraticMinimum) {
  auto f = [](const std::vector<double>& v) {
    return (v[0] - 1.0) * (v[0] - 1.0) + 10.0 * (v[1] + 2.0) * (v[1] + 2.0);
  };
  const NelderMeadResult r = nelder_mead(f, {0.0, 0.0}, {1e-14, 5000, 0.5});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.point[0], 1.0, 1e-5);
  EXPECT_NEAR(r.point[1], -2.0, 1e-5);
}

TEST(Optimize, SeedDerivationIsStableAndDistinct) {
  EXPECT_EQ(derive_seed(42, 3), derive_seed(42, 3));
  EXPECT_NE(derive_seed(42, 3), derive_seed(42, 4));
  EXPECT_NE(derive_seed(42, 3), derive_seed(43, 3));
}

TEST(Optimize, ParallelForVisitsEveryIndexOnce) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(Optimize, ParallelForPropagatesExceptions) {
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw DomainError("boom");
               }),
               DomainError);
}

}  // namespace
}  // namespace qcl
