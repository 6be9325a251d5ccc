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

#include "qcl/channels.hpp"
#include "qcl/errors.hpp"
#include "qcl/ls_family.hpp"

namespace qcl {
namespace {

const ComplexMatrix kMixed = ComplexMatrix::identity(3) * Complex(1.0 / 3.0);

TEST(DensityMatrix, AcceptsValidStates) {
  EXPECT_NO_THROW(DensityMatrix::maximally_mixed(3));
  EXPECT_NO_THROW(DensityMatrix::basis(3, 2));
  const ComplexVector psi{Complex(1, 0), Complex(0, 1), Complex(1, 1)};
  EXPECT_NEAR(DensityMatrix::pure(psi).matrix().trace().real(), 1.0, 1e-15);
}

TEST(DensityMatrix, RejectsInvalidStates) {
  EXPECT_THROW(DensityMatrix(ComplexMatrix(2, 3)), InvalidState);
  EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(3)), InvalidState);
  EXPECT_THROW(DensityMatrix(ComplexMatrix::diagonal({1.5, -0.5})), InvalidState);
  ComplexMatrix m = ComplexMatrix::diagonal({0.5, 0.5});
  m(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{m}, InvalidState);
  EXPECT_THROW(DensityMatrix::pure(ComplexVector(3)), InvalidState);
}

TEST(KrausChannel, RejectsBrokenTracePreservation) {
  std::vector<ComplexMatrix> ks{ComplexMatrix::identity(3) * Complex(1.01)};
  try {
    KrausChannel ch(3, 3, ks, "scaled");
    FAIL() << "expected InvalidChannel";
  } catch (const InvalidChannel& e) {
    EXPECT_NE(std::string(e.what()).find("CPT invariant violated"), std::string::npos);
  }
  EXPECT_NO_THROW(KrausChannel::unchecked(3, 3, ks));
}

TEST(KrausChannel, RejectsWrongShapes) {
  EXPECT_THROW(KrausChannel(3, 3, {ComplexMatrix::identity(2)}), DimensionMismatch);
  EXPECT_THROW(KrausChannel(3, 3, {}), InvalidChannel);
}

TEST(Apply, IdentityChannelIsIdentity) {
  std::mt19937_64 gen(1);
  const ComplexMatrix rho = random_density(3, gen);
  EXPECT_LE((apply_channel(identity_channel(3), rho) - rho).max_abs(), 1e-15);
}

TEST(Apply, FullyNoisyChannelOnFirstBasisState) {
  const DensityMatrix out = apply_channel(kraus_for(LSParam(1.0)), DensityMatrix::basis(3, 0));
  EXPECT_LE((out.matrix() - ComplexMatrix::diagonal({0.0, 0.5, 0.5})).max_abs(), 1e-15);
}

TEST(Apply, MaximallyMixedIsFixedPoint) {
  for (int k = 0; k <= 10; ++k) {
    const double x = k / 10.0;
    EXPECT_LE((apply_channel(kraus_for(LSParam(x)), kMixed) - kMixed).max_abs(), 1e-15) << x;
  }
}

TEST(Apply, DimensionChecked) {
  EXPECT_THROW(apply_channel(identity_channel(3), ComplexMatrix::identity(2)), DimensionMismatch);
}

TEST(Choi, IdentityChannelIsUnnormalizedBellProjector) {
  const ChoiMatrix j = choi(identity_channel(3));
  for (std::size_t r = 0; r < 9; ++r)
    for (std::size_t c = 0; c < 9; ++c) {
      const double expected = (r % 4 == 0 && c % 4 == 0) ? 1.0 : 0.0;
      EXPECT_EQ(j.matrix(r, c), Complex(expected)) << r << "," << c;
    }
  const auto ev = hermitian_eigenvalues(j.matrix);
  EXPECT_NEAR(ev.back(), 3.0, 1e-13);
  EXPECT_NEAR(ev[7], 0.0, 1e-13);
}

TEST(Choi, FullyNoisyChannelHasNoBellOverlap) {
  const ChoiMatrix j = choi(kraus_for(LSParam(1.0)));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(std::abs(j.matrix(4 * i, 4 * k)), 0.0, 1e-15);
  EXPECT_NEAR(j.matrix(1, 1).real(), 0.5, 1e-15);
  EXPECT_NEAR(j.matrix(1, 3).real(), -0.5, 1e-15);
}

TEST(Choi, OutputPartialTraceIsInputIdentity) {
  for (double x : {0.0, 0.5, 1.0}) {
    const ChoiMatrix j = choi(kraus_for(LSParam(x)));
    EXPECT_LE((partial_trace(j.matrix, 3, 3, Subsystem::A) - ComplexMatrix::identity(3)).max_abs(),
              1e-15);
  }
}

TEST(Choi, KronConstructionMatchesDirectApplication) {
  const KrausChannel ch = kraus_for(LSParam(0.37));
  const ChoiMatrix j = choi(ch);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      const ComplexMatrix e = ComplexMatrix::unit(3, 3, a, b);
      EXPECT_LE((apply_via_choi(j, e) - apply_channel(ch, e)).max_abs(), 1e-15);
    }
}

TEST(Choi, ContractionReproducesChannelOnRandomStates) {
  std::mt19937_64 gen(4);
  const KrausChannel ch = kraus_for(LSParam(0.8));
  const ChoiMatrix j = choi(ch);
  for (int i = 0; i < 20; ++i) {
    const ComplexMatrix rho = random_density(3, gen);
    EXPECT_LE((apply_via_choi(j, rho) - apply_channel(ch, rho)).max_abs(), 1e-14);
  }
}

TEST(Choi, PositiveSemidefiniteAcrossFamily) {
  for (int k = 0; k <= 20; ++k) {
    const auto ev = hermitian_eigenvalues(choi(kraus_for(LSParam(k / 20.0))).matrix);
    EXPECT_GE(ev.front(), -1e-12);
  }
}

TEST(Complement, FirstOperatorMatchesExplicitForm) {
  const double x = 0.3;
  const KrausChannel comp = complement(kraus_for(LSParam(x)));
  ASSERT_EQ(comp.kraus().size(), 3u);
  const Complex s(std::sqrt(1.0 - x)), t(0.0, std::sqrt(x / 2.0));
  const ComplexMatrix r1{{s, 0, 0}, {0, 0, 0}, {0, 0, t}, {0, -t, 0}};
  EXPECT_LE((comp.kraus()[0] - r1).max_abs(), 1e-15);
  for (std::size_t i = 0; i < 3; ++i) {
    const ComplexMatrix& r = comp.kraus()[i];
    EXPECT_EQ(r.rows(), 4u);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t j = 0; j < 3; ++j)
        EXPECT_LE(std::abs(r(a + 1, j) - std::sqrt(x / 2.0) * spin1_generators()[a](i, j)), 1e-15);
  }
  EXPECT_LE(comp.trace_preservation_defect(), 1e-14);
}

TEST(Complement, IdentityChannelTracesIntoEnvironment) {
  const KrausChannel comp = complement(identity_channel(3));
  ASSERT_EQ(comp.kraus().size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(comp.kraus()[i].rows(), 1u);
    EXPECT_EQ(comp.kraus()[i](0, i), Complex(1.0));
  }
  std::mt19937_64 gen(5);
  const ComplexMatrix rho = random_density(3, gen);
  const ComplexMatrix out = apply_channel(comp, rho);
  EXPECT_NEAR(out(0, 0).real(), 1.0, 1e-15);
}

TEST(Complement, DoubleComplementSharesNonzeroSpectrum) {
  for (double x : {0.2, 0.6, 0.9}) {
    const KrausChannel ch = kraus_for(LSParam(x));
    const KrausChannel cc = complement(complement(ch));
    auto a = hermitian_eigenvalues(apply_channel(ch, kMixed));
    auto b = hermitian_eigenvalues(apply_channel(cc, kMixed));
    std::vector<double> nz_a, nz_b;
    for (double v : a) if (v > 1e-12) nz_a.push_back(v);
    for (double v : b) if (v > 1e-12) nz_b.push_back(v);
    ASSERT_EQ(nz_a.size(), nz_b.size());
    for (std::size_t i = 0; i < nz_a.size(); ++i) EXPECT_NEAR(nz_a[i], nz_b[i], 1e-12);
  }
}

TEST(Complement, MarginalsOfPureInputShareSpectrum) {
  std::mt19937_64 gen(12);
  const KrausChannel ch = kraus_for(LSParam(0.45));
  const KrausChannel env = complement(ch);
  for (int i = 0; i < 10; ++i) {
    ComplexVector psi(3);
    std::normal_distribution<double> n;
    for (auto& z : psi) z = Complex(n(gen), n(gen));
    const DensityMatrix rho = DensityMatrix::pure(psi);
    EXPECT_NEAR(von_neumann_entropy(apply_channel(ch, rho.matrix())),
                von_neumann_entropy(apply_channel(env, rho.matrix())), 1e-10);
  }
}

TEST(TransferMatrix, IdentityChannelIsIdentity) {
  EXPECT_LE((transfer_matrix(identity_channel(3)) - ComplexMatrix::identity(9)).max_abs(), 0.0);
}

TEST(TransferMatrix, EigenvalueMultiplicitiesAtPointFour) {
  const auto ev = hermitian_eigenvalues(transfer_matrix(kraus_for(LSParam(0.4))));
  const std::vector<double> expected{0.4, 0.4, 0.4, 0.4, 0.4, 0.8, 0.8, 0.8, 1.0};
  for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(ev[i], expected[i], 1e-12);
}

TEST(TransferMatrix, DeterminantOnGrid) {
  for (int k = 0; k <= 10; ++k) {
    const double x = k / 10.0;
    const double expected = std::pow(1.0 - x / 2.0, 3) * std::pow(1.0 - 1.5 * x, 5);
    EXPECT_NEAR(determinant(transfer_matrix(kraus_for(LSParam(x)))).real(), expected, 1e-12) << x;
  }
}

TEST(TransferMatrix, ActsOnColumnStackedOperators) {
  std::mt19937_64 gen(21);
  const KrausChannel ch = kraus_for(LSParam(0.3));
  const ComplexMatrix t = transfer_matrix(ch);
  const ComplexMatrix m = random_hermitian(3, gen);
  ComplexVector v(9);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l) v[k + 3 * l] = m(k, l);
  const ComplexVector w = t * v;
  const ComplexMatrix out = apply_channel(ch, m);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) EXPECT_LE(std::abs(w[a + 3 * b] - out(a, b)), 1e-14);
}

TEST(HermitianBasis, OrthogonalAndComplete) {
  const auto basis = hermitian_basis(3);
  ASSERT_EQ(basis.size(), 9u);
  for (std::size_t a = 0; a < 9; ++a) {
    EXPECT_LE(hermiticity_defect(basis[a]), 0.0);
    for (std::size_t b = 0; b < 9; ++b)
      if (a != b) {
        EXPECT_EQ(inner(basis[a], basis[b]), Complex(0.0));
      }
  }
}

TEST(Covariance, RotationsAcrossFamily) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  for (int k = 0; k <= 10; ++k) {
    const KrausChannel ch = kraus_for(LSParam(k / 10.0));
    for (int i = 0; i < 10; ++i) {
      const ComplexMatrix o = sample_so3(ang(gen), ang(gen), ang(gen));
      EXPECT_LE(covariance_defect(ch, o, o), 1e-10);
    }
  }
}

TEST(Covariance, FullyNoisyChannelIsConjugateCovariantUnderSu3) {
  const KrausChannel ch = kraus_for(LSParam(1.0));
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ComplexMatrix u = sample_su3(s);
    EXPECT_LE(covariance_defect(ch, u, u.conj()), 1e-10);
  }
}

TEST(Covariance, IntermediateChannelBreaksSu3) {
  const ComplexMatrix u = sample_su3(7);
  EXPECT_GT(covariance_defect(kraus_for(LSParam(0.5)), u, u), 1e-3);
}

TEST(Covariance, NonUnitaryRejected) {
  const ComplexMatrix bad = ComplexMatrix::identity(3) * Complex(2.0);
  EXPECT_THROW(covariance_defect(kraus_for(LSParam(0.5)), bad, bad), NotUnitary);
}

TEST(Omega, SpinOneRotationsActByTransposedAdjoint) {
  std::mt19937_64 gen(6);
  std::normal_distribution<double> n;
  for (int k = 0; k <= 10; ++k) {
    const KrausChannel ch = kraus_for(LSParam(k / 10.0));
    for (int i = 0; i < 5; ++i) {
      const std::array<double, 3> axis{n(gen), n(gen), n(gen)};
      const double theta = 3.0 * n(gen);
      const RealMatrix r = adjoint_rotation(theta, axis);
      ComplexMatrix omega(4, 4);
      omega(0, 0) = 1.0;
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) omega(a + 1, b + 1) = r(b, a);
      const ComplexMatrix u = spin1_rotation(theta, axis);
      EXPECT_LE(omega_defect(ch, u, u, omega), 1e-10);
    }
  }
}

TEST(Omega, IdentityChannelScalarRepresentation) {
  const ComplexMatrix u = sample_su3(3);
  EXPECT_LE(omega_defect(identity_channel(3), u, u, ComplexMatrix::identity(1)), 1e-12);
}

TEST(Omega, TrivialOmegaFailsForQuarterTurn) {
  const ComplexMatrix u = spin1_rotation(1.5707963267948966, {0, 0, 1});
  EXPECT_GT(omega_defect(kraus_for(LSParam(0.5)), u, u, ComplexMatrix::identity(4)), 1e-3);
}

TEST(Omega, WrongSizeRejected) {
  EXPECT_THROW(omega_defect(kraus_for(LSParam(0.5)), ComplexMatrix::identity(3),
                            ComplexMatrix::identity(3), ComplexMatrix::identity(3)),
               DimensionMismatch);
}

}  // namespace
}  // namespace qcl
