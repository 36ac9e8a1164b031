#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "qslkit/errors.hpp"
#include "qslkit/operator_algebra.hpp"
#include "test_support.hpp"

using namespace qslkit;
using qslkit::testing::make_rng;
using qslkit::testing::max_abs_diff;
using qslkit::testing::random_hermitian;
using qslkit::testing::random_observable;

namespace {

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

const Complex I(0.0, 1.0);

}  // namespace

// Oracle: Pauli matrices written out by hand.
TEST(PauliString, SingleQubitMatricesMatchHandWrittenOracle) {
  EXPECT_LT(max_abs_diff(PauliString::parse("X").matrix().matrix(), mat2(0, 1, 1, 0)), 1e-15);
  EXPECT_LT(max_abs_diff(PauliString::parse("Y").matrix().matrix(), mat2(0, -I, I, 0)), 1e-15);
  EXPECT_LT(max_abs_diff(PauliString::parse("Z").matrix().matrix(), mat2(1, 0, 0, -1)), 1e-15);
  EXPECT_LT(max_abs_diff(PauliString::parse("-Z").matrix().matrix(), mat2(-1, 0, 0, 1)), 1e-15);
}

TEST(PauliString, LeadingQubitIsMostSignificant) {
  // ZI = diag(1, 1, -1, -1), IZ = diag(1, -1, 1, -1)
  const CMatrix zi = PauliString::parse("ZI").matrix().matrix();
  const CMatrix iz = PauliString::parse("IZ").matrix().matrix();
  EXPECT_DOUBLE_EQ(zi(1, 1).real(), 1.0);
  EXPECT_DOUBLE_EQ(zi(2, 2).real(), -1.0);
  EXPECT_DOUBLE_EQ(iz(1, 1).real(), -1.0);
  EXPECT_DOUBLE_EQ(iz(2, 2).real(), 1.0);
}

TEST(PauliString, ParseRejectsBadInput) {
  EXPECT_THROW(PauliString::parse(""), ParseError);
  EXPECT_THROW(PauliString::parse("XQ"), ParseError);
  EXPECT_THROW(PauliString::parse("zz"), ParseError);
  EXPECT_THROW(PauliString::parse("XXXXX"), RangeError);
  EXPECT_NO_THROW(PauliString::parse("+XYZI"));
}

TEST(PauliString, RoundTripsThroughText) {
  for (const char* w : {"X", "-ZZ", "IXYZ", "YI"}) {
    EXPECT_EQ(PauliString::parse(PauliString::parse(w).to_string()).to_string(), PauliString::parse(w).to_string());
  }
  EXPECT_EQ(PauliString::parse("+XY").to_string(), "XY");
  EXPECT_EQ(PauliString::parse("-XY").to_string(), "-XY");
}

TEST(PauliString, IdentityDetection) {
  EXPECT_TRUE(PauliString::parse("II").is_identity());
  EXPECT_FALSE(PauliString::parse("IZ").is_identity());
  EXPECT_EQ(PauliString::parse("IZI").dim(), 8u);
}

TEST(HsNorm, FrozenValueForShiftedDiagonal) {
  // diag(1,2,3) - 2I = diag(-1,0,1), (1/3)(1+0+1) = 2/3
  RVector d(3);
  d << 1, 2, 3;
  const HermitianOperator h = HermitianOperator::diagonal(d).shifted(-2.0);
  EXPECT_NEAR(hs_norm(h), std::sqrt(2.0 / 3.0), 1e-15);
}

TEST(HsNorm, PauliStringsHaveUnitNorm) {
  for (int q = 1; q <= 3; ++q) {
    for (const auto& e : pauli_basis(q).elements) EXPECT_NEAR(hs_norm(e), 1.0, 1e-14);
  }
}

TEST(HermitianOperator, RejectsNonHermitianAndSymmetrizesNoise) {
  EXPECT_THROW(HermitianOperator(mat2(0, 1, 0, 0)), HermiticityError);
  const HermitianOperator h(mat2(1, Complex(0.5, 1e-14), Complex(0.5, 0), -1));
  EXPECT_EQ(h.matrix(), h.matrix().adjoint().eval());
  EXPECT_THROW(HermitianOperator(CMatrix::Zero(1, 1)), DimensionError);
  EXPECT_THROW(HermitianOperator(CMatrix::Zero(2, 3)), DimensionError);
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 0) = std::nan("");
  EXPECT_THROW(HermitianOperator{bad}, NumericalError);
}

TEST(UnitaryOperator, RejectsNonUnitary) {
  EXPECT_THROW(UnitaryOperator(mat2(1, 0, 0, 2)), UnitarityError);
  EXPECT_NO_THROW(UnitaryOperator(mat2(0, 1, 1, 0)));
  EXPECT_NO_THROW(UnitaryOperator(mat2(1, 0, 0, 1.0 + 1e-12)));
}

TEST(UnitaryOperator, ConjugateIsHeisenbergPicture) {
  // H^dagger Z H = X
  const double s = 1.0 / std::sqrt(2.0);
  const UnitaryOperator h(mat2(s, s, s, -s));
  const HermitianOperator z = PauliString::parse("Z").matrix();
  EXPECT_LT(max_abs_diff(h.conjugate(z).matrix(), PauliString::parse("X").matrix().matrix()), 1e-15);
}

TEST(Commutator, PauliAlgebra) {
  // i[X, Y] = i (2iZ) = -2Z
  const HermitianOperator c = commutator(PauliString::parse("X").matrix(), PauliString::parse("Y").matrix());
  EXPECT_LT(max_abs_diff(c.matrix(), (-2.0 * PauliString::parse("Z").matrix()).matrix()), 1e-15);
}

TEST(Commutator, WidthBoundOnRandomPairs) {
  auto rng = make_rng(11);
  for (std::size_t n : {2u, 4u, 8u}) {
    for (int trial = 0; trial < 200; ++trial) {
      const HermitianOperator h = random_hermitian(n, rng);
      const HermitianOperator o = random_hermitian(n, rng);
      EXPECT_LE(hs_norm(commutator(h, o)), spectral_width(h) * hs_norm(o) + 1e-9);
    }
  }
}

TEST(Commutator, WidthBoundIsAttainedOnExtremalPair) {
  // H = diag(w/2, -w/2) with O = X saturates ||i[H,O]|| = w ||O||
  RVector d(2);
  d << 0.7, -0.7;
  const HermitianOperator h = HermitianOperator::diagonal(d);
  EXPECT_NEAR(hs_norm(commutator(h, PauliString::parse("X").matrix())), 1.4, 1e-14);
}

TEST(CenterHamiltonian, FrozenExamples) {
  RVector d(3);
  d << 0, 1, 5;
  const HermitianOperator c = center_hamiltonian(HermitianOperator::diagonal(d));
  RVector e(3);
  e << -2.5, -1.5, 2.5;
  EXPECT_LT(max_abs_diff(c.matrix(), HermitianOperator::diagonal(e).matrix()), 1e-15);
  const HermitianOperator z = PauliString::parse("Z").matrix();
  EXPECT_LT(max_abs_diff(center_hamiltonian(z).matrix(), z.matrix()), 1e-15);
}

TEST(SpectralWidth, EpsilonZOnFirstQubit) {
  EXPECT_NEAR(spectral_width(PauliString::parse("ZII").matrix() * 0.3), 0.6, 1e-15);
  const HermitianOperator cnot = (PauliString::parse("ZI").matrix() + PauliString::parse("IX").matrix() - PauliString::parse("ZX").matrix()) * 0.5;
  EXPECT_NEAR(spectral_width(cnot), 2.0, 1e-14);
}

TEST(SpectralWidth, CenteringIsSymmetricShiftKeepingWidth) {
  auto rng = make_rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const HermitianOperator h = random_hermitian(5, rng);
    const HermitianOperator c = center_hamiltonian(h);
    EXPECT_NEAR(spectral_width(c), spectral_width(h), 1e-12);
    // differs from h by a multiple of the identity
    const CMatrix diff = c.matrix() - h.matrix();
    EXPECT_LT(max_abs_diff(diff, diff(0, 0) * CMatrix::Identity(5, 5)), 1e-12);
    const HermitianEigen e = hermitian_eigen(c);
    EXPECT_NEAR(e.values.maxCoeff() + e.values.minCoeff(), 0.0, 1e-12);
  }
}

TEST(HermitianEigen, ReconstructsAscending) {
  auto rng = make_rng(13);
  const HermitianOperator h = random_hermitian(6, rng);
  const HermitianEigen e = hermitian_eigen(h);
  for (Eigen::Index k = 1; k < e.values.size(); ++k) EXPECT_LE(e.values(k - 1), e.values(k));
  const CMatrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
  EXPECT_LT(max_abs_diff(back, h.matrix()), 1e-12);
}

TEST(PauliBasis, LexicographicLabelsAndOrthonormality) {
  const OperatorBasis b = pauli_basis(2);
  ASSERT_EQ(b.size(), 15u);
  EXPECT_EQ(b.label, "pauli-q2");
  EXPECT_EQ(b.element_labels.front(), "IX");
  EXPECT_EQ(b.element_labels[3], "XI");
  EXPECT_EQ(b.element_labels.back(), "ZZ");
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      EXPECT_NEAR(hs_inner(b.elements[i], b.elements[j]), i == j ? 1.0 : 0.0, 1e-14);
    }
  }
  EXPECT_EQ(pauli_basis(4).size(), 255u);
  EXPECT_THROW(pauli_basis(0), RangeError);
  EXPECT_THROW(pauli_basis(5), RangeError);
}

class GellMannBasis : public ::testing::TestWithParam<std::size_t> {};

TEST_P(GellMannBasis, OrthonormalTracelessAndComplete) {
  const std::size_t n = GetParam();
  const OperatorBasis b = gell_mann_basis(n);
  ASSERT_EQ(b.size(), n * n - 1);
  std::set<std::string> labels(b.element_labels.begin(), b.element_labels.end());
  EXPECT_EQ(labels.size(), b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    EXPECT_NEAR(std::abs(b.elements[i].trace()), 0.0, 1e-12);
    for (std::size_t j = i; j < b.size(); ++j) {
      EXPECT_NEAR(hs_inner(b.elements[i], b.elements[j]), i == j ? 1.0 : 0.0, 1e-12);
    }
  }
  auto rng = make_rng(14 + n);
  const HermitianOperator o = random_observable(n, rng);
  EXPECT_LT(max_abs_diff(reconstruct(coordinates(o, b), b).matrix(), o.matrix()), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Dims, GellMannBasis, ::testing::Values(2u, 3u, 5u, 6u));

TEST(DefaultBasis, PauliForQubitsGellMannOtherwise) {
  EXPECT_EQ(default_basis(8).label, "pauli-q3");
  EXPECT_NE(default_basis(3).label.find("gell"), std::string::npos);
}

TEST(Coordinates, RoundTripAndIsometry) {
  auto rng = make_rng(15);
  const OperatorBasis b = pauli_basis(3);
  for (int trial = 0; trial < 10; ++trial) {
    const HermitianOperator a = random_observable(8, rng);
    const HermitianOperator c = random_observable(8, rng);
    const CoordinateVector va = coordinates(a, b);
    const CoordinateVector vc = coordinates(c, b);
    EXPECT_EQ(va.basis_label, "pauli-q3");
    EXPECT_NEAR(va.coords.dot(vc.coords), hs_inner(a, c), 1e-12);
    EXPECT_LT(max_abs_diff(reconstruct(va, b).matrix(), a.matrix()), 1e-12);
  }
}

TEST(Coordinates, RejectTraceAndWrongLength) {
  EXPECT_THROW(coordinates(HermitianOperator::identity(4), pauli_basis(2)), TraceError);
  CoordinateVector v{RVector::Zero(3), "pauli-q2"};
  EXPECT_THROW(reconstruct(v, pauli_basis(2)), DimensionError);
}

TEST(PhaseInvariantFidelity, IgnoresGlobalPhase) {
  auto rng = make_rng(16);
  const UnitaryOperator u = qslkit::testing::random_unitary(4, rng);
  const CMatrix v = std::polar(1.0, 0.83) * u.matrix();
  EXPECT_NEAR(phase_invariant_fidelity(u.matrix(), v), 1.0, 1e-14);
  EXPECT_LT(phase_invariant_fidelity(u.matrix(), CMatrix::Identity(4, 4)), 0.999);
}

TEST(Kron, DimensionsAndQubitCount) {
  const CMatrix k = kron(PauliString::parse("Z").matrix().matrix(), PauliString::parse("X").matrix().matrix());
  EXPECT_LT(max_abs_diff(k, PauliString::parse("ZX").matrix().matrix()), 1e-15);
  EXPECT_EQ(qubit_count(8), 3);
  EXPECT_EQ(qubit_count(6), -1);
}
