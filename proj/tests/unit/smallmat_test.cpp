#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "invdec/gellmann.hpp"
#include "invdec/oracle.hpp"
#include "invdec/smallmat.hpp"

using namespace invdec;

namespace {

const Complex I(0.0, 1.0);

double dist(const ComplexMat& a, const ComplexMat& b) { return frobenius_norm(a - b); }

ComplexMat random_matrix(Rng& rng, int n) {
  ComplexMat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.complex_normal();
  return m;
}

}  // namespace

TEST(SmallMat, ConstructionRejectsBadShapes) {
  EXPECT_THROW(ComplexMat(1), Error);
  EXPECT_THROW(ComplexMat(9), Error);
  EXPECT_NO_THROW(ComplexMat(2));
  EXPECT_NO_THROW(ComplexMat(8));
  try {
    ComplexMat m{{1.0, 2.0}, {3.0}};
    FAIL() << "ragged rows accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(SmallMat, ConstructionRejectsNonFinite) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  try {
    ComplexMat m{{1.0, nan}, {0.0, 1.0}};
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
  }
  EXPECT_THROW(ComplexMat::diagonal({1.0, Complex(0.0, inf)}), Error);
}

TEST(SmallMat, MismatchedDimensionsThrow) {
  EXPECT_THROW(ComplexMat::identity(2) + ComplexMat::identity(3), Error);
  EXPECT_THROW(ComplexMat::identity(2) * ComplexMat::identity(3), Error);
}

TEST(SmallMat, ArithmeticExamples) {
  EXPECT_EQ(ComplexMat::identity(3) * ComplexMat::identity(3), ComplexMat::identity(3));
  EXPECT_EQ(gellmann(1) * gellmann(1), ComplexMat::diagonal({1.0, 1.0, 0.0}));
  EXPECT_EQ(0.5 * rho(1) + 0.5 * rho(-1), gellmann(1));
}

TEST(SmallMat, AdjointExamples) {
  EXPECT_EQ(adjoint(ComplexMat::identity(3)), ComplexMat::identity(3));
  EXPECT_EQ(adjoint(I * ComplexMat::identity(3)), -I * ComplexMat::identity(3));
  EXPECT_EQ(adjoint(rho(1)), rho(1));
}

TEST(SmallMat, AdjointIsAnInvolution) {
  Rng rng(RngSeed{1});
  for (int n = 2; n <= 8; ++n) {
    const ComplexMat a = random_matrix(rng, n);
    EXPECT_EQ(adjoint(adjoint(a)), a);
  }
}

TEST(SmallMat, TraceExamples) {
  EXPECT_EQ(trace(ComplexMat::identity(3)), Complex(3.0));
  EXPECT_NEAR(std::abs(trace(gellmann(8))), 0.0, 1e-15);
  EXPECT_EQ(trace(rho(0)), Complex(1.0));
}

TEST(SmallMat, DeterminantExamples) {
  EXPECT_EQ(det(ComplexMat::identity(3)), Complex(1.0));
  // 0.3i * (-0.1i) * (-0.2i) = -0.006i.
  const Complex d = det(ComplexMat::diagonal({0.3 * I, -0.1 * I, -0.2 * I}));
  EXPECT_NEAR(std::abs(d - Complex(0.0, -0.006)), 0.0, 1e-17);
  EXPECT_EQ(det(rho(1)), Complex(-1.0));
}

TEST(SmallMat, DeterminantLuPathMatchesProductOfDiagonal) {
  const ComplexMat d = ComplexMat::diagonal({2.0, -1.0, I, 0.5, 3.0});
  EXPECT_NEAR(std::abs(det(d) - Complex(0.0, -3.0)), 0.0, 1e-14);
  ComplexMat s(4);
  s(0, 1) = s(1, 0) = s(2, 2) = s(3, 3) = 1.0;  // one transposition
  EXPECT_NEAR(std::abs(det(s) + 1.0), 0.0, 1e-15);
}

TEST(SmallMat, DeterminantIsMultiplicative) {
  Rng rng(RngSeed{2});
  for (int k = 0; k < 200; ++k) {
    const ComplexMat a = random_matrix(rng, 3);
    const ComplexMat b = random_matrix(rng, 3);
    const Complex lhs = det(a * b);
    const Complex rhs = det(a) * det(b);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(SmallMat, InverseExamples) {
  EXPECT_EQ(inverse(ComplexMat::identity(3)), ComplexMat::identity(3));
  EXPECT_LT(dist(inverse(ComplexMat::diagonal({2.0, 4.0, 5.0})),
                 ComplexMat::diagonal({0.5, 0.25, 0.2})),
            1e-16);
  EXPECT_LT(dist(inverse(rho(1)), rho(1)), 1e-16);
}

TEST(SmallMat, InverseResidualOnRandomMatrices) {
  Rng rng(RngSeed{3});
  const Tolerances tol;
  for (int n = 2; n <= 8; ++n) {
    for (int k = 0; k < 50; ++k) {
      const ComplexMat a = random_matrix(rng, n);
      ComplexMat r = a * inverse(a);
      r.add_identity(-1.0);
      EXPECT_LE(frobenius_norm(r), tol.inv_tol);
    }
  }
}

TEST(SmallMat, InverseOfSingularMatrixThrowsSingular) {
  try {
    (void)inverse(ComplexMat::diagonal({1.0, 0.0, 1.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Singular);
  }
  try {
    (void)inverse(ComplexMat::diagonal({1.0, 1e-14, 1.0}));
    FAIL() << "condition estimate 1e14 accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Singular);
  }
}

TEST(SmallMat, FrobeniusNormExamples) {
  EXPECT_DOUBLE_EQ(frobenius_norm(ComplexMat::identity(3)), std::sqrt(3.0));
  EXPECT_EQ(frobenius_norm(ComplexMat(3)), 0.0);
  EXPECT_DOUBLE_EQ(frobenius_norm(gellmann(1)), std::sqrt(2.0));
}

TEST(SmallMat, HermitianAndSkewParts) {
  Rng rng(RngSeed{4});
  const ComplexMat a = random_matrix(rng, 4);
  EXPECT_TRUE(is_hermitian(hermitian_part(a), 1e-15));
  EXPECT_TRUE(is_skew_hermitian(skew_part(a), 1e-15));
  EXPECT_LT(dist(hermitian_part(a) + skew_part(a), a), 1e-15);
}
