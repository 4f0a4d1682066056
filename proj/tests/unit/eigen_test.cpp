#include <gtest/gtest.h>

#include "invdec/eigen.hpp"
#include "invdec/gellmann.hpp"
#include "invdec/oracle.hpp"

using namespace invdec;

namespace {

const Complex I(0.0, 1.0);

void expect_values(const EigenSystem& es, std::initializer_list<Complex> expected, double tol) {
  ASSERT_EQ(es.values.size(), expected.size());
  std::size_t k = 0;
  for (Complex v : expected) {
    EXPECT_LE(std::abs(es.values[k] - v), tol) << "value " << k << " = " << es.values[k];
    ++k;
  }
}

double unitarity(const ComplexMat& p) {
  ComplexMat g = adjoint(p) * p;
  g.add_identity(-1.0);
  return frobenius_norm(g);
}

ComplexMat random_normal3(Rng& rng) {
  const ComplexMat v = random_unitary(rng, 3);
  ComplexMat d(3);
  for (int k = 0; k < 3; ++k) d(k, k) = rng.complex_normal();
  return v * d * adjoint(v);
}

}  // namespace

TEST(EigenNormal3, DiagonalInput) {
  const ComplexMat a = ComplexMat::diagonal({0.3 * I, -0.1 * I, -0.2 * I});
  const EigenSystem es = eigen_normal3(a);
  expect_values(es, {0.3 * I, -0.1 * I, -0.2 * I}, 1e-15);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(std::abs(es.vectors(k, k)), 1.0, 1e-15);
}

// Ordering is by imaginary part descending, so the zero eigenvalue of
// i lambda_1 sits between i and -i.
TEST(EigenNormal3, GellMannOne) {
  const EigenSystem es = eigen_normal3(I * gellmann(1));
  expect_values(es, {I, 0.0, -I}, 1e-15);
  EXPECT_LT(unitarity(es.vectors), 1e-14);
}

TEST(EigenNormal3, ZeroMatrix) {
  const EigenSystem es = eigen_normal3(ComplexMat(3));
  expect_values(es, {0.0, 0.0, 0.0}, 0.0);
  EXPECT_LT(frobenius_norm(es.vectors - ComplexMat::identity(3)), 1e-15);
}

TEST(EigenNormal3, RejectsNonNormal) {
  const ComplexMat a{{1.0, 1.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 2.0}};
  try {
    (void)eigen_normal3(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotNormal);
  }
}

TEST(EigenNormal3, RandomNormalReconstructionAndUnitarity) {
  Rng rng(RngSeed{11});
  const Tolerances tol;
  for (int k = 0; k < 500; ++k) {
    const ComplexMat a = random_normal3(rng);
    const EigenSystem es = eigen_normal3(a);
    EXPECT_LE(reconstruction_error(es, a), tol.eig_tol * frobenius_norm(a));
    EXPECT_LE(unitarity(es.vectors), tol.eig_tol);
  }
}

TEST(EigenNormal3, DegenerateSpectraStayUnitary) {
  Rng rng(RngSeed{12});
  for (int k = 0; k < 200; ++k) {
    const ComplexMat v = random_unitary(rng, 3);
    const Complex x = rng.complex_normal();
    const Complex gap = (k % 2 == 0) ? 0.0 : Complex(1e-9, 0.0);
    const ComplexMat a = v * ComplexMat::diagonal({x, x + gap, -2.0 * x}) * adjoint(v);
    const EigenSystem es = eigen_normal3(a);
    EXPECT_LE(reconstruction_error(es, a), 1e-10 * frobenius_norm(a));
    EXPECT_LE(unitarity(es.vectors), 1e-10);
  }
}

TEST(EigenNormal3, OrderingIgnoresInputBasis) {
  Rng rng(RngSeed{13});
  for (int k = 0; k < 100; ++k) {
    const ComplexMat a = random_normal3(rng);
    const ComplexMat v = random_unitary(rng, 3);
    const EigenSystem e1 = eigen_normal3(a);
    const EigenSystem e2 = eigen_normal3(v * a * adjoint(v));
    for (int i = 0; i < 3; ++i) EXPECT_LT(std::abs(e1.values[i] - e2.values[i]), 1e-10);
  }
}

TEST(EigenNormal3, LargestEntryOfEachColumnIsRealPositive) {
  Rng rng(RngSeed{14});
  for (int k = 0; k < 100; ++k) {
    const EigenSystem es = eigen_normal3(random_normal3(rng));
    for (int j = 0; j < 3; ++j) {
      double best = 0.0;
      for (int i = 0; i < 3; ++i) best = std::max(best, std::abs(es.vectors(i, j)));
      bool found = false;
      for (int i = 0; i < 3 && !found; ++i) {
        const Complex z = es.vectors(i, j);
        if (std::abs(z) >= best - 1e-8) {
          EXPECT_GT(z.real(), 0.0);
          EXPECT_NEAR(z.imag(), 0.0, 1e-15);
          found = true;
        }
      }
    }
  }
}

TEST(EigenGeneral, DiagonalOrdering) {
  const EigenSystem es = eigen_general(ComplexMat::diagonal({1.0, 2.0, 3.0, 4.0}));
  expect_values(es, {4.0, 3.0, 2.0, 1.0}, 1e-14);
}

TEST(EigenGeneral, IdentityFour) {
  const EigenSystem es = eigen_general(ComplexMat::identity(4));
  expect_values(es, {1.0, 1.0, 1.0, 1.0}, 1e-15);
  EXPECT_LT(unitarity(es.vectors), 1e-14);
}

// The near-Jordan block has eigenvector condition ~2e7, below
// diag_cond_max, but the reconstruction residual exceeds eig_tol, so the
// solver reports NotDiagonalizable at default tolerances.
TEST(EigenGeneral, NearJordanBlockIsRejected) {
  const ComplexMat a{{1.0, 1.0}, {0.0, 1.0000001}};
  try {
    (void)eigen_general(a);
    FAIL() << "near-Jordan block accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDiagonalizable);
  }
}

TEST(EigenGeneral, ExactJordanBlockIsRejected) {
  const ComplexMat a{{2.0, 1.0, 0.0}, {0.0, 2.0, 0.0}, {0.0, 0.0, 5.0}};
  EXPECT_THROW((void)eigen_general(a), Error);
}

TEST(EigenGeneral, RandomDiagonalizable) {
  Rng rng(RngSeed{15});
  const Tolerances tol;
  for (int n = 2; n <= 8; ++n) {
    for (int k = 0; k < 40; ++k) {
      const ComplexMat a = random_diagonalizable(rng, n);
      const EigenSystem es = eigen_general(a);
      EXPECT_LE(reconstruction_error(es, a), tol.eig_tol * std::max(1.0, frobenius_norm(a)));
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += std::norm(es.vectors(i, j));
        EXPECT_NEAR(s, 1.0, 1e-12);
      }
    }
  }
}

TEST(EigenGeneral, AgreesWithNormalSolverOnNormalInput) {
  Rng rng(RngSeed{16});
  for (int k = 0; k < 50; ++k) {
    const ComplexMat a = random_normal3(rng);
    const EigenSystem e1 = eigen_normal3(a);
    const EigenSystem e2 = eigen_general(a);
    for (int i = 0; i < 3; ++i) EXPECT_LT(std::abs(e1.values[i] - e2.values[i]), 1e-10);
  }
}
