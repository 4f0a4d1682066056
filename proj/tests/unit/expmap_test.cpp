#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "invdec/expmap.hpp"
#include "invdec/gellmann.hpp"
#include "invdec/oracle.hpp"

using namespace invdec;

namespace {

const Complex I(0.0, 1.0);
const double kPi = std::numbers::pi;
const Tolerances kTol;

double dist(const ComplexMat& a, const ComplexMat& b) { return frobenius_norm(a - b); }

SimplePart part_with(const ComplexMat& unit, double beta) {
  return make_simple_part(beta * unit, Complex(-beta * beta, 0.0), kTol);
}

}  // namespace

TEST(ExpSimple, ZeroPartGivesIdentity) {
  EXPECT_EQ(exp_simple(make_simple_part(ComplexMat(3), kTol)).mat, ComplexMat::identity(3));
}

TEST(ExpSimple, QuarterTurn) {
  const ComplexMat unit = I * ComplexMat::diagonal({1.0, -1.0, -1.0});
  const EulerFactor f = exp_simple(part_with(unit, kPi / 2.0));
  EXPECT_LT(dist(f.mat, unit), 1e-15);
}

TEST(ExpSimple, HalfTurnIsMinusIdentity) {
  const ComplexMat unit = I * ComplexMat::diagonal({1.0, -1.0, -1.0});
  const EulerFactor f = exp_simple(part_with(unit, kPi));
  EXPECT_LT(dist(f.mat, -ComplexMat::identity(3)), 1e-15);
}

TEST(ExpSimple, FactorsAreUnitaryButNotSpecial) {
  Rng rng(RngSeed{31});
  bool saw_nontrivial_det = false;
  for (int k = 0; k < 100; ++k) {
    for (const SimplePart& p : decompose_via_eigen(random_algebra(rng, 1.0)).parts) {
      const GroupResiduals r = group_residuals(exp_simple(p).mat);
      EXPECT_LE(r.unitarity, 1e-12);
      if (r.det_error > 1e-3) saw_nontrivial_det = true;
    }
  }
  EXPECT_TRUE(saw_nontrivial_det);
}

TEST(ExpSu3, Examples) {
  EXPECT_EQ(exp_su3(AlgebraElement::make(ComplexMat(3), kTol)).mat(), ComplexMat::identity(3));

  const ComplexMat b = (I * kPi / 2.0) * ComplexMat::diagonal({1.0, -1.0, 0.0});
  EXPECT_LT(dist(exp_su3(AlgebraElement::make(b, kTol)).mat(),
                 ComplexMat::diagonal({I, -I, 1.0})),
            1e-15);

  const ComplexMat l1 = (I * kPi) * gellmann(1);
  EXPECT_LT(dist(exp_su3(AlgebraElement::make(l1, kTol)).mat(),
                 ComplexMat::diagonal({-1.0, -1.0, 1.0})),
            1e-15);
}

TEST(ExpSu3, MatchesReferenceUpToNormFive) {
  Rng rng(RngSeed{32});
  for (int k = 0; k < 1000; ++k) {
    const double scale = 0.1 + 1.6 * rng.uniform();
    const AlgebraElement b = random_algebra(rng, scale);
    if (frobenius_norm(b.mat()) > 5.0) continue;
    const GroupElement u = exp_su3(b);
    EXPECT_LE(dist(u.mat(), exp_reference(b.mat())), 1e-10);
    const GroupResiduals r = group_residuals(u.mat());
    EXPECT_LE(r.unitarity, 1e-11);
    EXPECT_LE(r.det_error, 1e-11);
  }
}

TEST(ExpSu3, FactorOrderDoesNotMatter) {
  Rng rng(RngSeed{33});
  for (int k = 0; k < 100; ++k) {
    const InvariantDecomposition d = decompose_via_eigen(random_algebra(rng, 1.0));
    std::array<ComplexMat, 3> f;
    for (int i = 0; i < 3; ++i) f[i] = exp_simple(d.parts[i]).mat;
    const ComplexMat ref = f[0] * f[1] * f[2];
    std::array<int, 3> order{0, 1, 2};
    while (std::next_permutation(order.begin(), order.end())) {
      EXPECT_LE(dist(f[order[0]] * f[order[1]] * f[order[2]], ref), 1e-10);
    }
  }
}

TEST(FamilyElement, Examples) {
  Rng rng(RngSeed{34});
  const AlgebraElement b = random_algebra(rng, 1.0);
  const InvariantDecomposition d = decompose_via_eigen(b);
  const std::span<const SimplePart, 3> parts(d.parts);

  const std::array<double, 3> ones{1.0, 1.0, 1.0};
  EXPECT_LE(dist(family_element(parts, ones), exp_su3(b).mat()), 1e-14);

  const std::array<double, 3> zeros{0.0, 0.0, 0.0};
  EXPECT_EQ(family_element(parts, zeros), ComplexMat::identity(3));

  const std::array<double, 3> period{2.0 * kPi / d.parts[0].beta, 0.0, 0.0};
  EXPECT_LE(dist(family_element(parts, period), ComplexMat::identity(3)), 1e-13);
}

TEST(FamilyElement, ConjugationFixesEveryPartAndSource) {
  Rng rng(RngSeed{35});
  for (int k = 0; k < 200; ++k) {
    const AlgebraElement b = random_algebra(rng, 1.0);
    const InvariantDecomposition d = decompose_via_eigen(b);
    const std::array<double, 3> theta{4.0 * rng.normal(), 4.0 * rng.normal(),
                                      4.0 * rng.normal()};
    const ComplexMat u = family_element(std::span<const SimplePart, 3>(d.parts), theta);
    EXPECT_LE(group_residuals(u).unitarity, kTol.grp_tol);
    for (const SimplePart& p : d.parts) {
      EXPECT_LE(dist(u * p.mat * adjoint(u), p.mat), 1e-10);
    }
    EXPECT_LE(dist(u * b.mat() * adjoint(u), b.mat()), 1e-10);
  }
}

TEST(FamilyElement, NonCommutingPartsAreRejected) {
  std::array<SimplePart, 3> parts{
      make_simple_part(I * rho(1), kTol),
      make_simple_part(I * rho(2), kTol),
      make_simple_part(ComplexMat(3), kTol),
  };
  const std::array<double, 3> theta{1.0, 1.0, 1.0};
  try {
    (void)family_element(std::span<const SimplePart, 3>(parts), theta);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonCommutingParts);
  }
}

TEST(InvariantCombination, Examples) {
  Rng rng(RngSeed{36});
  const AlgebraElement b = random_algebra(rng, 1.0);
  const InvariantDecomposition d = decompose_via_eigen(b);
  const std::span<const SimplePart, 3> parts(d.parts);
  const std::array<double, 3> ones{1.0, 1.0, 1.0};
  const std::array<double, 3> zeros{0.0, 0.0, 0.0};
  const std::array<double, 3> first{1.0, 0.0, 0.0};
  EXPECT_LE(dist(invariant_combination(parts, ones), b.mat()), 1e-14);
  EXPECT_EQ(frobenius_norm(invariant_combination(parts, zeros)), 0.0);
  const ComplexMat b1 = invariant_combination(parts, first);
  EXPECT_LE(dist(b1, d.parts[0].mat), 0.0);
  EXPECT_GT(std::abs(trace(b1)), 1e-6);
}

TEST(GroupElement, Validation) {
  EXPECT_NO_THROW((void)GroupElement::make(ComplexMat::diagonal({I, -I, 1.0})));
  try {
    (void)GroupElement::make(ComplexMat::diagonal({I, I, 1.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInGroup);
  }
  EXPECT_THROW((void)GroupElement::make(2.0 * ComplexMat::identity(3)), Error);
}
