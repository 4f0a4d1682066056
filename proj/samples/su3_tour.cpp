// A walk through the library: split an su(3) element into commuting simple
// parts, exponentiate it, read off the grades, factor the result back into
// Euler factors and recover the principal logarithm.

#include <cstdio>

#include "invdec/invdec.hpp"

using namespace invdec;

static void print(const char* label, const ComplexMat& m) {
  std::printf("%s =\n", label);
  for (int i = 0; i < m.dim(); ++i) {
    std::printf("  ");
    for (int j = 0; j < m.dim(); ++j) {
      std::printf("(%+.6f %+.6fi) ", m(i, j).real(), m(i, j).imag());
    }
    std::printf("\n");
  }
}

int main() {
  Rng rng(RngSeed{2024});
  const AlgebraElement b = random_algebra(rng, 0.8);
  print("B", b.mat());

  const InvariantDecomposition d = decompose_via_eigen(b);
  for (int i = 0; i < 3; ++i) {
    std::printf("part %d: lambda = %+.6f, beta = %.6f\n", i + 1, d.parts[i].lambda,
                d.parts[i].beta);
  }
  const DecompositionResiduals r = residuals(d);
  std::printf("sum error %.2e, max commutator %.2e\n", r.sum_error, r.max_commutator);

  const GroupElement u = exp_su3(b);
  print("exp(B)", u.mat());
  std::printf("distance to Taylor reference: %.2e\n", compare(u.mat(), exp_reference(b.mat())));

  const GradeDecomposition g = split_HS(u);
  std::printf("<U>_0 = %+.6f, <U>_6 = %+.6fi\n", g.g0(0, 0).real(), g.g6(0, 0).imag());

  const Factorization f = factorize(u);
  std::printf("factorization route: %s\n", to_string(f.route));
  std::printf("|U1 U2 U3 - U| = %.2e\n",
              frobenius_norm(f.factors[0] * f.factors[1] * f.factors[2] - u.mat()));

  const ComplexMat log_u = principal_log(u);
  print("Ln U", log_u);
  std::printf("|Ln U - B| = %.2e\n", frobenius_norm(log_u - b.mat()));

  print("exp(i pi/2 lambda_1)", exp_gellmann(1, 1.5707963267948966).mat());
  return 0;
}
