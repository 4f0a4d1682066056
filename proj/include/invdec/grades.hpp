#pragma once

// Grade projections of a group element U = prod_i (ccos(b_i) + ssin(b_i)):
//
//   <U>_0 = ccos1 ccos2 ccos3           = (1 + tr ccos(U)) / 4 * 1
//   <U>_2 = sum ssin_i prod ccos_j      = ssin(U) - <U>_6
//   <U>_4 = sum ccos_i prod ssin_j      = ccos(U) - <U>_0
//   <U>_6 = ssin1 ssin2 ssin3           = tr ssin(U) / 4 * 1
//
// and the eight invariants H_i = ccos_i prod_{j!=i} ssin_j (Hermitian),
// S_i = ssin_i prod_{j!=i} ccos_j (skew-Hermitian).

#include <array>
#include <utility>

#include "invdec/eigen.hpp"
#include "invdec/expmap.hpp"

namespace invdec {

struct GradeDecomposition {
  ComplexMat g0, g2, g4, g6;
  ComplexMat ccos, ssin;
  std::array<ComplexMat, 3> H;
  std::array<ComplexMat, 3> S;
  /// Eigenvalues of U, index-aligned with H and S.
  std::array<Complex, 3> eigenvalues;
};

/// Hermitian and skew-Hermitian halves (U + U^dagger)/2, (U - U^dagger)/2.
inline std::pair<ComplexMat, ComplexMat> ccos_ssin(const ComplexMat& u) {
  const ComplexMat ud = adjoint(u);
  return {0.5 * (u + ud), 0.5 * (u - ud)};
}

inline std::pair<ComplexMat, ComplexMat> ccos_ssin(const GroupElement& u) {
  return ccos_ssin(u.mat());
}

inline ComplexMat grade0(const GroupElement& u) {
  return (0.25 * (1.0 + trace(ccos_ssin(u).first))) * ComplexMat::identity(3);
}

inline ComplexMat grade6(const GroupElement& u) {
  return (0.25 * trace(ccos_ssin(u).second)) * ComplexMat::identity(3);
}

inline ComplexMat grade2(const GroupElement& u) {
  return ccos_ssin(u).second - grade6(u);
}

inline ComplexMat grade4(const GroupElement& u) {
  return ccos_ssin(u).first - grade0(u);
}

/// M - tr(M)/3 * 1, the projection used in lattice QCD codes. Unlike
/// grade2 it also removes the pseudoscalar-free part of the trace.
inline ComplexMat traceless_projection(const ComplexMat& m) {
  ComplexMat r = m;
  r.add_identity(-trace(m) / static_cast<double>(m.dim()));
  return r;
}

/// All grades plus the H_i / S_i split. A = <U>_2 + <U>_4 differs from U by
/// a multiple of the identity, so it is decomposed in U's (unitary)
/// eigenbasis; the real part of each coefficient gives H_i and the
/// imaginary part S_i.
inline GradeDecomposition split_HS(const GroupElement& u, const Tolerances& tol = {}) {
  GradeDecomposition g;
  std::tie(g.ccos, g.ssin) = ccos_ssin(u);
  const ComplexMat id = ComplexMat::identity(3);
  g.g0 = (0.25 * (1.0 + trace(g.ccos))) * id;
  g.g6 = (0.25 * trace(g.ssin)) * id;
  g.g2 = g.ssin - g.g6;
  g.g4 = g.ccos - g.g0;

  const ComplexMat a = g.g2 + g.g4;
  const Complex tr_a = trace(a);
  const EigenSystem es = eigen_normal3(u.mat(), tol);
  for (int k = 0; k < 3; ++k) {
    const detail::Vec3 p = detail::column(es.vectors, k);
    const Complex alpha = detail::dot(p, detail::apply(a, p));
    g.eigenvalues[k] = es.values[k];
    ComplexMat pattern(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) pattern(i, j) = 2.0 * p[i] * std::conj(p[j]);
    pattern.add_identity(-1.0);
    g.H[k] = (0.5 * (alpha.real() - tr_a.real())) * pattern;
    g.S[k] = Complex(0.0, 0.5 * (alpha.imag() - tr_a.imag())) * pattern;
  }
  return g;
}

}  // namespace invdec
