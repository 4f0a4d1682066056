#pragma once

// Exponential of su(3) elements as a product of commuting Euler factors
//   exp(B) = prod_i [cos(beta_i) 1 + sin(beta_i) bhat_i]
// and the three-parameter family U(theta) = prod_i exp(theta_i b_i) that
// leaves every b_i (hence B) invariant under conjugation.

#include <array>
#include <cmath>
#include <span>

#include "invdec/decomposition.hpp"

namespace invdec {

struct GroupResiduals {
  double unitarity = 0.0;  // |U^dagger U - 1|_F
  double det_error = 0.0;  // |det U - 1|
};

inline GroupResiduals group_residuals(const ComplexMat& u) {
  ComplexMat g = adjoint(u) * u;
  g.add_identity(-1.0);
  return {frobenius_norm(g), std::abs(det(u) - 1.0)};
}

/// A special unitary 3x3 matrix.
class GroupElement {
 public:
  static GroupElement make(const ComplexMat& m, double tol) {
    if (m.dim() != 3) throw Error(ErrorCode::NotInGroup, "SU(3) elements are 3x3");
    const GroupResiduals r = group_residuals(m);
    if (!(r.unitarity <= tol)) {
      throw Error(ErrorCode::NotInGroup, "matrix is not unitary");
    }
    if (!(r.det_error <= tol)) {
      throw Error(ErrorCode::NotInGroup, "determinant is not 1");
    }
    return GroupElement(m);
  }

  static GroupElement make(const ComplexMat& m, const Tolerances& tol = {}) {
    return make(m, tol.grp_tol);
  }

  const ComplexMat& mat() const noexcept { return mat_; }

 private:
  explicit GroupElement(const ComplexMat& m) : mat_(m) {}
  ComplexMat mat_;
};

/// exp(b_i) for one simple part. Factors live in U(3): unitary, but their
/// determinant is a phase rather than 1.
struct EulerFactor {
  SimplePart part;
  ComplexMat mat;
};

inline EulerFactor exp_simple(const SimplePart& b) {
  const int n = b.mat.dim();
  ComplexMat m = ComplexMat::identity(n);
  if (b.unit) {
    m *= std::cos(b.beta);
    m += std::sin(b.beta) * *b.unit;
  } else if (std::abs(b.square.imag()) <= 1e-12 * std::max(1.0, std::abs(b.square)) &&
             b.square.real() <= 0.0) {
    // beta below beta_zero_tol: exp(b) = 1 + b + O(beta^2).
    m += b.mat;
  } else {
    // General simple matrix, b^2 = s 1: exp(b) = cosh(r) 1 + sinh(r)/r b, r^2 = s.
    const Complex r = std::sqrt(b.square);
    m *= std::cosh(r);
    m += (std::sinh(r) / r) * b.mat;
  }
  return {b, m};
}

/// exp(B) for B in su(3) through the invariant decomposition. Parts are
/// multiplied in order 1, 2, 3; zero parts are skipped.
inline GroupElement exp_su3(const AlgebraElement& b, const Tolerances& tol = {}) {
  const InvariantDecomposition d = decompose_via_eigen(b, tol);
  ComplexMat u = ComplexMat::identity(3);
  for (const SimplePart& p : d.parts) {
    if (p.is_zero()) continue;
    u = u * exp_simple(p).mat;
  }
  return GroupElement::make(u, tol);
}

/// The part theta * b as a simple part of its own.
inline SimplePart scaled_part(const SimplePart& b, double theta,
                              const Tolerances& tol = {}) {
  return make_simple_part(theta * b.mat, theta * theta * b.square, tol);
}

inline void require_commuting(std::span<const SimplePart> parts, const Tolerances& tol) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      const double scale = std::max(
          1.0, frobenius_norm(parts[i].mat) * frobenius_norm(parts[j].mat));
      if (frobenius_norm(commutator(parts[i].mat, parts[j].mat)) > tol.decomp_tol * scale) {
        throw Error(ErrorCode::NonCommutingParts,
                    "parts " + std::to_string(i + 1) + " and " +
                        std::to_string(j + 1) + " do not commute");
      }
    }
  }
}

/// U(theta_1, theta_2, theta_3) = exp(theta_1 b_1) exp(theta_2 b_2) exp(theta_3 b_3).
inline ComplexMat family_element(std::span<const SimplePart, 3> parts,
                                 std::span<const double, 3> thetas,
                                 const Tolerances& tol = {}) {
  require_commuting(parts, tol);
  ComplexMat u = ComplexMat::identity(parts[0].mat.dim());
  for (int i = 0; i < 3; ++i) {
    if (thetas[i] == 0.0 || parts[i].is_zero()) continue;
    u = u * exp_simple(scaled_part(parts[i], thetas[i], tol)).mat;
  }
  return u;
}

/// A(A_1, A_2, A_3) = sum_i A_i b_i, an element of the invariant subspace.
inline ComplexMat invariant_combination(std::span<const SimplePart, 3> parts,
                                        std::span<const double, 3> coeffs) {
  ComplexMat a(parts[0].mat.dim());
  for (int i = 0; i < 3; ++i) a += coeffs[i] * parts[i].mat;
  return a;
}

}  // namespace invdec
