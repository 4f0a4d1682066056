#pragma once

// Gell-Mann generators lambda_1..lambda_8 and their completions rho_{+-a},
// Hermitian matrices with integer entries that square to the identity:
//
//   rho_{+-a} = lambda_a +- E33   (a = 1, 2, 3)
//             = lambda_a +- E22   (a = 4, 5)
//             = lambda_a +- E11   (a = 6, 7)
//   rho_0     = diag(1, 1, -1)

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "invdec/expmap.hpp"

namespace invdec {

namespace detail {

inline void require_index(int a, int lo, int hi, const char* what) {
  if (a < lo || a > hi) {
    throw Error(ErrorCode::InvalidInput, std::string(what) + " index " + std::to_string(a) +
                                             " outside [" + std::to_string(lo) + ", " +
                                             std::to_string(hi) + "]");
  }
}

inline std::array<ComplexMat, 8> make_lambdas() {
  const Complex i(0.0, 1.0);
  const double r3 = 1.0 / std::sqrt(3.0);
  return {{
      {{0, 1, 0}, {1, 0, 0}, {0, 0, 0}},
      {{0, -i, 0}, {i, 0, 0}, {0, 0, 0}},
      {{1, 0, 0}, {0, -1, 0}, {0, 0, 0}},
      {{0, 0, 1}, {0, 0, 0}, {1, 0, 0}},
      {{0, 0, -i}, {0, 0, 0}, {i, 0, 0}},
      {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}},
      {{0, 0, 0}, {0, 0, -i}, {0, i, 0}},
      {{r3, 0, 0}, {0, r3, 0}, {0, 0, -2.0 * r3}},
  }};
}

/// Diagonal slot completing lambda_a (a = 1..7) to an involution.
inline int completion_slot(int a) {
  if (a <= 3) return 2;
  if (a <= 5) return 1;
  return 0;
}

}  // namespace detail

class GellMannBasis {
 public:
  static const GellMannBasis& instance() {
    static const GellMannBasis basis;
    return basis;
  }

  /// lambda_a for a in 1..8.
  const ComplexMat& lambda(int a) const {
    detail::require_index(a, 1, 8, "Gell-Mann");
    return lambdas_[a - 1];
  }

  /// rho_a for a in -7..7.
  const ComplexMat& rho(int a) const {
    detail::require_index(a, -7, 7, "rho");
    return rhos_[a + 7];
  }

 private:
  GellMannBasis() : lambdas_(detail::make_lambdas()) {
    rhos_[7] = ComplexMat::diagonal({1.0, 1.0, -1.0});
    for (int a = 1; a <= 7; ++a) {
      const int s = detail::completion_slot(a);
      ComplexMat plus = lambdas_[a - 1];
      ComplexMat minus = lambdas_[a - 1];
      plus(s, s) += 1.0;
      minus(s, s) -= 1.0;
      rhos_[7 + a] = plus;
      rhos_[7 - a] = minus;
    }
  }

  std::array<ComplexMat, 8> lambdas_;
  std::array<ComplexMat, 15> rhos_;
};

inline const ComplexMat& gellmann(int a) { return GellMannBasis::instance().lambda(a); }
inline const ComplexMat& rho(int a) { return GellMannBasis::instance().rho(a); }

/// lambda_a rebuilt from the rho matrices.
inline ComplexMat reconstruct_lambda(int a) {
  detail::require_index(a, 1, 8, "Gell-Mann");
  if (a <= 7) return 0.5 * rho(a) + 0.5 * rho(-a);
  const double h = 1.0 / (2.0 * std::sqrt(3.0));
  return h * rho(-3) - h * rho(3) + (2.0 * h) * rho(0);
}

/// exp(i theta lambda_8) = diag(e^{i theta/sqrt3}, e^{i theta/sqrt3}, e^{-2i theta/sqrt3}).
inline GroupElement exp_gellmann8(double theta) {
  const double t = theta / std::sqrt(3.0);
  return GroupElement::make(
      ComplexMat::diagonal({std::polar(1.0, t), std::polar(1.0, t), std::polar(1.0, -2.0 * t)}));
}

/// exp(i theta lambda_a) = (1 - lambda_a^2) + lambda_a^2 cos(theta) + i lambda_a sin(theta)
/// for a in 1..7; a = 8 uses the diagonal form.
inline GroupElement exp_gellmann(int a, double theta) {
  detail::require_index(a, 1, 8, "Gell-Mann");
  if (a == 8) return exp_gellmann8(theta);
  const ComplexMat& l = gellmann(a);
  const ComplexMat l2 = l * l;
  ComplexMat u = (std::cos(theta) - 1.0) * l2;
  u.add_identity(1.0);
  u += Complex(0.0, std::sin(theta)) * l;
  return GroupElement::make(u);
}

/// 1 - lambda_a^2, the Hermitian part of exp(i theta lambda_a) at theta = pi/2.
inline ComplexMat equilibrium_point(int a) {
  detail::require_index(a, 1, 7, "Gell-Mann");
  const ComplexMat& l = gellmann(a);
  ComplexMat m = -(l * l);
  m.add_identity(1.0);
  return m;
}

}  // namespace invdec
