#pragma once

// Invariant decomposition of a diagonalizable matrix into commuting simple
// parts b_i (b_i^2 proportional to the identity), computed three ways:
//
//   decompose_via_eigen    3x3, from an eigendecomposition B = P D P^{-1}
//   decompose_nxn          n x n generalisation with the tr(B)/(n-2) shift
//   decompose_closed_form  3x3 su(3) only, no eigenvectors, one inverse per
//                          part; needs distinct nonzero lambdas
//
// With D = diag(alpha), every part is b_i = c_i P S_i P^{-1} where S_i is the
// sign pattern diag(-1, .., +1 (slot i), .., -1) and
// c_i = (alpha_i - tr(B)/(n-2)) / 2.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "invdec/eigen.hpp"
#include "invdec/smallmat.hpp"

namespace invdec {

/// A traceless skew-Hermitian 3x3 matrix (an element of su(3)).
class AlgebraElement {
 public:
  static AlgebraElement make(const ComplexMat& m, const Tolerances& tol = {}) {
    if (m.dim() != 3) {
      throw Error(ErrorCode::NotInAlgebra, "su(3) elements are 3x3");
    }
    const double scale = std::max(1.0, frobenius_norm(m));
    if (std::abs(trace(m)) > tol.alg_tol * scale) {
      throw Error(ErrorCode::NotInAlgebra, "matrix is not traceless");
    }
    if (frobenius_norm(m + adjoint(m)) > tol.alg_tol * scale) {
      throw Error(ErrorCode::NotInAlgebra, "matrix is not skew-Hermitian");
    }
    return AlgebraElement(m);
  }

  const ComplexMat& mat() const noexcept { return mat_; }

 private:
  explicit AlgebraElement(const ComplexMat& m) : mat_(m) {}
  ComplexMat mat_;
};

/// One commuting component b_i. `square` is the scalar with
/// mat * mat = square * 1; for parts of a skew-Hermitian source it is the
/// real, nonpositive lambda_i and `beta` = sqrt(-lambda_i). `unit` is
/// b_i / beta_i, present only for such real-square parts with a nonzero beta.
struct SimplePart {
  ComplexMat mat;
  Complex square = 0.0;
  double lambda = 0.0;
  double beta = 0.0;
  std::optional<ComplexMat> unit;

  bool is_zero() const noexcept { return !unit && std::abs(square) == 0.0; }
};

/// Builds a part from its matrix and known square.
inline SimplePart make_simple_part(const ComplexMat& mat, Complex square,
                                   const Tolerances& tol = {}) {
  SimplePart part;
  part.mat = mat;
  part.square = square;
  const bool real_square =
      std::abs(square.imag()) <= tol.simple_tol * std::max(1.0, std::abs(square));
  part.lambda = square.real();
  part.beta = real_square ? std::sqrt(std::max(0.0, -square.real())) : 0.0;
  if (real_square && part.beta >= tol.beta_zero_tol) {
    part.unit = mat * (1.0 / part.beta);
  }
  return part;
}

/// Builds a part from a simple matrix alone, using lambda = tr(b^2) / n.
inline SimplePart make_simple_part(const ComplexMat& mat, const Tolerances& tol = {}) {
  return make_simple_part(mat, trace(mat * mat) / static_cast<double>(mat.dim()), tol);
}

struct InvariantDecomposition {
  std::array<SimplePart, 3> parts;
  ComplexMat source;
};

/// Diagnostics for the three defining properties of a decomposition.
struct DecompositionResiduals {
  double sum_error = 0.0;         // |sum b_i - B|_F / max(1, |B|_F)
  double max_commutator = 0.0;    // max |[b_i, b_j]|_F / max(1, |b_i|_F |b_j|_F)
  double max_square_error = 0.0;  // max |b_i^2 - square_i 1|_F
};

inline DecompositionResiduals residuals(std::span<const SimplePart> parts,
                                        const ComplexMat& source) {
  DecompositionResiduals r;
  ComplexMat sum(source.dim());
  for (const SimplePart& p : parts) sum += p.mat;
  r.sum_error = frobenius_norm(sum - source) / std::max(1.0, frobenius_norm(source));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    ComplexMat sq = parts[i].mat * parts[i].mat;
    sq.add_identity(-parts[i].square);
    r.max_square_error = std::max(r.max_square_error, frobenius_norm(sq));
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      const double scale = std::max(
          1.0, frobenius_norm(parts[i].mat) * frobenius_norm(parts[j].mat));
      r.max_commutator = std::max(
          r.max_commutator,
          frobenius_norm(commutator(parts[i].mat, parts[j].mat)) / scale);
    }
  }
  return r;
}

inline DecompositionResiduals residuals(const InvariantDecomposition& d) {
  return residuals(d.parts, d.source);
}

inline bool is_normal(const ComplexMat& a, const Tolerances& tol = {}) {
  const ComplexMat ah = adjoint(a);
  const double n = frobenius_norm(a);
  return frobenius_norm(a * ah - ah * a) <= tol.normal_tol * n * n;
}

namespace detail {

/// Parts c_i (2 p_i q_i^T - 1) for columns p_i of P and rows q_i of P^{-1}.
/// With `skew`, P is unitary and the source skew-Hermitian, so each c_i is
/// snapped onto the imaginary axis and the parts come out exactly
/// skew-Hermitian.
inline std::vector<SimplePart> parts_from_eigensystem(const EigenSystem& es,
                                                      Complex trace_term,
                                                      bool skew,
                                                      const Tolerances& tol) {
  const int n = es.vectors.dim();
  std::vector<SimplePart> parts;
  parts.reserve(n);
  for (int k = 0; k < n; ++k) {
    Complex c = 0.5 * (es.values[k] - trace_term);
    if (skew) c = Complex(0.0, c.imag());
    ComplexMat m(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Complex q = skew ? std::conj(es.vectors(j, k)) : es.inverse_vectors(k, j);
        m(i, j) = 2.0 * es.vectors(i, k) * q;
      }
    }
    m.add_identity(-1.0);
    m *= c;
    parts.push_back(make_simple_part(m, c * c, tol));
  }
  return parts;
}

inline EigenSystem eigen_for_decomposition(const ComplexMat& b, const Tolerances& tol) {
  if (b.dim() == 3 && is_normal(b, tol)) return eigen_normal3(b, tol);
  return eigen_general(b, tol);
}

}  // namespace detail

/// Invariant decomposition of a diagonalizable 3x3 matrix through its
/// eigendecomposition (normal solver for normal inputs, general otherwise).
inline InvariantDecomposition decompose_via_eigen(const ComplexMat& b,
                                                  const Tolerances& tol = {}) {
  if (b.dim() != 3) {
    throw Error(ErrorCode::DimensionMismatch, "decompose_via_eigen needs 3x3 input");
  }
  const EigenSystem es = detail::eigen_for_decomposition(b, tol);
  const bool skew = is_skew_hermitian(b, tol.alg_tol) && is_normal(b, tol);
  const std::vector<SimplePart> parts =
      detail::parts_from_eigensystem(es, trace(b), skew, tol);
  InvariantDecomposition d;
  d.source = b;
  std::copy(parts.begin(), parts.end(), d.parts.begin());
  return d;
}

inline InvariantDecomposition decompose_via_eigen(const AlgebraElement& b,
                                                  const Tolerances& tol = {}) {
  return decompose_via_eigen(b.mat(), tol);
}

/// n-dimensional decomposition into n commuting parts (3 <= n <= 8). For
/// n = 3 this is the same computation as decompose_via_eigen.
inline std::vector<SimplePart> decompose_nxn(const ComplexMat& b,
                                             const Tolerances& tol = {}) {
  const int n = b.dim();
  if (n < 3) {
    throw Error(ErrorCode::DimensionMismatch, "decompose_nxn needs n >= 3");
  }
  if (n == 3) {
    const InvariantDecomposition d = decompose_via_eigen(b, tol);
    return {d.parts.begin(), d.parts.end()};
  }
  const EigenSystem es = eigen_general(b, tol);
  return detail::parts_from_eigensystem(es, trace(b) / static_cast<double>(n - 2),
                                        false, tol);
}

/// The three lambda_i of B in su(3) as roots of the cubic
///   -l^3 + s l^2 - (s^2/4) l + (det B / 8)^2 = 0,   s = tr(B^2)/4,
/// sorted descending. All roots are real and nonpositive; the trigonometric
/// solution is polished by Newton steps and clamped to <= 0.
inline std::array<double, 3> lambda_roots(const AlgebraElement& b) {
  const ComplexMat& m = b.mat();
  const double s = 0.25 * trace(m * m).real();
  const Complex d8 = det(m) / 8.0;
  const double e3 = (d8 * d8).real();
  std::array<double, 3> roots{0.0, 0.0, 0.0};
  if (s == 0.0) return roots;

  // lambda = t + s/3 with t^3 + P t + Q = 0, P = -s^2/12, Q = s^3/108 - e3.
  const double arg = std::clamp(1.0 - 108.0 * e3 / (s * s * s), -1.0, 1.0);
  const double amp = std::abs(s) / 3.0;
  const double phi = std::acos(arg) / 3.0;
  for (int k = 0; k < 3; ++k) {
    double l = amp * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + s / 3.0;
    for (int it = 0; it < 2; ++it) {
      const double f = ((l - s) * l + 0.25 * s * s) * l - e3;
      const double df = (3.0 * l - 2.0 * s) * l + 0.25 * s * s;
      if (std::abs(df) <= 1e-14 * s * s) break;
      l -= f / df;
    }
    roots[k] = std::min(l, 0.0);
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

/// Smallest relative separation among the lambdas and from zero:
/// min(|l_i - l_j|, |l_i|) / max |l|. Zero when all lambdas vanish.
inline double lambda_separation(std::span<const double, 3> lambdas) {
  double scale = 0.0;
  for (double l : lambdas) scale = std::max(scale, std::abs(l));
  if (scale == 0.0) return 0.0;
  double sep = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    sep = std::min(sep, std::abs(lambdas[i]));
    for (int j = i + 1; j < 3; ++j) sep = std::min(sep, std::abs(lambdas[i] - lambdas[j]));
  }
  return sep / scale;
}

/// Eigenvector-free decomposition of B in su(3):
///   b_i = [B + det(B)/(8 l_i) 1] [1 + (B^2 - tr(B^2)/4 1)/(2 l_i)]^{-1}
/// Parts are returned in the order of `lambdas` and symmetrised onto the
/// skew-Hermitian matrices. Throws DegenerateLambdas when two lambdas
/// coincide or one vanishes (relative to lambda_sep_tol).
inline InvariantDecomposition decompose_closed_form(const AlgebraElement& b,
                                                    std::span<const double, 3> lambdas,
                                                    const Tolerances& tol = {}) {
  if (lambda_separation(lambdas) <= tol.lambda_sep_tol) {
    throw Error(ErrorCode::DegenerateLambdas,
                "closed form needs distinct nonzero lambdas");
  }
  const ComplexMat& m = b.mat();
  const ComplexMat m2 = m * m;
  const Complex quarter_tr = 0.25 * trace(m2);
  const Complex d = det(m);

  InvariantDecomposition out;
  out.source = m;
  for (int i = 0; i < 3; ++i) {
    const double l = lambdas[i];
    ComplexMat left = m;
    left.add_identity(d / (8.0 * l));
    ComplexMat right = m2;
    right.add_identity(-quarter_tr);
    right *= 1.0 / (2.0 * l);
    right.add_identity(1.0);
    const ComplexMat part = skew_part(left * inverse(right, tol));
    out.parts[i] = make_simple_part(part, Complex(l, 0.0), tol);
  }
  return out;
}

inline InvariantDecomposition decompose_closed_form(const AlgebraElement& b,
                                                    const Tolerances& tol = {}) {
  const std::array<double, 3> l = lambda_roots(b);
  return decompose_closed_form(b, std::span<const double, 3>(l), tol);
}

/// Greedy nearest-lambda matching: result[i] is the index in `to` paired
/// with from[i]. Pairs are fixed in order of increasing distance.
inline std::array<int, 3> match_by_lambda(const std::array<SimplePart, 3>& from,
                                          const std::array<SimplePart, 3>& to) {
  std::array<int, 3> match{-1, -1, -1};
  std::array<bool, 3> used{false, false, false};
  for (int round = 0; round < 3; ++round) {
    double best = std::numeric_limits<double>::infinity();
    int bi = -1, bj = -1;
    for (int i = 0; i < 3; ++i) {
      if (match[i] >= 0) continue;
      for (int j = 0; j < 3; ++j) {
        if (used[j]) continue;
        const double dist = std::abs(from[i].square - to[j].square);
        if (dist < best) {
          best = dist;
          bi = i;
          bj = j;
        }
      }
    }
    match[bi] = bj;
    used[bj] = true;
  }
  return match;
}

}  // namespace invdec
