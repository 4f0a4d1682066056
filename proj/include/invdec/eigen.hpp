#pragma once

// Eigen-solvers for the small matrices of smallmat.hpp.
//
// eigen_normal3 handles 3x3 normal matrices: the characteristic cubic of the
// trace-free part is solved with Cardano's formula, the eigenvector of the
// best-isolated root is taken from the rows of (A - mu)^T, and the remaining
// pair is resolved inside its orthogonal complement, so the returned P is
// unitary to rounding even for degenerate spectra.
//
// eigen_general handles any diagonalizable n x n (n <= 8): Hessenberg
// reduction plus shifted QR for the values, inverse iteration for the
// vectors, and a condition check on P.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "invdec/smallmat.hpp"

namespace invdec {

struct EigenSystem {
  std::vector<Complex> values;   // alpha_i, in canonical order
  ComplexMat vectors;            // P, unit-norm columns
  ComplexMat inverse_vectors;    // P^{-1}
};

/// Residual |P diag(values) P^{-1} - a|_F.
inline double reconstruction_error(const EigenSystem& es, const ComplexMat& a) {
  ComplexMat pd = es.vectors;
  for (int j = 0; j < pd.dim(); ++j)
    for (int i = 0; i < pd.dim(); ++i) pd(i, j) *= es.values[j];
  return frobenius_norm(pd * es.inverse_vectors - a);
}

namespace detail {

using Vec3 = std::array<Complex, 3>;

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

inline double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

/// <a, b> = a^dagger b.
inline Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/// Canonical eigenvalue order: imaginary part descending, then real part
/// descending, then modulus descending. Differences within `tie` count as
/// ties.
inline bool comes_before(Complex x, Complex y, double tie) {
  if (std::abs(x.imag() - y.imag()) > tie) return x.imag() > y.imag();
  if (std::abs(x.real() - y.real()) > tie) return x.real() > y.real();
  return std::abs(x) > std::abs(y) + tie;
}

/// Stable insertion sort of eigenpairs (the comparator is tolerance based,
/// so std::sort's strict-weak-ordering requirement does not hold).
inline void order_eigenpairs(std::vector<Complex>& values, ComplexMat& vectors,
                             double tie) {
  const int n = static_cast<int>(values.size());
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  for (int i = 1; i < n; ++i) {
    const int cur = idx[i];
    int j = i - 1;
    while (j >= 0 && comes_before(values[cur], values[idx[j]], tie)) {
      idx[j + 1] = idx[j];
      --j;
    }
    idx[j + 1] = cur;
  }
  std::vector<Complex> sorted(n);
  ComplexMat p(vectors.dim());
  for (int k = 0; k < n; ++k) {
    sorted[k] = values[idx[k]];
    for (int i = 0; i < p.dim(); ++i) p(i, k) = vectors(i, idx[k]);
  }
  values = std::move(sorted);
  vectors = p;
}

/// Scales column j so its largest-modulus entry is real positive. The first
/// entry within a relative 1e-8 of the maximum wins ties.
inline void fix_column_phase(ComplexMat& p, int j) {
  double best = 0.0;
  for (int i = 0; i < p.dim(); ++i) best = std::max(best, std::abs(p(i, j)));
  if (best == 0.0) return;
  for (int i = 0; i < p.dim(); ++i) {
    if (std::abs(p(i, j)) >= best * (1.0 - 1e-8)) {
      const Complex phase = std::conj(p(i, j)) / std::abs(p(i, j));
      for (int r = 0; r < p.dim(); ++r) p(r, j) *= phase;
      p(i, j) = std::abs(p(i, j));
      return;
    }
  }
}

/// Roots of z^3 + p z + q by Cardano's formula, each polished by two Newton
/// steps.
inline std::array<Complex, 3> depressed_cubic_roots(Complex p, Complex q) {
  const Complex omega(-0.5, std::sqrt(3.0) / 2.0);
  const Complex disc = 0.25 * q * q + p * p * p / 27.0;
  Complex s = std::sqrt(disc);
  Complex w = -0.5 * q + s;
  if (std::abs(-0.5 * q - s) > std::abs(w)) w = -0.5 * q - s;
  std::array<Complex, 3> roots{};
  if (std::abs(w) == 0.0) {
    // p == q == 0 up to rounding: triple root at zero.
    return roots;
  }
  const Complex u = std::pow(w, 1.0 / 3.0);
  const Complex v = -p / (3.0 * u);
  roots[0] = u + v;
  roots[1] = omega * u + std::conj(omega) * v;
  roots[2] = std::conj(omega) * u + omega * v;
  for (Complex& z : roots) {
    for (int it = 0; it < 2; ++it) {
      const Complex f = (z * z + p) * z + q;
      const Complex df = 3.0 * z * z + p;
      if (std::abs(df) == 0.0) break;
      const Complex step = f / df;
      if (!is_finite(step)) break;
      z -= step;
    }
  }
  return roots;
}

inline Vec3 column(const ComplexMat& m, int j) {
  return {m(0, j), m(1, j), m(2, j)};
}

inline Vec3 apply(const ComplexMat& m, const Vec3& v) {
  Vec3 r{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) r[i] += m(i, k) * v[k];
  return r;
}

inline void normalize(std::span<Complex> v) {
  const double n = norm(v);
  for (Complex& z : v) z /= n;
}

}  // namespace detail

/// Eigen-decomposition of a 3x3 normal matrix. P is unitary and
/// P^{-1} = P^dagger.
inline EigenSystem eigen_normal3(const ComplexMat& a, const Tolerances& tol = {}) {
  if (a.dim() != 3) {
    throw Error(ErrorCode::DimensionMismatch, "eigen_normal3 needs a 3x3 matrix");
  }
  const double anorm = frobenius_norm(a);
  const ComplexMat ah = adjoint(a);
  if (frobenius_norm(a * ah - ah * a) > tol.normal_tol * anorm * anorm) {
    throw Error(ErrorCode::NotNormal, "a a^dagger != a^dagger a");
  }

  const Complex shift = trace(a) / 3.0;
  ComplexMat s = a;
  s.add_identity(-shift);
  const double snorm = frobenius_norm(s);

  EigenSystem es;
  ComplexMat p = ComplexMat::identity(3);
  if (snorm > 0.0) {
    s *= 1.0 / snorm;
    const std::array<Complex, 3> mu =
        detail::depressed_cubic_roots(-0.5 * trace(s * s), -det(s));

    int iso = 0;
    double iso_gap = -1.0;
    for (int k = 0; k < 3; ++k) {
      const double gap = std::min(std::abs(mu[k] - mu[(k + 1) % 3]),
                                  std::abs(mu[k] - mu[(k + 2) % 3]));
      if (gap > iso_gap) {
        iso_gap = gap;
        iso = k;
      }
    }

    // Null vector of (s - mu I): the largest cross product of two rows.
    ComplexMat shifted = s;
    shifted.add_identity(-mu[iso]);
    detail::Vec3 rows[3];
    for (int i = 0; i < 3; ++i) rows[i] = {shifted(i, 0), shifted(i, 1), shifted(i, 2)};
    detail::Vec3 v1{};
    double best = -1.0;
    for (int i = 0; i < 3; ++i) {
      const detail::Vec3 c = detail::cross(rows[i], rows[(i + 1) % 3]);
      const double cn = detail::norm(c);
      if (cn > best) {
        best = cn;
        v1 = c;
      }
    }
    detail::normalize(v1);

    // Orthonormal basis {q1, q2} of the complement of v1.
    int m = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(v1[i]) < std::abs(v1[m])) m = i;
    detail::Vec3 q1{};
    q1[m] = 1.0;
    const Complex proj = std::conj(v1[m]);
    for (int i = 0; i < 3; ++i) q1[i] -= v1[i] * proj;
    detail::normalize(q1);
    detail::Vec3 q2 = detail::cross(v1, q1);
    for (Complex& z : q2) z = std::conj(z);

    // 2x2 compression and its eigenvector for the first of the two roots.
    const detail::Vec3 sq1 = detail::apply(s, q1);
    const detail::Vec3 sq2 = detail::apply(s, q2);
    const Complex m00 = detail::dot(q1, sq1), m01 = detail::dot(q1, sq2);
    const Complex m10 = detail::dot(q2, sq1), m11 = detail::dot(q2, sq2);
    const Complex d = 0.5 * (m00 - m11);
    Complex disc = std::sqrt(d * d + m01 * m10);
    if ((std::conj(d) * disc).real() < 0.0) disc = -disc;
    std::array<Complex, 2> x{d + disc, m10};
    if (detail::norm(x) <= 1e-14) x = {1.0, 0.0};
    detail::normalize(x);
    detail::Vec3 v2{};
    for (int i = 0; i < 3; ++i) v2[i] = q1[i] * x[0] + q2[i] * x[1];
    detail::normalize(v2);
    detail::Vec3 v3 = detail::cross(v1, v2);
    for (Complex& z : v3) z = std::conj(z);
    detail::normalize(v3);

    const detail::Vec3 cols[3] = {v1, v2, v3};
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) p(i, j) = cols[j][i];
  }

  es.values.resize(3);
  for (int j = 0; j < 3; ++j) {
    const detail::Vec3 v = detail::column(p, j);
    es.values[j] = detail::dot(v, detail::apply(a, v));
  }
  const double tie = tol.eig_tol * std::max(1.0, anorm);
  detail::order_eigenpairs(es.values, p, tie);
  for (int j = 0; j < 3; ++j) detail::fix_column_phase(p, j);
  es.vectors = p;
  es.inverse_vectors = adjoint(p);
  return es;
}

namespace detail {

/// Householder reduction to upper Hessenberg form (eigenvalues only).
inline ComplexMat hessenberg(ComplexMat h) {
  const int n = h.dim();
  for (int k = 0; k < n - 2; ++k) {
    std::array<Complex, kMaxDim> v{};
    double alpha_norm = 0.0;
    for (int i = k + 1; i < n; ++i) alpha_norm += std::norm(h(i, k));
    alpha_norm = std::sqrt(alpha_norm);
    if (alpha_norm == 0.0) continue;
    const Complex x0 = h(k + 1, k);
    const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    const Complex alpha = -phase * alpha_norm;
    for (int i = k + 1; i < n; ++i) v[i] = h(i, k);
    v[k + 1] -= alpha;
    double vn = 0.0;
    for (int i = k + 1; i < n; ++i) vn += std::norm(v[i]);
    if (vn == 0.0) continue;
    // H <- (I - 2 v v^dagger / |v|^2) H (I - 2 v v^dagger / |v|^2)
    for (int j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (int i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      s *= 2.0 / vn;
      for (int i = k + 1; i < n; ++i) h(i, j) -= v[i] * s;
    }
    for (int i = 0; i < n; ++i) {
      Complex s = 0.0;
      for (int j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      s *= 2.0 / vn;
      for (int j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
    }
    for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
  return h;
}

/// Eigenvalues of an upper Hessenberg matrix by single-shift complex QR with
/// deflation. The first sweep on each active window is unshifted; later
/// sweeps use the Wilkinson shift, with an exceptional shift every 10
/// iterations without progress.
inline std::vector<Complex> hessenberg_qr_eigenvalues(ComplexMat h) {
  const int n = h.dim();
  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<Complex> ev(n);
  int hi = n - 1;
  int iter = 0;
  const double hnorm = std::max(frobenius_norm(h), std::numeric_limits<double>::min());
  while (hi >= 0) {
    if (hi == 0) {
      ev[0] = h(0, 0);
      break;
    }
    int lo = hi;
    while (lo > 0) {
      const double scale = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (std::abs(h(lo, lo - 1)) <= eps * (scale > 0.0 ? scale : hnorm)) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      ev[hi] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > 300) {
      throw Error(ErrorCode::NotDiagonalizable, "QR iteration did not converge");
    }
    Complex sigma = 0.0;
    if (iter > 1) {
      const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
      const Complex c = h(hi, hi - 1), d = h(hi, hi);
      const Complex tr = a + d, dt = a * d - b * c;
      const Complex disc = std::sqrt(0.25 * tr * tr - dt);
      const Complex r1 = 0.5 * tr + disc, r2 = 0.5 * tr - disc;
      sigma = std::abs(r1 - d) < std::abs(r2 - d) ? r1 : r2;
      if (iter % 10 == 0) {
        sigma = h(hi, hi) + Complex(std::abs(h(hi, hi - 1)), 0.0) * 0.75;
      }
    }
    // One QR step on the window [lo, hi] via Givens rotations.
    for (int i = lo; i <= hi; ++i) h(i, i) -= sigma;
    std::array<Complex, kMaxDim> cs{}, sn{};
    for (int k = lo; k < hi; ++k) {
      const Complex x = h(k, k), y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      Complex c = 1.0, s = 0.0;
      if (r != 0.0) {
        c = x / r;
        s = y / r;
      }
      cs[k] = c;
      sn[k] = s;
      // Rows k, k+1 <- G^dagger-applied: [conj(c) conj(s); -s c]
      for (int j = k; j < n; ++j) {
        const Complex t1 = h(k, j), t2 = h(k + 1, j);
        h(k, j) = std::conj(c) * t1 + std::conj(s) * t2;
        h(k + 1, j) = -s * t1 + c * t2;
      }
    }
    for (int k = lo; k < hi; ++k) {
      const Complex c = cs[k], s = sn[k];
      // Columns k, k+1 <- multiplied by G = [c -conj(s); s conj(c)]
      for (int i = 0; i <= std::min(k + 2, hi); ++i) {
        const Complex t1 = h(i, k), t2 = h(i, k + 1);
        h(i, k) = t1 * c + t2 * s;
        h(i, k + 1) = -t1 * std::conj(s) + t2 * std::conj(c);
      }
    }
    for (int i = lo; i <= hi; ++i) h(i, i) += sigma;
  }
  return ev;
}

/// A few steps of inverse iteration for eigenvalue `mu` of `a`, keeping the
/// iterate orthogonal to `against` (the already computed members of the
/// same eigenvalue cluster).
inline std::vector<Complex> inverse_iteration(
    const ComplexMat& a, Complex mu, int seed,
    const std::vector<std::vector<Complex>>& against) {
  const int n = a.dim();
  const double anorm = std::max(frobenius_norm(a), std::numeric_limits<double>::min());
  const double floor = std::numeric_limits<double>::epsilon() * anorm;
  ComplexMat shifted = a;
  shifted.add_identity(-mu);
  // Partial-pivoting LU with pivots floored at eps |a|: mu is an eigenvalue,
  // so the shifted matrix is singular to working precision by construction.
  Lu f{shifted};
  for (int i = 0; i < n; ++i) f.perm[i] = i;
  ComplexMat& lu = f.lu;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      std::swap(f.perm[k], f.perm[p]);
    }
    if (std::abs(lu(k, k)) < floor) lu(k, k) = floor;
    for (int i = k + 1; i < n; ++i) {
      lu(i, k) /= lu(k, k);
      for (int j = k + 1; j < n; ++j) lu(i, j) -= lu(i, k) * lu(k, j);
    }
  }

  std::vector<Complex> x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = std::polar(1.0, 1.3 * (i + 1) + 0.7 * seed) * (1.0 + 0.1 * i);
  }
  auto orthogonalize = [&]() {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : against) {
        const Complex c = dot(q, x);
        for (int i = 0; i < n; ++i) x[i] -= c * q[i];
      }
    }
    normalize(x);
  };
  orthogonalize();
  for (int it = 0; it < 3; ++it) {
    lu_solve(f, x);
    for (const Complex& z : x) {
      if (!is_finite(z)) {
        throw Error(ErrorCode::NotDiagonalizable, "inverse iteration overflow");
      }
    }
    orthogonalize();
  }
  return x;
}

}  // namespace detail

/// Eigen-decomposition of a diagonalizable n x n matrix (2 <= n <= 8).
inline EigenSystem eigen_general(const ComplexMat& a, const Tolerances& tol = {}) {
  const int n = a.dim();
  const double anorm = frobenius_norm(a);
  EigenSystem es;
  es.values = detail::hessenberg_qr_eigenvalues(detail::hessenberg(a));

  ComplexMat p(n);
  for (int j = 0; j < n; ++j) p(j, j) = 1.0;
  const double tie = tol.eig_tol * std::max(1.0, anorm);
  detail::order_eigenpairs(es.values, p, tie);

  const double cluster = tol.cluster_tol * anorm;
  for (int k = 0; k < n; ++k) {
    std::vector<std::vector<Complex>> mates;
    for (int j = 0; j < k; ++j) {
      if (std::abs(es.values[j] - es.values[k]) <= cluster) {
        std::vector<Complex> col(n);
        for (int i = 0; i < n; ++i) col[i] = p(i, j);
        mates.push_back(std::move(col));
      }
    }
    const std::vector<Complex> v =
        detail::inverse_iteration(a, es.values[k], k, mates);
    for (int i = 0; i < n; ++i) p(i, k) = v[i];
    detail::fix_column_phase(p, k);
  }

  const detail::Lu f = detail::lu_factor(p);
  if (f.singular) {
    throw Error(ErrorCode::NotDiagonalizable, "eigenvector matrix is singular");
  }
  ComplexMat pinv(n);
  std::array<Complex, kMaxDim> col{};
  for (int j = 0; j < n; ++j) {
    col.fill(0.0);
    col[j] = 1.0;
    detail::lu_solve(f, std::span<Complex>(col.data(), n));
    for (int i = 0; i < n; ++i) pinv(i, j) = col[i];
  }
  const double cond = one_norm(p) * one_norm(pinv);
  if (!std::isfinite(cond) || cond > tol.diag_cond_max) {
    throw Error(ErrorCode::NotDiagonalizable,
                "eigenvector condition estimate " + std::to_string(cond) +
                    " exceeds diag_cond_max");
  }
  // Two-sided Rayleigh quotients refine the values against the final basis.
  const ComplexMat projected = pinv * a * p;
  for (int k = 0; k < n; ++k) es.values[k] = projected(k, k);

  es.vectors = p;
  es.inverse_vectors = pinv;
  if (reconstruction_error(es, a) > tol.eig_tol * std::max(1.0, anorm)) {
    throw Error(ErrorCode::NotDiagonalizable,
                "reconstruction residual above eig_tol");
  }
  return es;
}

}  // namespace invdec
