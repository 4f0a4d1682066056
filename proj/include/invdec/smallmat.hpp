#pragma once

// Dense complex matrices of dimension 2..8 with value semantics and no heap
// allocation. Everything else in the library is built on these.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <span>
#include <string>

#include "invdec/error.hpp"
#include "invdec/tolerances.hpp"

namespace invdec {

using Complex = std::complex<double>;

inline constexpr int kMaxDim = 8;
inline constexpr int kMinDim = 2;

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

class ComplexMat {
 public:
  /// Zero 3x3 matrix.
  ComplexMat() = default;

  /// Zero n x n matrix.
  explicit ComplexMat(int n) : n_(n) { check_dim(n); }

  /// Row-wise construction; rows must form a square matrix of finite entries.
  ComplexMat(std::initializer_list<std::initializer_list<Complex>> rows)
      : n_(static_cast<int>(rows.size())) {
    check_dim(n_);
    int i = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n_) {
        throw Error(ErrorCode::DimensionMismatch, "rows must be square");
      }
      int j = 0;
      for (const Complex& z : row) {
        if (!is_finite(z)) {
          throw Error(ErrorCode::InvalidInput, "non-finite matrix entry");
        }
        (*this)(i, j++) = z;
      }
      ++i;
    }
  }

  static ComplexMat identity(int n = 3) {
    ComplexMat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMat diagonal(std::span<const Complex> values) {
    ComplexMat m(static_cast<int>(values.size()));
    for (int i = 0; i < m.dim(); ++i) {
      if (!is_finite(values[i])) {
        throw Error(ErrorCode::InvalidInput, "non-finite diagonal entry");
      }
      m(i, i) = values[i];
    }
    return m;
  }

  static ComplexMat diagonal(std::initializer_list<Complex> values) {
    return diagonal(std::span<const Complex>(values.begin(), values.size()));
  }

  int dim() const noexcept { return n_; }

  Complex& operator()(int i, int j) noexcept { return a_[i * kMaxDim + j]; }
  const Complex& operator()(int i, int j) const noexcept {
    return a_[i * kMaxDim + j];
  }

  bool all_finite() const noexcept {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (!is_finite((*this)(i, j))) return false;
    return true;
  }

  ComplexMat& operator+=(const ComplexMat& b) {
    require_same_dim(b);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) (*this)(i, j) += b(i, j);
    return *this;
  }

  ComplexMat& operator-=(const ComplexMat& b) {
    require_same_dim(b);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) (*this)(i, j) -= b(i, j);
    return *this;
  }

  ComplexMat& operator*=(Complex s) noexcept {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) (*this)(i, j) *= s;
    return *this;
  }

  /// Adds s to every diagonal entry.
  ComplexMat& add_identity(Complex s) noexcept {
    for (int i = 0; i < n_; ++i) (*this)(i, i) += s;
    return *this;
  }

  friend bool operator==(const ComplexMat& a, const ComplexMat& b) {
    if (a.n_ != b.n_) return false;
    for (int i = 0; i < a.n_; ++i)
      for (int j = 0; j < a.n_; ++j)
        if (a(i, j) != b(i, j)) return false;
    return true;
  }

  void require_same_dim(const ComplexMat& b) const {
    if (b.n_ != n_) {
      throw Error(ErrorCode::DimensionMismatch,
                  std::to_string(n_) + "x" + std::to_string(n_) + " vs " +
                      std::to_string(b.n_) + "x" + std::to_string(b.n_));
    }
  }

 private:
  static void check_dim(int n) {
    if (n < kMinDim || n > kMaxDim) {
      throw Error(ErrorCode::DimensionMismatch,
                  "dimension " + std::to_string(n) + " outside [2, 8]");
    }
  }

  int n_ = 3;
  std::array<Complex, kMaxDim * kMaxDim> a_{};
};

inline ComplexMat operator+(ComplexMat a, const ComplexMat& b) {
  return a += b;
}
inline ComplexMat operator-(ComplexMat a, const ComplexMat& b) {
  return a -= b;
}
inline ComplexMat operator-(ComplexMat a) { return a *= -1.0; }
inline ComplexMat operator*(ComplexMat a, Complex s) { return a *= s; }
inline ComplexMat operator*(Complex s, ComplexMat a) { return a *= s; }
inline ComplexMat operator*(double s, ComplexMat a) { return a *= s; }
inline ComplexMat operator*(ComplexMat a, double s) { return a *= s; }

inline ComplexMat operator*(const ComplexMat& a, const ComplexMat& b) {
  a.require_same_dim(b);
  const int n = a.dim();
  ComplexMat c(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

inline ComplexMat adjoint(const ComplexMat& a) {
  ComplexMat r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(j, i) = std::conj(a(i, j));
  return r;
}

inline Complex trace(const ComplexMat& a) {
  Complex t = 0.0;
  for (int i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

inline double frobenius_norm(const ComplexMat& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

/// Max absolute column sum.
inline double one_norm(const ComplexMat& a) {
  double best = 0.0;
  for (int j = 0; j < a.dim(); ++j) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

inline ComplexMat commutator(const ComplexMat& a, const ComplexMat& b) {
  return a * b - b * a;
}

/// Hermitian part (a + a^dagger) / 2.
inline ComplexMat hermitian_part(const ComplexMat& a) {
  return 0.5 * (a + adjoint(a));
}

/// Skew-Hermitian part (a - a^dagger) / 2.
inline ComplexMat skew_part(const ComplexMat& a) {
  return 0.5 * (a - adjoint(a));
}

namespace detail {

/// LU factorization with partial pivoting, stored compactly. `singular` is
/// set when a pivot is exactly zero.
struct Lu {
  ComplexMat lu;
  std::array<int, kMaxDim> perm{};
  int sign = 1;
  bool singular = false;
};

inline Lu lu_factor(const ComplexMat& a) {
  Lu f{a};
  const int n = a.dim();
  for (int i = 0; i < n; ++i) f.perm[i] = i;
  ComplexMat& m = f.lu;
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(m(k, k));
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(m(i, k)) > best) {
        best = std::abs(m(i, k));
        p = i;
      }
    }
    if (best == 0.0) {
      f.singular = true;
      continue;
    }
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      std::swap(f.perm[k], f.perm[p]);
      f.sign = -f.sign;
    }
    for (int i = k + 1; i < n; ++i) {
      m(i, k) /= m(k, k);
      const Complex l = m(i, k);
      for (int j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
    }
  }
  return f;
}

/// Solves L U x = P b in place. Requires a non-singular factorization.
inline void lu_solve(const Lu& f, std::span<Complex> b) {
  const int n = f.lu.dim();
  std::array<Complex, kMaxDim> x{};
  for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
    x[i] /= f.lu(i, i);
  }
  for (int i = 0; i < n; ++i) b[i] = x[i];
}

}  // namespace detail

inline Complex det(const ComplexMat& a) {
  const int n = a.dim();
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  if (n == 3) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  }
  const detail::Lu f = detail::lu_factor(a);
  if (f.singular) return 0.0;
  Complex d = static_cast<double>(f.sign);
  for (int i = 0; i < n; ++i) d *= f.lu(i, i);
  return d;
}

/// Inverse by LU with partial pivoting. Throws Singular when a pivot
/// vanishes, when the 1-norm condition estimate exceeds inv_cond_max, or
/// when the residual check fails; callers then fall back to the eigen path.
inline ComplexMat inverse(const ComplexMat& a, const Tolerances& tol = {}) {
  const int n = a.dim();
  const detail::Lu f = detail::lu_factor(a);
  if (f.singular) throw Error(ErrorCode::Singular, "zero pivot");
  ComplexMat inv(n);
  std::array<Complex, kMaxDim> col{};
  for (int j = 0; j < n; ++j) {
    col.fill(0.0);
    col[j] = 1.0;
    detail::lu_solve(f, std::span<Complex>(col.data(), n));
    for (int i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  const double cond = one_norm(a) * one_norm(inv);
  if (!std::isfinite(cond) || cond > tol.inv_cond_max) {
    throw Error(ErrorCode::Singular,
                "condition estimate " + std::to_string(cond) + " exceeds limit");
  }
  ComplexMat residual = a * inv;
  residual.add_identity(-1.0);
  if (frobenius_norm(residual) > tol.inv_tol) {
    throw Error(ErrorCode::Singular, "inverse residual above inv_tol");
  }
  return inv;
}

/// True when the matrix is skew-Hermitian within `tol * max(1, |a|_F)`.
inline bool is_skew_hermitian(const ComplexMat& a, double tol) {
  return frobenius_norm(a + adjoint(a)) <=
         tol * std::max(1.0, frobenius_norm(a));
}

inline bool is_hermitian(const ComplexMat& a, double tol) {
  return frobenius_norm(a - adjoint(a)) <=
         tol * std::max(1.0, frobenius_norm(a));
}

}  // namespace invdec
