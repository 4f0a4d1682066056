#pragma once

// Reference algorithms (Taylor scaling-and-squaring exponential, eigenvalue
// logarithm) and seeded sampling. Nothing here calls into the invariant
// decomposition, so the two can be checked against each other.
//
// The generator is std::mt19937_64 (published constants, identical on every
// standard library). Uniform and normal variates are derived by hand because
// the standard distributions are implementation-defined.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "invdec/eigen.hpp"
#include "invdec/expmap.hpp"
#include "invdec/gellmann.hpp"

namespace invdec {

struct RngSeed {
  std::uint64_t value = 0;
};

class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.value) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal by Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  /// Complex normal with E|z|^2 = 1.
  Complex complex_normal() {
    const double x = normal();
    const double y = normal();
    return Complex(x, y) / std::numbers::sqrt2;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// |a - b|_F / max(1, |b|_F).
inline double compare(const ComplexMat& a, const ComplexMat& b) {
  a.require_same_dim(b);
  return frobenius_norm(a - b) / std::max(1.0, frobenius_norm(b));
}

/// exp(B) by scaling and squaring: B / 2^s has norm at most 1/2, a degree-20
/// Taylor polynomial is evaluated by Horner's rule and squared s times.
inline ComplexMat exp_reference(const ComplexMat& b) {
  constexpr int kOrder = 20;
  const double norm = frobenius_norm(b);
  int s = 0;
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const ComplexMat a = std::ldexp(1.0, -s) * b;
  const int n = b.dim();
  ComplexMat e = ComplexMat::identity(n);
  for (int k = kOrder; k >= 1; --k) {
    e = (1.0 / k) * (a * e);
    e.add_identity(1.0);
  }
  for (int i = 0; i < s; ++i) e = e * e;
  return e;
}

/// Principal matrix logarithm of a unitary matrix, eigenphases in (-pi, pi].
inline ComplexMat log_reference(const ComplexMat& u, const Tolerances& tol = {}) {
  ComplexMat gram = adjoint(u) * u;
  gram.add_identity(-1.0);
  if (frobenius_norm(gram) > tol.grp_tol) {
    throw Error(ErrorCode::NotUnitary, "log_reference needs a unitary matrix");
  }
  const EigenSystem es = u.dim() == 3 ? eigen_normal3(u, tol) : eigen_general(u, tol);
  const int n = u.dim();
  ComplexMat d(n);
  for (int k = 0; k < n; ++k) {
    double phase = std::arg(es.values[k]);
    if (phase <= -std::numbers::pi) phase = std::numbers::pi;
    d(k, k) = Complex(0.0, phase);
  }
  return skew_part(es.vectors * d * es.inverse_vectors);
}

/// B = i * scale * sum_a c_a lambda_a with standard normal c_a.
inline AlgebraElement random_algebra(Rng& rng, double scale) {
  if (!(scale > 0.0)) throw Error(ErrorCode::InvalidInput, "scale must be positive");
  ComplexMat b(3);
  for (int a = 1; a <= 8; ++a) b += rng.normal() * gellmann(a);
  b *= Complex(0.0, scale);
  return AlgebraElement::make(skew_part(b), Tolerances{});
}

inline AlgebraElement random_algebra(RngSeed seed, double scale) {
  Rng rng(seed);
  return random_algebra(rng, scale);
}

/// Haar-distributed unitary n x n matrix: complex Gaussian columns
/// orthonormalized by Gram-Schmidt (the QR factor with positive real R
/// diagonal).
inline ComplexMat random_unitary(Rng& rng, int n) {
  ComplexMat z(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = rng.complex_normal();
  for (int j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < j; ++k) {
        Complex proj = 0.0;
        for (int i = 0; i < n; ++i) proj += std::conj(z(i, k)) * z(i, j);
        for (int i = 0; i < n; ++i) z(i, j) -= proj * z(i, k);
      }
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += std::norm(z(i, j));
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) z(i, j) /= norm;
  }
  return z;
}

/// Haar-distributed SU(3) element: a random unitary times det^{-1/3}.
inline GroupElement random_group(Rng& rng) {
  const ComplexMat q = random_unitary(rng, 3);
  return GroupElement::make(std::polar(1.0, -std::arg(det(q)) / 3.0) * q);
}

inline GroupElement random_group(RngSeed seed) {
  Rng rng(seed);
  return random_group(rng);
}

/// V diag(e^{i phi_k}) V^dagger for a Haar-random V. Phases should sum to
/// a multiple of 2 pi for the result to lie in SU(3).
inline ComplexMat random_with_phases(Rng& rng, std::span<const double> phases) {
  const int n = static_cast<int>(phases.size());
  const ComplexMat v = random_unitary(rng, n);
  ComplexMat d(n);
  for (int k = 0; k < n; ++k) d(k, k) = std::polar(1.0, phases[k]);
  return v * d * adjoint(v);
}

/// P diag(mu) P^{-1} with Gaussian P and complex normal eigenvalues mu,
/// shifted to be traceless.
inline ComplexMat random_diagonalizable(Rng& rng, int n) {
  ComplexMat p(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i, j) = rng.complex_normal();
  std::vector<Complex> mu(n);
  Complex mean = 0.0;
  for (Complex& m : mu) {
    m = rng.complex_normal();
    mean += m;
  }
  mean /= static_cast<double>(n);
  ComplexMat d(n);
  for (int k = 0; k < n; ++k) d(k, k) = mu[k] - mean;
  return p * d * inverse(p);
}

}  // namespace invdec
