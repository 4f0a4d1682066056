#pragma once

// Factorization of U in SU(3) into three commuting Euler factors and the
// principal logarithm built from them.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>

#include "invdec/grades.hpp"

namespace invdec {

enum class FactorRoute { Simple, Inverse };

inline constexpr const char* to_string(FactorRoute r) {
  return r == FactorRoute::Simple ? "simple" : "inverse";
}

struct Factorization {
  std::array<ComplexMat, 3> factors;
  /// Principal logarithm of each factor; empty when the factor is -1.
  std::array<std::optional<SimplePart>, 3> parts;
  FactorRoute route = FactorRoute::Simple;
  /// Factor obtained as U_a^dagger U_b^dagger U from the other two.
  int closing = 2;
};

/// Weighted norm sqrt(tr(M M^dagger) / n).
inline double unit_norm(const ComplexMat& m) {
  return frobenius_norm(m) / std::sqrt(static_cast<double>(m.dim()));
}

inline ComplexMat normalize(const ComplexMat& m, const Tolerances& tol = {}) {
  const double s = unit_norm(m);
  if (!(s > tol.norm_zero_tol)) {
    throw Error(ErrorCode::ZeroMatrix, "cannot normalize a (near) zero matrix");
  }
  return (1.0 / s) * m;
}

/// Principal logarithm of one Euler factor cos(beta) 1 + sin(beta) bhat,
/// with beta in [0, pi].
inline SimplePart principal_log_factor(const ComplexMat& factor, const Tolerances& tol = {}) {
  const auto [herm, skew] = ccos_ssin(factor);
  const double c = trace(factor).real() / 3.0;
  ComplexMat off_scalar = herm;
  off_scalar.add_identity(-c);
  if (frobenius_norm(off_scalar) > tol.fact_tol) {
    throw Error(ErrorCode::NotSimpleFactor, "Hermitian part is not a multiple of 1");
  }
  if (std::abs(c) > 1.0 + tol.arccos_overshoot) {
    throw Error(ErrorCode::InternalConsistency,
                "cosine " + std::to_string(c) + " outside [-1, 1]");
  }
  const double s = unit_norm(skew);
  const double beta = std::atan2(s, std::clamp(c, -1.0, 1.0));

  SimplePart part;
  part.square = -beta * beta;
  part.lambda = -beta * beta;
  part.beta = beta;
  if (s > tol.sin_zero_tol) {
    const ComplexMat unit = (1.0 / s) * skew;
    part.mat = beta * unit;
    part.unit = unit;
  } else if (c > 0.0) {
    part.mat = skew;
  } else {
    throw Error(ErrorCode::AmbiguousDirection, "factor is -1; direction undetermined");
  }
  return part;
}

namespace detail {

/// |cos(phi/2)| for the eigenvalue e^{i phi}.
inline double half_angle_cos(Complex eigenvalue) {
  return std::sqrt(std::max(0.0, 0.5 * (1.0 + eigenvalue.real())));
}

/// One factor through the inverse routes 1 + H_k S_m^{-1} (both orders of
/// the remaining indices), then 1 + <U>_6 H_t^{-1}. Each denominator is a
/// multiple of an involution, so its size alone decides whether the route
/// is usable; routes are tried largest denominator first, in that order on
/// ties, and denominators at round-off level are skipped.
inline std::optional<ComplexMat> inverse_route_factor(const GradeDecomposition& g, int t,
                                                      const Tolerances& tol) {
  const int j = (t + 1) % 3;
  const int k = (t + 2) % 3;
  std::array<std::pair<const ComplexMat*, const ComplexMat*>, 3> routes{{
      {&g.H[k], &g.S[j]},
      {&g.H[j], &g.S[k]},
      {&g.g6, &g.H[t]},
  }};
  std::stable_sort(routes.begin(), routes.end(), [](const auto& a, const auto& b) {
    return unit_norm(*a.second) > unit_norm(*b.second);
  });
  for (const auto& [num, den] : routes) {
    if (unit_norm(*den) <= tol.g0_zero_tol) break;
    try {
      ComplexMat m = *num * inverse(*den, tol);
      m.add_identity(1.0);
      return normalize(m, tol);
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline Factorization factorize(const GroupElement& u, const Tolerances& tol = {}) {
  const GradeDecomposition g = split_HS(u, tol);
  Factorization f;

  std::array<double, 3> cosines{};
  for (int t = 0; t < 3; ++t) cosines[t] = detail::half_angle_cos(g.eigenvalues[t]);

  const bool simple = std::abs(g.g0(0, 0)) > tol.g0_zero_tol;
  f.route = simple ? FactorRoute::Simple : FactorRoute::Inverse;
  // Simple route: |g0 + S_t| = |c_j c_k|, so the factor with the largest
  // half-angle cosine closes. Inverse route: the smallest one closes.
  f.closing = 0;
  for (int t = 1; t < 3; ++t) {
    if (simple ? cosines[t] > cosines[f.closing] : cosines[t] < cosines[f.closing]) {
      f.closing = t;
    }
  }

  ComplexMat rest = u.mat();
  for (int t = 0; t < 3; ++t) {
    if (t == f.closing) continue;
    if (simple) {
      try {
        f.factors[t] = normalize(g.g0 + g.S[t], tol);
      } catch (const Error& e) {
        throw Error(ErrorCode::FactorizationFailed,
                    "simple route for factor " + std::to_string(t + 1) + ": " + e.what());
      }
    } else {
      const auto m = detail::inverse_route_factor(g, t, tol);
      if (!m) {
        throw Error(ErrorCode::FactorizationFailed,
                    "no inverse route for factor " + std::to_string(t + 1) +
                        " (grade-0 part vanishes and the invariants are singular)");
      }
      f.factors[t] = *m;
    }
    rest = adjoint(f.factors[t]) * rest;
  }
  f.factors[f.closing] = rest;

  ComplexMat product = f.factors[0] * f.factors[1] * f.factors[2];
  double err = frobenius_norm(product - u.mat());
  for (int i = 0; i < 3; ++i) {
    ComplexMat gram = adjoint(f.factors[i]) * f.factors[i];
    gram.add_identity(-1.0);
    err = std::max(err, frobenius_norm(gram));
    for (int j = i + 1; j < 3; ++j) {
      err = std::max(err, frobenius_norm(commutator(f.factors[i], f.factors[j])));
    }
  }
  if (!(err <= tol.fact_tol)) {
    throw Error(ErrorCode::FactorizationFailed,
                "factor residual " + std::to_string(err) + " above fact_tol");
  }

  for (int i = 0; i < 3; ++i) {
    try {
      f.parts[i] = principal_log_factor(f.factors[i], tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::AmbiguousDirection) throw;
    }
  }
  return f;
}

struct LogResult {
  ComplexMat mat;
  std::array<SimplePart, 3> parts;
  /// Sign applied to each factor before taking its logarithm.
  std::array<int, 3> signs{1, 1, 1};
  Factorization factorization;
};

/// Logarithm assembled from the factor logarithms. Each factor is fixed only
/// up to a sign (two flips leave the product unchanged), so the four sign
/// patterns are tried and the traceless result of least norm is kept.
inline LogResult log_decomposed(const GroupElement& u, const Tolerances& tol = {}) {
  LogResult out;
  try {
    out.factorization = factorize(u, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FactorizationFailed) throw;
    // A repeated eigenvalue -1 leaves the log direction free inside that
    // eigenspace.
    const EigenSystem es = eigen_normal3(u.mat());
    int at_minus_one = 0;
    for (Complex v : es.values) {
      if (detail::half_angle_cos(v) <= std::sqrt(tol.g0_zero_tol)) ++at_minus_one;
    }
    if (at_minus_one >= 2) {
      throw Error(ErrorCode::AmbiguousDirection,
                  "eigenvalue -1 is repeated; the logarithm is not unique");
    }
    throw;
  }
  const auto& factors = out.factorization.factors;

  static constexpr std::array<std::array<int, 3>, 4> patterns{
      {{1, 1, 1}, {-1, -1, 1}, {-1, 1, -1}, {1, -1, -1}}};
  bool found = false;
  bool ambiguous = false;
  double best_norm = 0.0;
  for (const auto& signs : patterns) {
    std::array<SimplePart, 3> parts;
    try {
      for (int i = 0; i < 3; ++i) {
        parts[i] = principal_log_factor(static_cast<double>(signs[i]) * factors[i], tol);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::AmbiguousDirection) throw;
      ambiguous = true;
      continue;
    }
    const ComplexMat l = parts[0].mat + parts[1].mat + parts[2].mat;
    const double norm = frobenius_norm(l);
    if (std::abs(trace(l)) > tol.log_tol * std::max(1.0, norm)) continue;
    if (!found || norm < best_norm - 1e-12 * std::max(1.0, norm)) {
      found = true;
      best_norm = norm;
      out.mat = l;
      out.parts = parts;
      out.signs = signs;
    }
  }
  if (!found) {
    if (ambiguous) {
      throw Error(ErrorCode::AmbiguousDirection,
                  "a factor equals -1 and no traceless branch avoids it");
    }
    throw Error(ErrorCode::InternalConsistency, "no traceless combination of factor logs");
  }

  ComplexMat check = ComplexMat::identity(3);
  for (const SimplePart& p : out.parts) check = check * exp_simple(p).mat;
  if (frobenius_norm(check - u.mat()) > tol.log_tol * 10.0) {
    throw Error(ErrorCode::InternalConsistency, "logarithm does not reproduce U");
  }
  return out;
}

/// Ln U, skew-Hermitian and traceless, with every beta_i in [0, pi].
inline ComplexMat principal_log(const GroupElement& u, const Tolerances& tol = {}) {
  return log_decomposed(u, tol).mat;
}

/// Branch selector for the multi-valued logarithm.
struct LogBranch {
  std::array<int, 3> k{0, 0, 0};
};

/// sum_i (b_i + 2 pi k_i bhat_i).
inline ComplexMat branch_log(std::span<const SimplePart, 3> parts, const LogBranch& branch) {
  ComplexMat out(parts[0].mat.dim());
  for (int i = 0; i < 3; ++i) {
    out += parts[i].mat;
    if (branch.k[i] == 0) continue;
    if (!parts[i].unit) {
      throw Error(ErrorCode::MissingDirection,
                  "part " + std::to_string(i + 1) + " has no unit direction");
    }
    out += (2.0 * std::numbers::pi * branch.k[i]) * *parts[i].unit;
  }
  return out;
}

inline ComplexMat branch_log(const GroupElement& u, const LogBranch& branch,
                             const Tolerances& tol = {}) {
  const LogResult r = log_decomposed(u, tol);
  return branch_log(std::span<const SimplePart, 3>(r.parts), branch);
}

}  // namespace invdec
