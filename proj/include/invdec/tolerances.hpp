#pragma once

#include <array>
#include <string_view>
#include <utility>

#include "invdec/error.hpp"

namespace invdec {

/// Numerical thresholds shared by every module. Defaults are sized for
/// double precision with 3x3 closed forms; all of them can be overridden
/// by name (see `set`), which is how the CLI's --tol-override works.
struct Tolerances {
  // smallmat
  double eig_tol = 1e-10;
  double normal_tol = 1e-10;
  double inv_tol = 1e-9;
  double inv_cond_max = 1e12;
  double diag_cond_max = 1e10;
  double cluster_tol = 1e-8;  // relative eigenvalue gap treated as degenerate

  // invdec
  double alg_tol = 1e-10;
  double simple_tol = 1e-10;
  double decomp_tol = 1e-10;
  double beta_zero_tol = 1e-12;
  double lambda_sep_tol = 1e-6;
  double root_tol = 1e-9;
  double cross_tol = 1e-8;

  // expmap / grades / factorlog
  double grp_tol = 1e-10;
  double grade_tol = 1e-9;
  double fact_tol = 1e-9;
  double norm_zero_tol = 1e-14;
  double g0_zero_tol = 1e-8;
  double sin_zero_tol = 1e-9;
  double arccos_overshoot = 1e-8;
  double log_tol = 1e-9;

  /// Sets a tolerance by its field name. Throws InvalidInput for an
  /// unknown key or a non-positive value.
  void set(std::string_view key, double value);

  /// All recognised names, in declaration order.
  static constexpr std::array<std::string_view, 21> names() {
    return {"eig_tol",       "normal_tol",      "inv_tol",
            "inv_cond_max",  "diag_cond_max",   "cluster_tol",
            "alg_tol",       "simple_tol",      "decomp_tol",
            "beta_zero_tol", "lambda_sep_tol",  "root_tol",
            "cross_tol",     "grp_tol",         "grade_tol",
            "fact_tol",      "norm_zero_tol",   "g0_zero_tol",
            "sin_zero_tol",  "arccos_overshoot", "log_tol"};
  }

  double* find(std::string_view key) {
    double* fields[] = {&eig_tol,       &normal_tol,     &inv_tol,
                        &inv_cond_max,  &diag_cond_max,  &cluster_tol,
                        &alg_tol,       &simple_tol,     &decomp_tol,
                        &beta_zero_tol, &lambda_sep_tol, &root_tol,
                        &cross_tol,     &grp_tol,        &grade_tol,
                        &fact_tol,      &norm_zero_tol,  &g0_zero_tol,
                        &sin_zero_tol,  &arccos_overshoot, &log_tol};
    const auto keys = names();
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (keys[i] == key) return fields[i];
    }
    return nullptr;
  }
};

inline void Tolerances::set(std::string_view key, double value) {
  double* field = find(key);
  if (field == nullptr) {
    throw Error(ErrorCode::InvalidInput,
                "unknown tolerance '" + std::string(key) + "'");
  }
  if (!(value > 0.0)) {
    throw Error(ErrorCode::InvalidInput,
                "tolerance '" + std::string(key) + "' must be positive");
  }
  *field = value;
}

}  // namespace invdec
