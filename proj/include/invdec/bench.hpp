#pragma once

// Throughput and accuracy of the invariant-decomposition exp / log /
// factorization against the reference algorithms.
//
// Regimes:
//   generic         B at scale 1, U Haar-random
//   small-angle     B at scale 1e-6, U = exp(B)
//   near-degenerate eigenphases (a, a + 1e-7, -2a - 1e-7) in a random basis
//   boundary        one eigenphase 2 pi - eps, eps < 2e-3 (beta within 1e-3 of pi)

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "invdec/factorlog.hpp"
#include "invdec/oracle.hpp"

namespace invdec {

enum class BenchTask { Exp, Log, Factorize };
enum class BenchRegime { Generic, SmallAngle, NearDegenerate, Boundary };

inline constexpr std::array<BenchTask, 3> kBenchTasks{BenchTask::Exp, BenchTask::Log,
                                                      BenchTask::Factorize};
inline constexpr std::array<BenchRegime, 4> kBenchRegimes{
    BenchRegime::Generic, BenchRegime::SmallAngle, BenchRegime::NearDegenerate,
    BenchRegime::Boundary};

inline constexpr std::string_view to_string(BenchTask t) {
  switch (t) {
    case BenchTask::Exp: return "exp";
    case BenchTask::Log: return "log";
    case BenchTask::Factorize: return "factorize";
  }
  return "?";
}

inline constexpr std::string_view to_string(BenchRegime r) {
  switch (r) {
    case BenchRegime::Generic: return "generic";
    case BenchRegime::SmallAngle: return "small-angle";
    case BenchRegime::NearDegenerate: return "near-degenerate";
    case BenchRegime::Boundary: return "boundary";
  }
  return "?";
}

inline std::optional<BenchTask> parse_task(std::string_view s) {
  for (BenchTask t : kBenchTasks)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

inline std::optional<BenchRegime> parse_regime(std::string_view s) {
  for (BenchRegime r : kBenchRegimes)
    if (to_string(r) == s) return r;
  return std::nullopt;
}

struct BenchReport {
  std::string task;
  std::string method;  // "invariant" or "reference"
  std::string regime;
  std::uint64_t seed = 0;
  std::size_t n_samples = 0;
  double median_ns = 0.0;
  double p10_ns = 0.0;
  double p90_ns = 0.0;
  double max_rel_err = 0.0;
  double median_rel_err = 0.0;
  std::size_t failures = 0;
  std::map<std::string, std::size_t> failure_codes;
};

inline constexpr std::size_t kMinBenchSamples = 100;
inline constexpr std::size_t kBenchWarmup = 10;

namespace detail {

inline ComplexMat phases_in_random_basis(Rng& rng, const std::array<double, 3>& phi,
                                         bool algebra) {
  const ComplexMat v = random_unitary(rng, 3);
  ComplexMat d(3);
  for (int k = 0; k < 3; ++k) {
    d(k, k) = algebra ? Complex(0.0, phi[k]) : std::polar(1.0, phi[k]);
  }
  ComplexMat m = v * d * adjoint(v);
  if (algebra) m = skew_part(m);
  return m;
}

inline std::array<double, 3> regime_phases(Rng& rng, BenchRegime regime) {
  if (regime == BenchRegime::NearDegenerate) {
    const double a = 0.3 + 0.9 * rng.uniform();
    return {a, a + 1e-7, -2.0 * a - 1e-7};
  }
  const double eps = 2e-3 * (1.0 - rng.uniform());
  const double p1 = 2.0 * std::numbers::pi - eps;
  const double p2 = std::numbers::pi * (2.0 * rng.uniform() - 1.0);
  return {p1, p2, -p1 - p2};
}

/// Input matrix for one sample: an su(3) element for exp, a group element
/// otherwise.
inline ComplexMat bench_input(Rng& rng, BenchTask task, BenchRegime regime) {
  const bool algebra = task == BenchTask::Exp;
  switch (regime) {
    case BenchRegime::Generic:
      return algebra ? random_algebra(rng, 1.0).mat() : random_group(rng).mat();
    case BenchRegime::SmallAngle: {
      const ComplexMat b = random_algebra(rng, 1e-6).mat();
      return algebra ? b : exp_reference(b);
    }
    case BenchRegime::NearDegenerate:
    case BenchRegime::Boundary:
      return phases_in_random_basis(rng, regime_phases(rng, regime), algebra);
  }
  return ComplexMat::identity(3);
}

/// Runs one call and returns its error against the oracle.
inline double bench_call(BenchTask task, bool reference, const ComplexMat& input,
                         const Tolerances& tol) {
  switch (task) {
    case BenchTask::Exp: {
      if (reference) {
        const ComplexMat u = exp_reference(input);
        const GroupResiduals r = group_residuals(u);
        return std::max(r.unitarity, r.det_error);
      }
      const GroupElement u = exp_su3(AlgebraElement::make(input, tol), tol);
      return compare(u.mat(), exp_reference(input));
    }
    case BenchTask::Log: {
      const ComplexMat l = reference ? log_reference(input, tol)
                                     : principal_log(GroupElement::make(input, tol), tol);
      return compare(exp_reference(l), input);
    }
    case BenchTask::Factorize: {
      const Factorization f = factorize(GroupElement::make(input, tol), tol);
      ComplexMat sum(3);
      for (const auto& p : f.parts) {
        if (!p) return compare(f.factors[0] * f.factors[1] * f.factors[2], input);
        sum += p->mat;
      }
      return compare(exp_reference(sum), input);
    }
  }
  return 0.0;
}

inline double percentile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace detail

inline BenchReport run_bench(BenchTask task, BenchRegime regime, std::size_t n, RngSeed seed,
                             std::string_view method = "invariant",
                             const Tolerances& tol = {}) {
  if (n < kMinBenchSamples) {
    throw Error(ErrorCode::InvalidInput,
                "bench needs at least " + std::to_string(kMinBenchSamples) + " samples");
  }
  const bool reference = method == "reference";
  if (!reference && method != "invariant") {
    throw Error(ErrorCode::InvalidInput, "unknown method '" + std::string(method) + "'");
  }
  if (reference && task == BenchTask::Factorize) {
    throw Error(ErrorCode::InvalidInput, "factorize has no reference method");
  }

  Rng rng(seed);
  std::vector<ComplexMat> inputs;
  inputs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) inputs.push_back(detail::bench_input(rng, task, regime));

  for (std::size_t i = 0; i < kBenchWarmup; ++i) {
    try {
      (void)detail::bench_call(task, reference, inputs[i % n], tol);
    } catch (const Error&) {
    }
  }

  BenchReport report;
  report.task = std::string(to_string(task));
  report.method = std::string(method);
  report.regime = std::string(to_string(regime));
  report.seed = seed.value;
  report.n_samples = n;

  std::vector<double> times;
  std::vector<double> errors;
  times.reserve(n);
  errors.reserve(n);
  using clock = std::chrono::steady_clock;
  for (const ComplexMat& input : inputs) {
    const auto start = clock::now();
    try {
      const double err = detail::bench_call(task, reference, input, tol);
      times.push_back(std::chrono::duration<double, std::nano>(clock::now() - start).count());
      errors.push_back(err);
    } catch (const Error& e) {
      times.push_back(std::chrono::duration<double, std::nano>(clock::now() - start).count());
      ++report.failures;
      ++report.failure_codes[std::string(to_string(e.code()))];
    }
  }
  report.median_ns = detail::percentile(times, 0.5);
  report.p10_ns = detail::percentile(times, 0.1);
  report.p90_ns = detail::percentile(times, 0.9);
  for (double e : errors) report.max_rel_err = std::max(report.max_rel_err, e);
  report.median_rel_err = detail::percentile(errors, 0.5);
  return report;
}

/// Invariant method for every task, plus the reference method where one exists.
inline std::vector<BenchReport> run_bench_methods(BenchTask task, BenchRegime regime,
                                                  std::size_t n, RngSeed seed,
                                                  const Tolerances& tol = {}) {
  std::vector<BenchReport> out{run_bench(task, regime, n, seed, "invariant", tol)};
  if (task != BenchTask::Factorize) out.push_back(run_bench(task, regime, n, seed, "reference", tol));
  return out;
}

/// Aligned plain-text table, one row per report.
inline std::string format_table(std::span<const BenchReport> reports) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %-10s %-16s %7s %12s %12s %12s %12s %9s\n", "task",
                "method", "regime", "n", "median_ns", "p10_ns", "p90_ns", "max_rel_err",
                "failures");
  out += line;
  for (const BenchReport& r : reports) {
    std::snprintf(line, sizeof line, "%-10s %-10s %-16s %7zu %12.0f %12.0f %12.0f %12.3e %9zu\n",
                  r.task.c_str(), r.method.c_str(), r.regime.c_str(), r.n_samples, r.median_ns,
                  r.p10_ns, r.p90_ns, r.max_rel_err, r.failures);
    out += line;
  }
  return out;
}

}  // namespace invdec
