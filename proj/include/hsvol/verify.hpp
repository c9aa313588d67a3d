#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hsvol/mixedstates.hpp"

namespace hsvol {

/// Monte Carlo layout: n_samples = chunks * chunk_size, chunk c draws from stream c.
struct RunConfig {
  std::int64_t n_samples = 100000;
  std::uint64_t seed = 1;
  int chunks = 16;
  int workers = 1;
};

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n_samples)
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  int chunks = 0;
};

/**
 * Importance-sampled estimate of 1/C_N^(alpha,beta).
 *
 * L ~ Dirichlet(alpha, ..., alpha) absorbs prod L^(alpha-1); the weight is
 * B(alpha) prod_{i<j} |L_i - L_j|^beta with B(alpha) = Gamma(alpha)^N / Gamma(N alpha).
 * Variance grows quickly with N; N <= 4 is the intended range.
 */
MCEstimate mc_norm_constant(int n, double alpha, double beta, const RunConfig& config);

/// Fraction of uniform points of the D-ball of radius R_N that are states.
MCEstimate mc_hit_or_miss_fraction(int n, const RunConfig& config);
/// Closed-form target of mc_hit_or_miss_fraction: V_N / (B_D R_N^D).
double hit_or_miss_expected(int n);

/// Mean purity tr(rho^2) over HS-distributed states.
MCEstimate mc_purity(int n, Field field, const RunConfig& config);

enum class SamplerVariant {
  Standard,
  /// Real Wishart with a square N x N Gaussian; the wrong eigenvalue law. Negative control.
  SquareRealGinibre,
};

struct FitResult {
  double statistic = 0.0;
  double p_value = 0.0;
  int degrees_of_freedom = 0;
  std::vector<std::int64_t> observed;
  std::vector<double> expected;
};

/**
 * Chi-square test of the largest-eigenvalue histogram on [1/N, 1] against the
 * reference marginal of the HS eigenvalue law. N = 2 uses closed forms, N = 3
 * integrates the joint density. Adjacent bins with expected count below 5 are
 * pooled; dof = pooled bins - 1.
 */
FitResult spectral_fit_test(int n, Field field, int bins, const RunConfig& config,
                            SamplerVariant variant = SamplerVariant::Standard);

/// P(largest eigenvalue <= t) under the HS law, for N in {2, 3}.
double largest_eigenvalue_cdf(int n, Field field, double t);

/// One line of a verification report.
struct CheckReport {
  std::string check;
  double expected = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::optional<double> sigmas;  // |estimate - expected| / std_error, empty when std_error is 0
  bool pass = false;
  std::optional<double> statistic;  // chi-square fits only
};

/// Pass iff |estimate - expected| <= 3 std_error (exact agreement when std_error is 0).
CheckReport compare_estimate(std::string check, double expected, const MCEstimate& estimate);

struct SuiteRequest {
  std::string suite = "all";  // purity | norm | hitmiss | fit | all
  std::optional<int> n;
  std::optional<Field> field;
  std::optional<double> alpha;
  std::optional<double> beta;
  int bins = 20;
  RunConfig config;
};

/// Runs a named verification suite. Unset parameters select the default sweep.
std::vector<CheckReport> run_suite(const SuiteRequest& request);

}  // namespace hsvol
