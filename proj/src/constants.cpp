#include "hsvol/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace hsvol {

namespace {

void check_exact(const EnsembleParams& params) {
  if (params.n < 1) throw std::domain_error("ensemble: n must be >= 1");
  if (params.alpha.twice() <= 0) throw std::domain_error("ensemble: alpha must be positive");
  if (params.beta != 1 && params.beta != 2) {
    throw std::domain_error("ensemble: exact path needs beta in {1, 2}; use the float path");
  }
}

void check_float(int n, double alpha, double beta) {
  if (n < 1 || !(alpha > 0.0) || !(beta > 0.0)) {
    throw std::domain_error("ensemble: need n >= 1 and alpha, beta > 0");
  }
}

}  // namespace

ExactValue laguerre_integral(const EnsembleParams& params) {
  check_exact(params);
  const long a2 = params.alpha.twice();
  const long b = params.beta;
  ExactValue out = ExactValue::integer(1);
  for (long j = 1; j <= params.n; ++j) {
    // arguments doubled: 1 + j b/2 -> 2 + j b, alpha + (j-1) b/2 -> a2 + (j-1) b
    out *= gamma_exact(HalfInteger::from_twice(2 + j * b));
    out *= gamma_exact(HalfInteger::from_twice(a2 + (j - 1) * b));
  }
  return out / gamma_exact(HalfInteger::from_twice(2 + b)).pow(params.n);
}

ExactValue c_norm(const EnsembleParams& params) {
  check_exact(params);
  const long n = params.n;
  const long twice_arg = params.alpha.twice() * n + params.beta * n * (n - 1);
  return gamma_exact(HalfInteger::from_twice(twice_arg)) / laguerre_integral(params);
}

std::optional<EnsembleParams> exact_params(int n, double alpha, double beta) {
  const double a2 = 2.0 * alpha;
  if (n < 1 || !(alpha > 0.0) || a2 != std::round(a2)) return std::nullopt;
  if (beta != 1.0 && beta != 2.0) return std::nullopt;
  return EnsembleParams{n, HalfInteger::from_twice(static_cast<long>(a2)), static_cast<int>(beta)};
}

double log_laguerre_integral(int n, double alpha, double beta) {
  check_float(n, alpha, beta);
  double sum = 0.0;
  for (int j = 1; j <= n; ++j) {
    sum += std::lgamma(1.0 + j * beta / 2.0) + std::lgamma(alpha + (j - 1) * beta / 2.0);
  }
  return sum - n * std::lgamma(1.0 + beta / 2.0);
}

double log_c_norm(int n, double alpha, double beta) {
  check_float(n, alpha, beta);
  return std::lgamma(alpha * n + beta * n * (n - 1) / 2.0) - log_laguerre_integral(n, alpha, beta);
}

}  // namespace hsvol
