#pragma once

#include <optional>

#include "hsvol/exact.hpp"

namespace hsvol {

/// Parameters of the eigenvalue weight  prod L^(alpha-1) prod |L_i - L_j|^beta  on the simplex.
struct EnsembleParams {
  int n = 1;
  HalfInteger alpha = HalfInteger::integer(1);
  int beta = 2;  // 1 (real) or 2 (complex)
};

/// Laguerre-ensemble integral  prod_j Gamma(1+j beta/2) Gamma(alpha+(j-1) beta/2) / Gamma(1+beta/2).
ExactValue laguerre_integral(const EnsembleParams& params);

/// Normalization constant C_N^(alpha,beta) of the eigenvalue density on the simplex.
ExactValue c_norm(const EnsembleParams& params);

/// Exact parameters for (n, alpha, beta) when alpha is a half-integer and beta is 1 or 2.
std::optional<EnsembleParams> exact_params(int n, double alpha, double beta);

// Floating paths for arbitrary alpha, beta > 0. Natural logarithms.
double log_laguerre_integral(int n, double alpha, double beta);
double log_c_norm(int n, double alpha, double beta);

}  // namespace hsvol
