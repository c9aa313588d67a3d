#include "hsvol/mixedstates.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hsvol/constants.hpp"
#include "hsvol/groups.hpp"

namespace hsvol {

namespace {

void require_space(const StateSpaceSpec& spec) {
  if (spec.n < 2) throw std::domain_error("state space: n must be >= 2");
}

ExactValue factorial(int n) { return gamma_exact(HalfInteger::integer(n + 1)); }

// Orbits of a spectrum with n zeros: Fl^(N) / Fl^(n), convention A.
ExactValue orbit_volume(Field field, int size, int zeros) {
  const Family flag = field == Field::Complex ? Family::ComplexFlag : Family::RealFlag;
  return vol_coset({flag, size}, Convention::A) / vol_coset({flag, zeros}, Convention::A);
}

}  // namespace

int StateSpaceSpec::dimension() const {
  return field == Field::Complex ? n * n - 1 : n * (n + 1) / 2 - 1;
}

ExactValue vol_mixed(const StateSpaceSpec& spec) {
  require_space(spec);
  const int n = spec.n;
  if (spec.field == Field::Complex) {
    // sqrt(N) (2 pi)^(N(N-1)/2) Gamma(1)...Gamma(N) / Gamma(N^2)
    ExactValue out = ExactValue::sqrt_of(n) *
                     (ExactValue::integer(2) * ExactValue::pi()).pow(static_cast<long>(n) * (n - 1) / 2);
    for (int k = 1; k <= n; ++k) out *= gamma_exact(HalfInteger::integer(k));
    return out / gamma_exact(HalfInteger::integer(static_cast<long>(n) * n));
  }
  return ExactValue::sqrt_of(n) / factorial(n) * vol_coset({Family::RealFlag, n}, Convention::A) /
         c_norm({n, HalfInteger::integer(1), 1});
}

ExactValue vol_edge(const StateSpaceSpec& spec, int n) {
  require_space(spec);
  if (n < 0 || n > spec.n - 1) throw std::domain_error("vol_edge: order must lie in [0, N-1]");
  const int m = spec.n - n;
  const EnsembleParams params = spec.field == Field::Complex
                                    ? EnsembleParams{m, HalfInteger::integer(1 + 2 * n), 2}
                                    : EnsembleParams{m, HalfInteger::integer(1 + n), 1};
  return ExactValue::sqrt_of(m) / factorial(m) / c_norm(params) * orbit_volume(spec.field, spec.n, n);
}

GeometrySummary geometry(const StateSpaceSpec& spec) {
  require_space(spec);
  const int n = spec.n;
  const int d = spec.dimension();
  const ExactValue outer = ExactValue::sqrt_of(mpq_class(n - 1, n));
  const ExactValue inner = outer / ExactValue::integer(n - 1);
  const ExactValue volume = vol_mixed(spec);

  const double log10_rho = (volume.log10() - ball_volume(d).log10()) / d;
  const double log10_chi1 = d * (inner.log10() - log10_rho);
  const double log10_chi2 = d * (log10_rho - outer.log10());

  GeometrySummary out{
      .outer_radius = outer,
      .inner_radius = inner,
      .effective_radius = std::pow(10.0, log10_rho),
      .gamma = vol_edge(spec, 1) / volume,
      .chi1 = std::pow(10.0, log10_chi1),
      .chi2 = std::pow(10.0, log10_chi2),
      .chi = std::pow(10.0, log10_chi1 + log10_chi2),
      .log10_chi1 = log10_chi1,
      .log10_chi2 = log10_chi2,
      .log10_chi = log10_chi1 + log10_chi2,
  };
  return out;
}

ExactValue reference_volume(Body body, int dim, const ExactValue& size) {
  if (dim < 1) throw std::domain_error("reference body: dim must be >= 1");
  if (size.sign() <= 0) throw std::domain_error("reference body: size must be positive");
  const ExactValue scale = size.pow(dim);
  switch (body) {
    case Body::Ball:
      return scale * ball_volume(dim);
    case Body::Cube:
      return scale;
    case Body::Simplex:
    case Body::Diamond: {
      // L^D sqrt(D+1) / (sqrt(2^D) D!)
      ExactValue simplex = scale * ExactValue::sqrt_of(dim + 1) / ExactValue::sqrt_of(2).pow(dim) /
                           gamma_exact(HalfInteger::integer(dim + 1));
      return body == Body::Diamond ? ExactValue::integer(2) * simplex : simplex;
    }
    case Body::Sphere:
      return scale * sphere_volume(dim);
  }
  throw std::logic_error("reference_volume: unreachable");
}

ExactValue reference_gamma(Body body, int dim, const ExactValue& size) {
  if (dim < 1) throw std::domain_error("reference body: dim must be >= 1");
  if (size.sign() <= 0) throw std::domain_error("reference body: size must be positive");
  const ExactValue d = ExactValue::integer(dim);
  const ExactValue sharpness = ExactValue::sqrt_of(mpq_class(2 * dim, dim + 1));
  switch (body) {
    case Body::Ball:
      return d / size;
    case Body::Cube:
      return ExactValue::integer(2) * d / size;
    case Body::Simplex:
      return sharpness * d * ExactValue::integer(dim + 1) / size;
    case Body::Diamond:
      return sharpness * d * d / size;
    case Body::Sphere:
      break;
  }
  throw std::domain_error("reference_gamma: a sphere has no boundary");
}

Field parse_field(std::string_view text) {
  if (text == "complex") return Field::Complex;
  if (text == "real") return Field::Real;
  throw std::invalid_argument("unknown field '" + std::string(text) + "'");
}

Body parse_body(std::string_view text) {
  if (text == "ball") return Body::Ball;
  if (text == "cube") return Body::Cube;
  if (text == "simplex") return Body::Simplex;
  if (text == "diamond") return Body::Diamond;
  if (text == "sphere") return Body::Sphere;
  throw std::invalid_argument("unknown body '" + std::string(text) + "'");
}

std::string_view to_string(Field field) { return field == Field::Complex ? "complex" : "real"; }

std::string_view to_string(Body body) {
  switch (body) {
    case Body::Ball: return "ball";
    case Body::Cube: return "cube";
    case Body::Simplex: return "simplex";
    case Body::Diamond: return "diamond";
    case Body::Sphere: return "sphere";
  }
  return "?";
}

}  // namespace hsvol
