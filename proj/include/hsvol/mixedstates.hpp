#pragma once

#include <string_view>

#include "hsvol/exact.hpp"

namespace hsvol {

enum class Field { Complex, Real };

/// The set of N x N density matrices over a field.
struct StateSpaceSpec {
  int n = 2;
  Field field = Field::Complex;

  /// Ambient dimension: N^2 - 1 (complex) or N(N+1)/2 - 1 (real).
  int dimension() const;
};

/// Hilbert-Schmidt volume of the full set of states.
ExactValue vol_mixed(const StateSpaceSpec& spec);

/**
 * Hilbert-Schmidt volume of the states of rank N - n (the edge of order n).
 * n = 0 gives the volume, n = 1 the boundary hyperarea, n = N - 1 the pure states.
 */
ExactValue vol_edge(const StateSpaceSpec& spec, int n);

/// Radii and shape coefficients of the set of states.
struct GeometrySummary {
  ExactValue outer_radius;  // R, circumscribed
  ExactValue inner_radius;  // r = R/(N-1), inscribed
  double effective_radius;  // rho, radius of the ball with the same volume
  ExactValue gamma;         // boundary hyperarea / volume
  // chi1 = (r/rho)^D, chi2 = (rho/R)^D. The log10 fields stay finite when the
  // plain values underflow.
  double chi1;
  double chi2;
  double chi;
  double log10_chi1;
  double log10_chi2;
  double log10_chi;
};

GeometrySummary geometry(const StateSpaceSpec& spec);

enum class Body { Ball, Cube, Simplex, Diamond, Sphere };

/// Volume of a reference body of dimension dim and radius/side L. Sphere is S^dim.
ExactValue reference_volume(Body body, int dim, const ExactValue& size);
/// Boundary-to-volume ratio of a reference body. Undefined for Sphere.
ExactValue reference_gamma(Body body, int dim, const ExactValue& size);

Field parse_field(std::string_view text);
Body parse_body(std::string_view text);
std::string_view to_string(Field field);
std::string_view to_string(Body body);

}  // namespace hsvol
