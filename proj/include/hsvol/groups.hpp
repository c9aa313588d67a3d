#pragma once

#include <string_view>

#include "hsvol/exact.hpp"

namespace hsvol {

/**
 * Scaling of the invariant volume element on U(N) and O(N).
 *
 * A: c_diag = 1, c_off = 2 (line element -Tr(U^-1 dU)^2).
 * B: c_diag = 1, c_off = 1 (unit-sphere fibration).
 * C: c_diag = 1/2, c_off = 1 (line element -Tr(U^-1 dU)^2 / 2).
 *
 * On the orthogonal family there are no diagonal terms and C coincides with B.
 */
enum class Convention { A, B, C };

enum class Family {
  Unitary,
  SpecialUnitary,
  Orthogonal,
  SpecialOrthogonal,
  ComplexProjective,
  RealProjective,
  ComplexFlag,
  RealFlag,
};

/// n is the matrix size for groups and flags, the dimension k for P^k.
struct CosetSpec {
  Family family;
  int n;
};

bool is_group(Family family);

ExactValue vol_group(const CosetSpec& spec, Convention conv);
ExactValue vol_coset(const CosetSpec& spec, Convention conv);
/// Dispatches to vol_group or vol_coset.
ExactValue volume(const CosetSpec& spec, Convention conv);

/// Volume of the unit sphere S^k in R^(k+1).
ExactValue sphere_volume(int k);
/// Volume of the unit ball B^k in R^k.
ExactValue ball_volume(int k);

Convention parse_convention(std::string_view text);
Family parse_family(std::string_view text);
std::string_view to_string(Convention conv);
std::string_view to_string(Family family);

}  // namespace hsvol
