#include "hsvol/groups.hpp"

#include <stdexcept>
#include <string>

namespace hsvol {

namespace {

ExactValue sqrt2() { return ExactValue::sqrt_of(2); }

ExactValue superfactorial(int n) {  // 0! 1! ... (n-1)!
  ExactValue out = ExactValue::integer(1);
  for (int k = 1; k < n; ++k) out *= gamma_exact(HalfInteger::integer(k + 1));
  return out;
}

// Orthogonal groups carry no diagonal terms, so C reduces to B.
Convention orthogonal(Convention conv) { return conv == Convention::C ? Convention::B : conv; }

ExactValue unitary(int n, Convention conv) {
  ExactValue scale = ExactValue::integer(1);
  if (conv == Convention::A) scale = ExactValue::integer(2).pow(static_cast<long>(n) * (n - 1) / 2);
  if (conv == Convention::C) scale = sqrt2().pow(-n);
  return scale * ExactValue::integer(2).pow(n) * ExactValue::pi_power(static_cast<long>(n) * (n + 1)) /
         superfactorial(n);
}

ExactValue orthogonal_group(int n, Convention conv) {
  ExactValue out = ExactValue::integer(1);
  for (int k = 1; k <= n; ++k) {
    out *= ExactValue::integer(2) * ExactValue::pi_power(k) / gamma_exact(HalfInteger::from_twice(k));
  }
  if (orthogonal(conv) == Convention::A) out *= sqrt2().pow(static_cast<long>(n) * (n - 1) / 2);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace

bool is_group(Family family) {
  switch (family) {
    case Family::Unitary:
    case Family::SpecialUnitary:
    case Family::Orthogonal:
    case Family::SpecialOrthogonal:
      return true;
    default:
      return false;
  }
}

ExactValue sphere_volume(int k) {
  require(k >= 0, "sphere_volume: dimension must be >= 0");
  return ExactValue::integer(2) * ExactValue::pi_power(k + 1) / gamma_exact(HalfInteger::from_twice(k + 1));
}

ExactValue ball_volume(int k) {
  require(k >= 0, "ball_volume: dimension must be >= 0");
  return ExactValue::pi_power(k) / gamma_exact(HalfInteger::from_twice(k + 2));
}

ExactValue vol_group(const CosetSpec& spec, Convention conv) {
  require(is_group(spec.family), "vol_group: not a group family");
  require(spec.n >= 1, "vol_group: n must be >= 1");
  const int n = spec.n;
  switch (spec.family) {
    case Family::Unitary:
      return unitary(n, conv);
    case Family::SpecialUnitary:
      return ExactValue::sqrt_of(n) * unitary(n, conv) / unitary(1, conv);
    case Family::Orthogonal:
      return orthogonal_group(n, conv);
    case Family::SpecialOrthogonal:
      return orthogonal_group(n, conv) / ExactValue::integer(2);
    default:
      break;
  }
  throw std::logic_error("vol_group: unreachable");
}

ExactValue vol_coset(const CosetSpec& spec, Convention conv) {
  require(!is_group(spec.family), "vol_coset: not a coset family");
  require(spec.n >= 0, "vol_coset: n must be >= 0");
  const int k = spec.n;
  switch (spec.family) {
    case Family::ComplexProjective: {
      const ExactValue scale = conv == Convention::A ? ExactValue::integer(2).pow(k) : ExactValue::integer(1);
      return scale * ExactValue::pi_power(2L * k) / gamma_exact(HalfInteger::integer(k + 1));
    }
    case Family::RealProjective: {
      // Vol_B = Vol(S^k)/2; A stretches each of the k directions by sqrt(2).
      const ExactValue scale = orthogonal(conv) == Convention::A ? sqrt2().pow(k) : ExactValue::integer(1);
      return scale * sphere_volume(k) / ExactValue::integer(2);
    }
    case Family::ComplexFlag:
      if (k == 0) return ExactValue::integer(1);
      return unitary(k, conv) / unitary(1, conv).pow(k);
    case Family::RealFlag:
      if (k == 0) return ExactValue::integer(1);
      return orthogonal_group(k, conv) / ExactValue::integer(2).pow(k);
    default:
      break;
  }
  throw std::logic_error("vol_coset: unreachable");
}

ExactValue volume(const CosetSpec& spec, Convention conv) {
  return is_group(spec.family) ? vol_group(spec, conv) : vol_coset(spec, conv);
}

Convention parse_convention(std::string_view text) {
  if (text == "A" || text == "a") return Convention::A;
  if (text == "B" || text == "b") return Convention::B;
  if (text == "C" || text == "c") return Convention::C;
  throw std::invalid_argument("unknown convention '" + std::string(text) + "'");
}

Family parse_family(std::string_view text) {
  if (text == "U") return Family::Unitary;
  if (text == "SU") return Family::SpecialUnitary;
  if (text == "O") return Family::Orthogonal;
  if (text == "SO") return Family::SpecialOrthogonal;
  if (text == "CP") return Family::ComplexProjective;
  if (text == "RP") return Family::RealProjective;
  if (text == "FlC") return Family::ComplexFlag;
  if (text == "FlR") return Family::RealFlag;
  throw std::invalid_argument("unknown family '" + std::string(text) + "'");
}

std::string_view to_string(Convention conv) {
  switch (conv) {
    case Convention::A: return "A";
    case Convention::B: return "B";
    case Convention::C: return "C";
  }
  return "?";
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Unitary: return "U";
    case Family::SpecialUnitary: return "SU";
    case Family::Orthogonal: return "O";
    case Family::SpecialOrthogonal: return "SO";
    case Family::ComplexProjective: return "CP";
    case Family::RealProjective: return "RP";
    case Family::ComplexFlag: return "FlC";
    case Family::RealFlag: return "FlR";
  }
  return "?";
}

}  // namespace hsvol
