#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hsvol {

/// A positive integer or half-integer, stored as twice its value.
class HalfInteger {
 public:
  static constexpr HalfInteger from_twice(long twice) { return HalfInteger(twice); }
  static constexpr HalfInteger integer(long value) { return HalfInteger(2 * value); }

  constexpr long twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return static_cast<double>(twice_) / 2.0; }

  friend constexpr bool operator==(HalfInteger, HalfInteger) = default;

 private:
  constexpr explicit HalfInteger(long twice) : twice_(twice) {}
  long twice_;
};

/**
 * Exact element of the multiplicative family  +-q * sqrt(r) * pi^(p/2).
 *
 * q is a positive rational in lowest terms, r a squarefree positive integer and
 * p an integer. Zero is the single value (sign 0, q 1, r 1, p 0). The canonical
 * form is unique, so equality is field-wise comparison.
 *
 * There is no addition: sums of unlike radicals are not representable.
 */
class ExactValue {
 public:
  ExactValue();  // zero

  static ExactValue integer(long value);
  static ExactValue rational(const mpq_class& value);
  static ExactValue rational(long num, long den);
  /// sqrt(value) for a nonnegative rational; square factors are extracted.
  static ExactValue sqrt_of(const mpq_class& value);
  static ExactValue sqrt_of(long value) { return sqrt_of(mpq_class(value)); }
  /// pi^(half_exponent/2)
  static ExactValue pi_power(long half_exponent);
  static ExactValue pi() { return pi_power(2); }

  /// Parses the canonical rendering `[-]a[/b][*sqrt(r)][*pi^(p/2)]`.
  static ExactValue parse(std::string_view text);

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  const mpq_class& magnitude() const { return q_; }
  const mpz_class& radicand() const { return r_; }
  long pi_half_exponent() const { return p_; }

  ExactValue operator-() const;
  ExactValue inverse() const;
  ExactValue pow(long k) const;

  friend ExactValue operator*(const ExactValue& a, const ExactValue& b);
  friend ExactValue operator/(const ExactValue& a, const ExactValue& b);
  ExactValue& operator*=(const ExactValue& b) { return *this = *this * b; }
  ExactValue& operator/=(const ExactValue& b) { return *this = *this / b; }

  friend bool operator==(const ExactValue& a, const ExactValue& b);

  /// Nearest double; +-inf or 0 when the value is outside double range.
  double to_double() const;
  /// log10 of the value, summed term by term so it never overflows. Requires v > 0.
  double log10() const;

  std::string to_string() const;

 private:
  int sign_ = 0;
  mpq_class q_{1};
  mpz_class r_{1};
  long p_ = 0;
};

/// Gamma at a positive integer or half-integer, exactly.
ExactValue gamma_exact(HalfInteger x);

/// Writes m = s^2 * t with t squarefree.
void squarefree_split(const mpz_class& m, mpz_class& s, mpz_class& t);

}  // namespace hsvol
