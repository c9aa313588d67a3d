#include "hsvol/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hsvol {

namespace {

// Trial division beyond this bound is never reached by the closed forms we
// evaluate; hitting it means a caller built an unreasonable radicand.
constexpr unsigned long kTrialDivisionLimit = 10'000'000UL;

double log10_mpz(const mpz_class& z) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
  return std::log10(mantissa) + static_cast<double>(exponent) * std::log10(2.0);
}

mpz_class factorial(unsigned long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

}  // namespace

void squarefree_split(const mpz_class& m, mpz_class& s, mpz_class& t) {
  if (m <= 0) throw std::domain_error("squarefree_split: argument must be positive");
  s = 1;
  t = 1;
  mpz_class rest = m;
  // After removing every factor below i with i^3 > rest, rest has at most two
  // prime factors, so it is either squarefree or a perfect square.
  for (unsigned long i = 2; mpz_class(i) * i * i <= rest; ++i) {
    if (i > kTrialDivisionLimit) throw std::domain_error("squarefree_split: radicand too large");
    unsigned exponent = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), i)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), i);
      ++exponent;
    }
    for (unsigned k = 0; k < exponent / 2; ++k) s *= i;
    if (exponent % 2 == 1) t *= i;
  }
  if (rest > 1) {
    if (mpz_perfect_square_p(rest.get_mpz_t())) {
      mpz_class root;
      mpz_sqrt(root.get_mpz_t(), rest.get_mpz_t());
      s *= root;
    } else {
      t *= rest;
    }
  }
}

ExactValue::ExactValue() = default;

ExactValue ExactValue::integer(long value) { return rational(mpq_class(value)); }

ExactValue ExactValue::rational(long num, long den) {
  if (den == 0) throw std::domain_error("ExactValue: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return rational(q);
}

ExactValue ExactValue::rational(const mpq_class& value) {
  ExactValue out;
  const int s = sgn(value);
  if (s == 0) return out;
  out.sign_ = s;
  out.q_ = abs(value);
  out.q_.canonicalize();
  return out;
}

ExactValue ExactValue::sqrt_of(const mpq_class& value) {
  if (sgn(value) < 0) throw std::domain_error("ExactValue::sqrt_of: negative argument");
  if (sgn(value) == 0) return {};
  mpq_class v = value;
  v.canonicalize();
  // sqrt(n/d) = sqrt(n*d)/d
  const mpz_class den = v.get_den();
  mpz_class s, t;
  squarefree_split(v.get_num() * den, s, t);
  ExactValue out;
  out.sign_ = 1;
  out.q_ = mpq_class(s, den);
  out.q_.canonicalize();
  out.r_ = t;
  return out;
}

ExactValue ExactValue::pi_power(long half_exponent) {
  ExactValue out = integer(1);
  out.p_ = half_exponent;
  return out;
}

ExactValue ExactValue::operator-() const {
  ExactValue out = *this;
  out.sign_ = -sign_;
  return out;
}

ExactValue ExactValue::inverse() const {
  if (is_zero()) throw std::domain_error("ExactValue: division by zero");
  // 1/(q sqrt(r)) = sqrt(r)/(q r)
  ExactValue out;
  out.sign_ = sign_;
  out.q_ = 1 / (q_ * mpq_class(r_));
  out.q_.canonicalize();
  out.r_ = r_;
  out.p_ = -p_;
  return out;
}

ExactValue ExactValue::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  if (k == 0) return integer(1);
  if (is_zero()) return {};
  ExactValue out;
  out.sign_ = (sign_ < 0 && k % 2 == 1) ? -1 : 1;
  mpz_class num, den, rad;
  mpz_pow_ui(num.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(den.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(rad.get_mpz_t(), r_.get_mpz_t(), static_cast<unsigned long>(k / 2));
  out.q_ = mpq_class(num * rad, den);
  out.q_.canonicalize();
  out.r_ = (k % 2 == 1) ? r_ : mpz_class(1);
  out.p_ = p_ * k;
  return out;
}

ExactValue operator*(const ExactValue& a, const ExactValue& b) {
  if (a.is_zero() || b.is_zero()) return {};
  // sqrt(r1) sqrt(r2) = g sqrt((r1/g)(r2/g)); both cofactors are squarefree and coprime.
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.r_.get_mpz_t(), b.r_.get_mpz_t());
  ExactValue out;
  out.sign_ = a.sign_ * b.sign_;
  out.r_ = (a.r_ / g) * (b.r_ / g);
  out.q_ = a.q_ * b.q_ * mpq_class(g);
  out.q_.canonicalize();
  out.p_ = a.p_ + b.p_;
  return out;
}

ExactValue operator/(const ExactValue& a, const ExactValue& b) { return a * b.inverse(); }

bool operator==(const ExactValue& a, const ExactValue& b) {
  return a.sign_ == b.sign_ && a.q_ == b.q_ && a.r_ == b.r_ && a.p_ == b.p_;
}

double ExactValue::to_double() const {
  if (is_zero()) return 0.0;
  long e_num = 0, e_den = 0, e_rad = 0;
  const double m_num = mpz_get_d_2exp(&e_num, q_.get_num_mpz_t());
  const double m_den = mpz_get_d_2exp(&e_den, q_.get_den_mpz_t());
  double m_rad = mpz_get_d_2exp(&e_rad, r_.get_mpz_t());
  if (e_rad % 2 != 0) {
    m_rad *= 2.0;
    e_rad -= 1;
  }
  double mantissa = m_num / m_den * std::sqrt(m_rad);
  long exponent = e_num - e_den + e_rad / 2;

  const double pi_factor = std::pow(std::numbers::pi, static_cast<double>(p_) / 2.0);
  if (std::isnormal(pi_factor)) {
    mantissa *= pi_factor;
  } else {
    const double t = static_cast<double>(p_) / 2.0 * std::log2(std::numbers::pi);
    const double whole = std::floor(t);
    mantissa *= std::exp2(t - whole);
    exponent += static_cast<long>(whole);
  }
  // ldexp saturates to inf/0 for out-of-range exponents
  const int clamped = static_cast<int>(std::clamp(exponent, -100000L, 100000L));
  return sign_ * std::ldexp(mantissa, clamped);
}

double ExactValue::log10() const {
  if (sign_ <= 0) throw std::domain_error("ExactValue::log10: value must be positive");
  return log10_mpz(q_.get_num()) - log10_mpz(q_.get_den()) + 0.5 * log10_mpz(r_) +
         static_cast<double>(p_) / 2.0 * std::log10(std::numbers::pi);
}

std::string ExactValue::to_string() const {
  if (is_zero()) return "0";
  std::string out = sign_ < 0 ? "-" : "";
  out += q_.get_num().get_str();
  if (q_.get_den() != 1) out += "/" + q_.get_den().get_str();
  if (r_ != 1) out += "*sqrt(" + r_.get_str() + ")";
  if (p_ != 0) out += "*pi^(" + std::to_string(p_) + "/2)";
  return out;
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ == text_.size(); }
  bool accept(std::string_view token) {
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }
  void expect(std::string_view token) {
    if (!accept(token)) fail();
  }
  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail();
    return std::string(text_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail() const {
    throw std::invalid_argument("ExactValue::parse: malformed value '" + std::string(text_) + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ExactValue ExactValue::parse(std::string_view text) {
  Cursor cur(text);
  const bool negative = cur.accept("-");
  const mpz_class num(cur.digits());
  mpz_class den = 1;
  if (cur.accept("/")) den = mpz_class(cur.digits());
  if (den == 0) cur.fail();
  mpq_class q(negative ? mpz_class(-num) : num, den);
  q.canonicalize();
  ExactValue out = rational(q);
  if (out.is_zero()) {
    if (!cur.done()) cur.fail();
    return out;
  }
  if (cur.accept("*sqrt(")) {
    const mpz_class rad(cur.digits());
    cur.expect(")");
    if (rad == 0) cur.fail();
    out *= sqrt_of(mpq_class(rad));
  }
  if (cur.accept("*pi^(")) {
    const bool neg_p = cur.accept("-");
    const long p = std::stol(cur.digits());
    cur.expect("/2)");
    out *= pi_power(neg_p ? -p : p);
  }
  if (!cur.done()) cur.fail();
  return out;
}

ExactValue gamma_exact(HalfInteger x) {
  const long twice = x.twice();
  if (twice <= 0) throw std::domain_error("gamma_exact: argument must be positive");
  if (twice % 2 == 0) {
    return ExactValue::rational(mpq_class(factorial(static_cast<unsigned long>(twice / 2 - 1))));
  }
  // Gamma(k + 1/2) = (2k)! / (4^k k!) sqrt(pi)
  const unsigned long k = static_cast<unsigned long>((twice - 1) / 2);
  mpz_class four_k;
  mpz_ui_pow_ui(four_k.get_mpz_t(), 4, k);
  mpq_class q(factorial(2 * k), four_k * factorial(k));
  q.canonicalize();
  return ExactValue::rational(q) * ExactValue::pi_power(1);
}

}  // namespace hsvol
