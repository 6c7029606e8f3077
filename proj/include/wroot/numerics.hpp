#pragma once

// Arbitrary-precision reals (MPFR) and exact rationals (GMP).

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <mpfr.h>

#include "wroot/errors.hpp"

namespace wroot {

/// Working precision in significant decimal digits. Reals carry
/// kGuardDigits extra digits internally so that short mantissas printed
/// from them are stable.
class PrecisionContext {
 public:
  static constexpr int kMinDigits = 16;
  static constexpr int kDefaultDigits = 200;
  static constexpr int kGuardDigits = 10;

  PrecisionContext() : PrecisionContext(kDefaultDigits) {}
  explicit PrecisionContext(int decimal_digits);

  int decimal_digits() const { return digits_; }
  mpfr_prec_t bits() const;

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

 private:
  int digits_;
};

PrecisionContext make_context(int decimal_digits);

class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT: implicit by intent
  Rational(long numerator, long denominator);
  Rational(const mpz_class& numerator, const mpz_class& denominator);
  explicit Rational(const mpq_class& q);

  /// Accepts "p", "p/q", or a decimal in fixed or scientific notation;
  /// decimals convert exactly.
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& get() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }
  std::string to_string() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

/// MPFR-backed real bound to a precision context. Binary operations
/// produce a value in the wider of the two operand contexts.
class Real {
 public:
  explicit Real(const PrecisionContext& ctx);
  Real(const PrecisionContext& ctx, long value);
  Real(const PrecisionContext& ctx, const Rational& value);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  const PrecisionContext& context() const { return ctx_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  long exponent10() const;

  /// Scientific notation with `significant` digits, e.g. "4.96511e+00".
  std::string to_string(int significant) const;
  /// Scientific notation at the full working precision.
  std::string to_string() const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator-(const Real& a);

  friend Real operator+(const Real& a, long b);
  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator-(const Real& a, long b);
  friend Real operator-(long a, const Real& b);
  friend Real operator*(const Real& a, long b);
  friend Real operator*(long a, const Real& b);
  friend Real operator/(const Real& a, long b);
  friend Real operator/(long a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.value_, b.value_) != 0; }

 private:
  static PrecisionContext wider(const Real& a, const Real& b);

  mpfr_t value_;
  PrecisionContext ctx_;
};

Real abs(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real sqrt(const Real& x);
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, long exponent);
Real pi(const PrecisionContext& ctx);

/// Distance between `a` and `b` in units of the last place of `a`.
double ulp_distance(const Real& a, const Real& b);

/// Parses a signed decimal, optionally with an exponent ("-1.5e-3").
Real parse_real(const PrecisionContext& ctx, std::string_view text);

/// Magnitude as a 5-digit mantissa in the "0.ddddde-k" table style.
std::string format_error(const Real& x);

}  // namespace wroot
