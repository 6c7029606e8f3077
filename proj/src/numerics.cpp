#include "wroot/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <regex>

namespace wroot {

namespace {

const std::regex& decimal_pattern()
{
  static const std::regex pattern(R"(^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$)");
  return pattern;
}

struct MpfrString {
  char* text = nullptr;
  ~MpfrString()
  {
    if (text != nullptr) mpfr_free_str(text);
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// PrecisionContext

PrecisionContext::PrecisionContext(int decimal_digits) : digits_(decimal_digits)
{
  if (decimal_digits < kMinDigits) {
    throw ConfigError("precision must be at least " + std::to_string(kMinDigits) +
                      " decimal digits, got " + std::to_string(decimal_digits));
  }
}

mpfr_prec_t PrecisionContext::bits() const
{
  const double bits = std::ceil((digits_ + kGuardDigits) * std::log2(10.0));
  return static_cast<mpfr_prec_t>(bits);
}

PrecisionContext make_context(int decimal_digits) { return PrecisionContext(decimal_digits); }

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(long numerator, long denominator) : Rational(mpz_class(numerator), mpz_class(denominator)) {}

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator)
{
  if (denominator == 0) throw ParseError("rational with zero denominator");
  q_ = mpq_class(numerator, denominator);
  q_.canonicalize();
}

Rational::Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text)
{
  const std::string s(text);
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    static const std::regex integer(R"(^\s*[+-]?\d+\s*$)");
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!std::regex_match(num, integer) || !std::regex_match(den, integer)) {
      throw ParseError("malformed rational '" + s + "'");
    }
    auto trim = [](const std::string& v) {
      const auto b = v.find_first_not_of(" \t");
      const auto e = v.find_last_not_of(" \t");
      std::string out = v.substr(b, e - b + 1);
      if (!out.empty() && out.front() == '+') out.erase(0, 1);
      return out;
    };
    const mpz_class d(trim(den), 10);
    if (d == 0) throw ParseError("rational with zero denominator: '" + s + "'");
    return Rational(mpz_class(trim(num), 10), d);
  }

  if (!std::regex_match(s, decimal_pattern())) throw ParseError("malformed number '" + s + "'");

  // Split into sign, digits, fractional digits and exponent; build exactly.
  std::string mantissa = s;
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
    mantissa = s.substr(0, e);
    exponent = std::stol(s.substr(e + 1));
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '+' || mantissa.front() == '-')) {
    negative = mantissa.front() == '-';
    mantissa.erase(0, 1);
  }
  std::string digits;
  if (const auto dot = mantissa.find('.'); dot != std::string::npos) {
    const std::string frac = mantissa.substr(dot + 1);
    digits = mantissa.substr(0, dot) + frac;
    exponent -= static_cast<long>(frac.size());
  } else {
    digits = mantissa;
  }
  if (digits.empty()) digits = "0";
  mpz_class value(digits, 10);
  if (negative) value = -value;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  return exponent >= 0 ? Rational(value * scale, mpz_class(1)) : Rational(value, scale);
}

std::string Rational::to_string() const
{
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& o)
{
  q_ += o.q_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o)
{
  q_ -= o.q_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o)
{
  q_ *= o.q_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o)
{
  if (o.is_zero()) throw EvaluationError("rational division by zero");
  q_ /= o.q_;
  return *this;
}

// ---------------------------------------------------------------------------
// Real

Real::Real(const PrecisionContext& ctx) : ctx_(ctx)
{
  mpfr_init2(value_, ctx.bits());
  mpfr_set_zero(value_, 1);
}

Real::Real(const PrecisionContext& ctx, long value) : Real(ctx) { mpfr_set_si(value_, value, MPFR_RNDN); }

Real::Real(const PrecisionContext& ctx, const Rational& value) : Real(ctx)
{
  mpfr_set_q(value_, value.get().get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other) : ctx_(other.ctx_)
{
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept : ctx_(other.ctx_)
{
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other)
{
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
    ctx_ = other.ctx_;
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept
{
  mpfr_swap(value_, other.value_);
  std::swap(ctx_, other.ctx_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

PrecisionContext Real::wider(const Real& a, const Real& b)
{
  return a.ctx_.decimal_digits() >= b.ctx_.decimal_digits() ? a.ctx_ : b.ctx_;
}

long Real::exponent10() const
{
  if (is_zero() || !is_finite()) return 0;
  mpfr_exp_t exp10 = 0;
  MpfrString s{mpfr_get_str(nullptr, &exp10, 10, 3, value_, MPFR_RNDN)};
  return static_cast<long>(exp10) - 1;
}

std::string Real::to_string(int significant) const
{
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return sign() < 0 ? "-inf" : "inf";
  significant = std::max(significant, 2);
  // mpfr_sprintf keeps this locale-independent and handles zero.
  char* out = nullptr;
  const std::string format = "%." + std::to_string(significant - 1) + "Re";
  mpfr_asprintf(&out, format.c_str(), value_);
  std::string result(out);
  mpfr_free_str(out);
  return result;
}

std::string Real::to_string() const { return to_string(ctx_.decimal_digits()); }

Real& Real::operator+=(const Real& o) { return *this = *this + o; }
Real& Real::operator-=(const Real& o) { return *this = *this - o; }
Real& Real::operator*=(const Real& o) { return *this = *this * o; }
Real& Real::operator/=(const Real& o) { return *this = *this / o; }

Real operator+(const Real& a, const Real& b)
{
  Real r(Real::wider(a, b));
  mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b)
{
  Real r(Real::wider(a, b));
  mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b)
{
  Real r(Real::wider(a, b));
  mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b)
{
  Real r(Real::wider(a, b));
  mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a)
{
  Real r(a.ctx_);
  mpfr_neg(r.value_, a.value_, MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, long b)
{
  Real r(a.ctx_);
  mpfr_add_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, long b)
{
  Real r(a.ctx_);
  mpfr_sub_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

Real operator-(long a, const Real& b)
{
  Real r(b.ctx_);
  mpfr_si_sub(r.value_, a, b.value_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, long b)
{
  Real r(a.ctx_);
  mpfr_mul_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

Real operator*(long a, const Real& b) { return b * a; }

Real operator/(const Real& a, long b)
{
  Real r(a.ctx_);
  mpfr_div_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

Real operator/(long a, const Real& b)
{
  Real r(b.ctx_);
  mpfr_si_div(r.value_, a, b.value_, MPFR_RNDN);
  return r;
}

namespace {

template <typename Fn>
Real unary(const Real& x, Fn fn)
{
  Real r(x.context());
  fn(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace

// Several mpfr entry points are macros, hence the lambdas.
Real abs(const Real& x)
{
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_abs(r, a, rnd); });
}
Real exp(const Real& x)
{
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_exp(r, a, rnd); });
}
Real log(const Real& x)
{
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_log(r, a, rnd); });
}
Real sin(const Real& x)
{
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_sin(r, a, rnd); });
}
Real cos(const Real& x)
{
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_cos(r, a, rnd); });
}
Real sqrt(const Real& x)
{
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_sqrt(r, a, rnd); });
}

Real pow(const Real& base, const Real& exponent)
{
  const PrecisionContext ctx = base.context().decimal_digits() >= exponent.context().decimal_digits()
                                   ? base.context()
                                   : exponent.context();
  Real r(ctx);
  mpfr_pow(r.get(), base.get(), exponent.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, long exponent)
{
  Real r(base.context());
  mpfr_pow_si(r.get(), base.get(), exponent, MPFR_RNDN);
  return r;
}

Real pi(const PrecisionContext& ctx)
{
  Real r(ctx);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

double ulp_distance(const Real& a, const Real& b)
{
  if (a == b) return 0.0;
  if (a.is_zero()) return std::numeric_limits<double>::infinity();
  // ulp(a) = 2^(exp(a) - prec(a)) for a normalized MPFR number.
  Real diff = abs(a - b);
  const mpfr_exp_t e = mpfr_get_exp(a.get());
  const mpfr_prec_t p = mpfr_get_prec(a.get());
  mpfr_mul_2si(diff.get(), diff.get(), static_cast<long>(p - e), MPFR_RNDN);
  return diff.to_double();
}

Real parse_real(const PrecisionContext& ctx, std::string_view text)
{
  const std::string s(text);
  if (!std::regex_match(s, decimal_pattern())) throw ParseError("malformed decimal '" + s + "'");
  Real r(ctx);
  char* end = nullptr;
  mpfr_strtofr(r.get(), s.c_str(), &end, 10, MPFR_RNDN);
  if (end == nullptr || *end != '\0') throw ParseError("malformed decimal '" + s + "'");
  return r;
}

std::string format_error(const Real& x)
{
  if (!x.is_finite()) return x.to_string(5);
  if (x.is_zero()) return "0.00000e0";
  Real magnitude = abs(x);
  mpfr_exp_t exp10 = 0;
  MpfrString digits{mpfr_get_str(nullptr, &exp10, 10, 5, magnitude.get(), MPFR_RNDN)};
  return "0." + std::string(digits.text) + "e" + std::to_string(exp10);
}

}  // namespace wroot
