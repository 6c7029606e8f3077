#include "wroot/order_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace wroot::oracle {

namespace {

constexpr std::array<std::string_view, kSymbolCount> kSymbolNames{
    "c2", "c3", "c4", "c5", "c6", "c7", "c8", "c9", "A''(1)", "A'''(1)", "B''(1)", "B'''(1)", "gamma", "a"};

std::size_t index(Symbol s) { return static_cast<std::size_t>(s); }

int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

std::string monomial_string(const Monomial& m)
{
  std::string out;
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += kSymbolNames[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

// Appends "coefficient monomial" with a leading sign handled by the caller.
std::string term_string(const Rational& magnitude, const Monomial& m)
{
  const std::string mono = monomial_string(m);
  if (mono.empty()) return magnitude.to_string();
  if (magnitude == Rational(1)) return mono;
  const std::string coef = magnitude.is_integer() ? magnitude.to_string() : "(" + magnitude.to_string() + ")";
  return coef + " " + mono;
}

std::string join_terms(const CoeffPoly::Terms& terms, const Rational& scale)
{
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, coef] : terms) {
    const Rational scaled = coef / scale;
    const bool negative = scaled.sign() < 0;
    const Rational magnitude = negative ? -scaled : scaled;
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += term_string(magnitude, m);
    first = false;
  }
  return out;
}

using Univariate = std::vector<Rational>;  // ascending powers

void trim(Univariate& p)
{
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Univariate remainder(Univariate num, const Univariate& den)
{
  trim(num);
  while (num.size() >= den.size() && !num.empty()) {
    const Rational factor = num.back() / den.back();
    const std::size_t shift = num.size() - den.size();
    for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= factor * den[i];
    num.pop_back();
    trim(num);
  }
  return num;
}

Univariate gcd(Univariate a, Univariate b)
{
  trim(a);
  trim(b);
  while (!b.empty()) {
    Univariate r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

Rational evaluate_univariate(const Univariate& p, const Rational& x)
{
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<mpz_class> divisors(mpz_class n)
{
  n = abs(n);
  if (n > mpz_class("1000000000000")) throw SeriesError("coefficients too large for rational root search");
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

std::vector<Rational> univariate_rational_roots(Univariate p)
{
  trim(p);
  std::vector<Rational> roots;
  if (p.size() <= 1) return roots;
  mpz_class common = 1;
  for (const auto& c : p) common = lcm(common, c.denominator());
  std::vector<mpz_class> ints;
  for (const auto& c : p) ints.push_back((c * Rational(common, mpz_class(1))).numerator());

  std::size_t lowest = 0;
  while (ints[lowest] == 0) ++lowest;
  if (lowest > 0) roots.emplace_back(0);
  if (lowest + 1 == ints.size()) return roots;

  for (const auto& num : divisors(ints[lowest])) {
    for (const auto& den : divisors(ints.back())) {
      for (int sign : {1, -1}) {
        const Rational candidate(mpz_class(sign * num), den);
        if (evaluate_univariate(p, candidate).is_zero() &&
            std::find(roots.begin(), roots.end(), candidate) == roots.end()) {
          roots.push_back(candidate);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

CoeffPoly sym(Symbol s) { return CoeffPoly::symbol(s); }

std::array<CoeffPoly, 4> constant_jet(const WeightJet& w)
{
  return {w.derivative(0), w.derivative(1), w.derivative(2), w.derivative(3)};
}

// Binomial shift: coefficients of p(1 + tau) in powers of tau.
std::vector<Rational> shift_to_one(const std::vector<Rational>& p)
{
  std::vector<Rational> out(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    mpz_class binom = 1;
    for (std::size_t k = 0; k <= j; ++k) {
      out[k] += p[j] * Rational(binom, mpz_class(1));
      binom = binom * mpz_class(static_cast<unsigned long>(j - k)) / mpz_class(static_cast<unsigned long>(k + 1));
    }
  }
  return out;
}

ESeries polynomial_at_one_plus(const std::vector<Rational>& p, const ESeries& tau)
{
  std::vector<CoeffPoly> coefficients;
  for (const auto& c : shift_to_one(p)) coefficients.emplace_back(c);
  return compose_into_polynomial(coefficients, tau);
}

int jet_exactness(const SymbolicScheme& scheme, int truncation, WeightRoute route)
{
  if (scheme.kind == SchemeKind::newton || route == WeightRoute::rational_function) return truncation;
  // Jets through W''' leave the weight exact modulo tau^4 = O(e^4); the
  // correction carries one more factor of e.
  return std::min(truncation, 4);
}

}  // namespace

Symbol c(int h)
{
  if (h < 2 || h > 9) throw SeriesError("c_h is available for h = 2..9, got " + std::to_string(h));
  return static_cast<Symbol>(h - 2);
}

std::string_view symbol_name(Symbol s) { return kSymbolNames[index(s)]; }

bool GrlexLess::operator()(const Monomial& lhs, const Monomial& rhs) const
{
  const int dl = total_degree(lhs);
  const int dr = total_degree(rhs);
  if (dl != dr) return dl < dr;
  // Equal degree: the monomial with the larger exponent on the earliest
  // symbol comes later.
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    if (lhs[i] != rhs[i]) return lhs[i] < rhs[i];
  }
  return false;
}

// ---------------------------------------------------------------------------
// CoeffPoly

CoeffPoly::CoeffPoly(const Rational& constant)
{
  if (!constant.is_zero()) terms_.emplace(Monomial{}, constant);
}

CoeffPoly CoeffPoly::symbol(Symbol s)
{
  Monomial m{};
  m[index(s)] = 1;
  return term(Rational(1), m);
}

CoeffPoly CoeffPoly::term(const Rational& coefficient, const Monomial& monomial)
{
  CoeffPoly p;
  p.add_term(monomial, coefficient);
  return p;
}

void CoeffPoly::add_term(const Monomial& m, const Rational& c)
{
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::optional<Rational> CoeffPoly::constant_value() const
{
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.begin()->first == Monomial{}) return terms_.begin()->second;
  return std::nullopt;
}

bool CoeffPoly::uses(Symbol s) const { return degree_in(s) > 0; }

int CoeffPoly::degree_in(Symbol s) const
{
  int d = 0;
  for (const auto& [m, coef] : terms_) d = std::max(d, static_cast<int>(m[index(s)]));
  return d;
}

CoeffPoly CoeffPoly::coefficient_of(Symbol s, int power) const
{
  CoeffPoly out;
  for (const auto& [m, coef] : terms_) {
    if (m[index(s)] != power) continue;
    Monomial reduced = m;
    reduced[index(s)] = 0;
    out.add_term(reduced, coef);
  }
  return out;
}

CoeffPoly CoeffPoly::substitute(Symbol s, const CoeffPoly& value) const
{
  CoeffPoly out;
  std::vector<CoeffPoly> powers{CoeffPoly(1)};
  for (const auto& [m, coef] : terms_) {
    const int k = m[index(s)];
    while (static_cast<int>(powers.size()) <= k) powers.push_back(powers.back() * value);
    Monomial reduced = m;
    reduced[index(s)] = 0;
    out += term(coef, reduced) * powers[static_cast<std::size_t>(k)];
  }
  return out;
}

Real CoeffPoly::evaluate(const std::function<Real(Symbol)>& value, const PrecisionContext& ctx) const
{
  Real sum(ctx);
  for (const auto& [m, coef] : terms_) {
    Real product(ctx, coef);
    for (std::size_t i = 0; i < kSymbolCount; ++i) {
      if (m[i] > 0) product *= wroot::pow(value(static_cast<Symbol>(i)), static_cast<long>(m[i]));
    }
    sum += product;
  }
  return sum;
}

std::string CoeffPoly::to_string() const { return join_terms(terms_, Rational(1)); }

std::string CoeffPoly::to_factored_string() const
{
  if (terms_.size() <= 1) return to_string();
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& [m, coef] : terms_) {
    num_gcd = gcd(num_gcd, coef.numerator());
    den_lcm = lcm(den_lcm, coef.denominator());
  }
  Rational content(num_gcd, den_lcm);
  if (terms_.begin()->second.sign() < 0) content = -content;
  const std::string bracket = join_terms(terms_, content);
  if (content == Rational(1)) return bracket;
  if (content == Rational(-1)) return "-[" + bracket + "]";
  return "(" + content.to_string() + ")[" + bracket + "]";
}

CoeffPoly& CoeffPoly::operator+=(const CoeffPoly& o)
{
  for (const auto& [m, coef] : o.terms_) add_term(m, coef);
  return *this;
}

CoeffPoly& CoeffPoly::operator-=(const CoeffPoly& o)
{
  for (const auto& [m, coef] : o.terms_) add_term(m, -coef);
  return *this;
}

CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b)
{
  CoeffPoly out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m;
      for (std::size_t i = 0; i < kSymbolCount; ++i) m[i] = static_cast<std::uint16_t>(ma[i] + mb[i]);
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

CoeffPoly operator-(const CoeffPoly& a)
{
  CoeffPoly out;
  for (const auto& [m, coef] : a.terms_) out.terms_.emplace(m, -coef);
  return out;
}

CoeffPoly pow(const CoeffPoly& base, int exponent)
{
  CoeffPoly out(1);
  for (int i = 0; i < exponent; ++i) out = out * base;
  return out;
}

std::vector<Rational> rational_roots(const CoeffPoly& p, Symbol s)
{
  if (p.is_zero()) throw SeriesError("rational_roots of the zero polynomial");
  // Group by the monomial in the other symbols; each group is univariate in s.
  std::map<Monomial, Univariate, GrlexLess> groups;
  for (const auto& [m, coef] : p.terms()) {
    Monomial rest = m;
    const std::size_t k = m[index(s)];
    rest[index(s)] = 0;
    Univariate& u = groups[rest];
    if (u.size() <= k) u.resize(k + 1);
    u[k] += coef;
  }
  std::optional<Univariate> common;
  for (auto& [rest, u] : groups) common = common ? gcd(*common, u) : gcd(u, Univariate{});
  return univariate_rational_roots(*common);
}

// ---------------------------------------------------------------------------
// ESeries

ESeries::ESeries(int truncation)
{
  if (truncation < 1) throw SeriesError("truncation order must be positive");
  coefficients_.resize(static_cast<std::size_t>(truncation) + 1);
}

ESeries ESeries::constant(int truncation, const CoeffPoly& value)
{
  ESeries s(truncation);
  s.coefficients_[0] = value;
  return s;
}

ESeries ESeries::variable(int truncation)
{
  ESeries s(truncation);
  s.coefficients_[1] = CoeffPoly(1);
  return s;
}

ESeries ESeries::from_coefficients(int truncation, std::vector<CoeffPoly> coefficients)
{
  ESeries s(truncation);
  for (std::size_t k = 0; k < coefficients.size() && k < s.coefficients_.size(); ++k) {
    s.coefficients_[k] = std::move(coefficients[k]);
  }
  return s;
}

std::string ESeries::to_string() const
{
  std::string out;
  for (int k = 0; k <= truncation(); ++k) {
    const CoeffPoly& c = (*this)[k];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    const std::string body = c.terms().size() > 1 ? "(" + c.to_string() + ")" : c.to_string();
    out += k == 0 ? body : body + (k == 1 ? " e" : " e^" + std::to_string(k));
  }
  if (out.empty()) out = "0";
  return out + " + O(e^" + std::to_string(truncation() + 1) + ")";
}

namespace {

void require_same_truncation(const ESeries& a, const ESeries& b)
{
  if (a.truncation() != b.truncation()) {
    throw SeriesError("mismatched truncation orders " + std::to_string(a.truncation()) + " and " +
                      std::to_string(b.truncation()));
  }
}

}  // namespace

ESeries& ESeries::operator+=(const ESeries& o)
{
  require_same_truncation(*this, o);
  for (std::size_t k = 0; k < coefficients_.size(); ++k) coefficients_[k] += o.coefficients_[k];
  return *this;
}

ESeries& ESeries::operator-=(const ESeries& o)
{
  require_same_truncation(*this, o);
  for (std::size_t k = 0; k < coefficients_.size(); ++k) coefficients_[k] -= o.coefficients_[k];
  return *this;
}

ESeries operator*(const ESeries& a, const ESeries& b)
{
  require_same_truncation(a, b);
  const int n = a.truncation();
  ESeries out(n);
  for (int i = 0; i <= n; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (b[j].is_zero()) continue;
      out.coefficient(i + j) += a[i] * b[j];
    }
  }
  return out;
}

ESeries operator*(const CoeffPoly& k, const ESeries& a)
{
  ESeries out(a.truncation());
  for (int i = 0; i <= a.truncation(); ++i) out.coefficient(i) = k * a[i];
  return out;
}

ESeries operator-(const ESeries& a)
{
  ESeries out(a.truncation());
  for (int i = 0; i <= a.truncation(); ++i) out.coefficient(i) = -a[i];
  return out;
}

ESeries series_mul(const ESeries& a, const ESeries& b) { return a * b; }

ESeries series_reciprocal(const ESeries& a)
{
  if (a[0] != CoeffPoly(1)) throw SeriesError("reciprocal needs a unit constant coefficient, got " + a[0].to_string());
  const int n = a.truncation();
  ESeries b(n);
  b.coefficient(0) = CoeffPoly(1);
  for (int k = 1; k <= n; ++k) {
    CoeffPoly acc;
    for (int j = 1; j <= k; ++j) {
      if (!a[j].is_zero() && !b[k - j].is_zero()) acc += a[j] * b[k - j];
    }
    b.coefficient(k) = -acc;
  }
  return b;
}

ESeries compose_into_polynomial(const std::vector<CoeffPoly>& coefficients, const ESeries& delta)
{
  if (!delta[0].is_zero()) throw SeriesError("composition needs a series with zero constant term");
  const int n = delta.truncation();
  // Horner; terms beyond delta^n vanish modulo e^(n+1).
  const std::size_t used = std::min(coefficients.size(), static_cast<std::size_t>(n) + 1);
  ESeries acc(n);
  for (std::size_t k = used; k-- > 0;) acc = ESeries::constant(n, coefficients[k]) + acc * delta;
  return acc;
}

ESeries expand_weight(const std::array<CoeffPoly, 4>& jet, const ESeries& tau)
{
  if (!tau[0].is_zero()) throw SeriesError("weight expansion needs tau = t - 1 with zero constant term");
  return compose_into_polynomial({jet[0], jet[1], Rational(1, 2) * jet[2], Rational(1, 6) * jet[3]}, tau);
}

ESeries expand_rational_weight(const RationalFunction& weight, const ESeries& tau)
{
  const ESeries num = polynomial_at_one_plus(weight.numerator, tau);
  const ESeries den = polynomial_at_one_plus(weight.denominator, tau);
  const std::optional<Rational> den_at_one = den[0].constant_value();
  if (!den_at_one || den_at_one->is_zero()) throw WeightDomainError("weight has a pole at t = 1");
  const CoeffPoly inverse(Rational(1) / *den_at_one);
  return inverse * (num * series_reciprocal(inverse * den));
}

std::vector<Rational> derivatives_at_one(const RationalFunction& weight, int order)
{
  const ESeries w = expand_rational_weight(weight, ESeries::variable(std::max(order, 1)));
  std::vector<Rational> out;
  mpz_class factorial = 1;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) factorial *= k;
    out.push_back(*w[k].constant_value() * Rational(factorial, mpz_class(1)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scheme expansion

std::vector<CoeffPoly> fprime_polynomial(int truncation)
{
  if (truncation > kMaxTruncation) {
    throw SeriesError("truncation order above " + std::to_string(kMaxTruncation) + " is not supported");
  }
  std::vector<CoeffPoly> out{CoeffPoly(1)};
  for (int k = 1; k <= truncation; ++k) out.push_back(Rational(k + 1) * sym(c(k + 1)));
  return out;
}

ESeries f_series(int truncation)
{
  if (truncation > kMaxTruncation) {
    throw SeriesError("truncation order above " + std::to_string(kMaxTruncation) + " is not supported");
  }
  ESeries s = ESeries::variable(truncation);
  for (int h = 2; h <= truncation; ++h) s.coefficient(h) = sym(c(h));
  return s;
}

ESeries fprime_series(int truncation) { return ESeries::from_coefficients(truncation, fprime_polynomial(truncation)); }

SymbolicScheme symbolic_scheme(const SchemeSpec& scheme)
{
  SymbolicScheme out;
  out.kind = scheme.kind;
  out.name = scheme.name;
  out.a = CoeffPoly(scheme.a);
  if (scheme.kind == SchemeKind::third_order) {
    out.first = constant_jet(*scheme.A);
    out.first_function = scheme.A->function();
  } else if (scheme.kind == SchemeKind::fourth_order) {
    out.first = constant_jet(*scheme.P);
    out.second = constant_jet(*scheme.Q);
    out.first_function = scheme.P->function();
    out.second_function = scheme.Q->function();
  }
  return out;
}

SymbolicScheme symbolic_catalog(std::string_view name, std::optional<Rational> gamma)
{
  if (gamma || !catalog_requires_gamma(name)) {
    return symbolic_scheme(catalog(name, catalog_requires_gamma(name) ? gamma : std::nullopt));
  }
  // gamma free: take the gamma-independent parts from the catalog at gamma = 0.
  SymbolicScheme out = symbolic_scheme(catalog(name, Rational(0)));
  const CoeffPoly g = sym(Symbol::gamma);
  if (name == "gamma3") {
    out.first[2] = Rational(2) * g;
    out.first_function.reset();
  } else {
    out.second[2] = CoeffPoly(2) - Rational(2) * g;
    out.second_function.reset();
  }
  return out;
}

SymbolicScheme theorem1_scheme()
{
  SymbolicScheme s;
  s.kind = SchemeKind::third_order;
  s.name = "third-order family";
  s.first = {CoeffPoly(1), CoeffPoly(Rational(-1, 2)), sym(Symbol::A2), sym(Symbol::A3)};
  s.a = CoeffPoly(1);
  return s;
}

SymbolicScheme theorem2_scheme(bool constrain_q2, bool symbolic_a)
{
  SymbolicScheme s;
  s.kind = SchemeKind::fourth_order;
  s.name = "fourth-order family";
  s.first = {CoeffPoly(1), CoeffPoly(Rational(-1, 2)), sym(Symbol::A2), sym(Symbol::A3)};
  s.second = {CoeffPoly(1), CoeffPoly(Rational(-1, 4)), constrain_q2 ? CoeffPoly(2) - sym(Symbol::A2) : sym(Symbol::B2),
              sym(Symbol::B3)};
  s.a = symbolic_a ? sym(Symbol::a) : CoeffPoly(Rational(2, 3));
  return s;
}

Expansion expand_scheme(const SymbolicScheme& scheme, int truncation, WeightRoute route)
{
  const int n = truncation;
  const ESeries e = ESeries::variable(n);
  const ESeries fx = f_series(n);
  const ESeries fpx = fprime_series(n);
  const ESeries inv_fpx = series_reciprocal(fpx);

  ESeries u = fx * inv_fpx;
  ESeries delta = e - scheme.a * u;
  ESeries fprime_y = compose_into_polynomial(fprime_polynomial(n), delta);
  ESeries t = fprime_y * inv_fpx;
  const ESeries tau = t - ESeries::constant(n, CoeffPoly(1));

  auto weight_of = [&](const std::array<CoeffPoly, 4>& jet, const std::optional<RationalFunction>& function) {
    if (route == WeightRoute::rational_function) {
      if (!function) throw SeriesError(scheme.name + ": no rational-function weight for the independent route");
      return expand_rational_weight(*function, tau);
    }
    return expand_weight(jet, tau);
  };

  ESeries weight = ESeries::constant(n, CoeffPoly(1));
  if (scheme.kind == SchemeKind::third_order) {
    weight = weight_of(scheme.first, scheme.first_function);
  } else if (scheme.kind == SchemeKind::fourth_order) {
    weight = weight_of(scheme.first, scheme.first_function) * weight_of(scheme.second, scheme.second_function);
  }
  ESeries correction = weight * u;
  ESeries error = e - correction;
  return Expansion{std::move(u),      std::move(delta),      std::move(fprime_y),
                   std::move(t),      std::move(weight),     std::move(correction),
                   std::move(error),  jet_exactness(scheme, n, route)};
}

ErrorEquation derive_error_equation(const SymbolicScheme& scheme, int truncation, WeightRoute route)
{
  const Expansion x = expand_scheme(scheme, truncation, route);
  for (int k = 1; k <= x.exact_through; ++k) {
    if (!x.error[k].is_zero()) return ErrorEquation{k, x.error[k]};
  }
  throw InconclusiveOrderError(scheme.name + ": every error coefficient through e^" + std::to_string(x.exact_through) +
                               " vanishes");
}

ErrorEquation derive_error_equation(const SchemeSpec& scheme, int truncation)
{
  return derive_error_equation(symbolic_scheme(scheme), truncation);
}

std::string format_error_equation(const ErrorEquation& eq)
{
  std::string coef = eq.leading_coefficient.to_factored_string();
  const bool bare_sum = eq.leading_coefficient.terms().size() > 1 && coef.front() != '(' && coef.front() != '-';
  if (bare_sum) coef = "(" + coef + ")";
  const std::string power = eq.order == 1 ? "e" : "e^" + std::to_string(eq.order);
  return "e_{n+1} = " + coef + " " + power + " + O(e^" + std::to_string(eq.order + 1) + ")";
}

// ---------------------------------------------------------------------------
// Published claims

namespace {

CoeffPoly general_third_order(const CoeffPoly& a2)
{
  // (1/2)[c3 - 4 c2^2 (-1 + A''(1))]
  return Rational(1, 2) * (sym(Symbol::c3) - Rational(4) * pow(sym(Symbol::c2), 2) * (CoeffPoly(-1) + a2));
}

CoeffPoly general_fourth_order(const CoeffPoly& p2, const CoeffPoly& p3, const CoeffPoly& q3)
{
  // (1/81)[-81 c2 c3 + 9 c4 + (309 + 24 P'' + 32 P''' + 32 Q''') c2^3]
  const CoeffPoly c2 = sym(Symbol::c2);
  return Rational(1, 81) * (Rational(-81) * c2 * sym(Symbol::c3) + Rational(9) * sym(Symbol::c4) +
                            (CoeffPoly(309) + Rational(24) * p2 + Rational(32) * p3 + Rational(32) * q3) * pow(c2, 3));
}

CoeffPoly fourth_order_bracket(const Rational& prefactor, const Rational& c2c3, const Rational& c4,
                               const CoeffPoly& c2cubed)
{
  const CoeffPoly c2 = sym(Symbol::c2);
  return prefactor * (c2c3 * c2 * sym(Symbol::c3) + c4 * sym(Symbol::c4) + c2cubed * pow(c2, 3));
}

CoeffPoly gamma_value(std::optional<Rational> gamma)
{
  return gamma ? CoeffPoly(*gamma) : sym(Symbol::gamma);
}

}  // namespace

PaperClaim paper_claim(std::string_view name, std::optional<Rational> gamma)
{
  const CoeffPoly c2 = sym(Symbol::c2);
  if (name == "newton") return {2, c2, "c2", "classical Newton error equation"};
  if (name == "weerakoon" || name == "homeier" || name == "chun") {
    const SchemeSpec s = catalog(name);
    return {3, general_third_order(CoeffPoly(s.A->derivative(2))),
            "(1/2)[c3 - 4 c2^2 (-1 + A''(1))] with A''(1) = " + s.A->derivative(2).to_string(),
            "published general third-order error equation"};
  }
  if (name == "gamma3") {
    const CoeffPoly g = gamma_value(gamma);
    return {3, Rational(1, 2) * ((CoeffPoly(4) - Rational(8) * g) * pow(c2, 2) + sym(Symbol::c3)),
            "(1/2)[(4 - 8 gamma) c2^2 + c3]", "published gamma-family third-order error equation"};
  }
  if (name == "m1") {
    return {4, fourth_order_bracket(Rational(1, 9), Rational(-9), Rational(1), CoeffPoly(33)),
            "(1/9)[-9 c2 c3 + c4 + 33 c2^3]", "published Method 1 error equation"};
  }
  if (name == "m2") {
    return {4, fourth_order_bracket(Rational(1, 9), Rational(-1), Rational(1, 9), CoeffPoly(Rational(79, 27))),
            "(1/9)[-c2 c3 + c4/9 + (79/27) c2^3]", "published Method 2 error equation"};
  }
  if (name == "m3") {
    return {4, fourth_order_bracket(Rational(1, 9), Rational(-1), Rational(1, 9), CoeffPoly(Rational(103, 27))),
            "(1/9)[-c2 c3 + c4/9 + (103/27) c2^3]", "published Method 3 error equation"};
  }
  if (name == "m4") {
    const CoeffPoly g = gamma_value(gamma);
    return {4, fourth_order_bracket(Rational(1, 27), Rational(-27), Rational(3), CoeffPoly(103) + Rational(16) * g),
            "(1/27)[-27 c2 c3 + 3 c4 + (103 + 16 gamma) c2^3]", "published Method 4 error equation"};
  }
  throw CatalogError("unknown method '" + std::string(name) + "'");
}

ClaimComparison compare_with_paper(std::string_view name, std::optional<Rational> gamma, int truncation)
{
  const SymbolicScheme scheme = symbolic_catalog(name, gamma);
  ClaimComparison out{derive_error_equation(scheme, truncation), paper_claim(name, gamma), false, false, {}};
  out.order_matches = out.derived.order == out.claim.order;
  out.coefficient_matches = out.order_matches && out.derived.leading_coefficient == out.claim.coefficient;

  if (out.order_matches && !out.coefficient_matches) {
    // A pure rational rescaling points at a misprinted prefactor.
    const auto& derived = out.derived.leading_coefficient.terms();
    const auto& printed = out.claim.coefficient.terms();
    if (!derived.empty() && derived.size() == printed.size()) {
      const Rational ratio = derived.begin()->second / printed.begin()->second;
      if (out.claim.coefficient * CoeffPoly(ratio) == out.derived.leading_coefficient) {
        out.notes.push_back("derived coefficient is " + ratio.to_string() +
                            " times the printed one; the printed bracket without its prefactor matches");
      }
    }
    if (out.notes.empty()) out.notes.push_back("derived and printed coefficients differ");
  }

  if (!out.order_matches) {
    const Expansion x = expand_scheme(scheme, truncation);
    const CoeffPoly& low = x.error[out.derived.order];
    std::string note = "derived order " + std::to_string(out.derived.order) + " (printed claim: order " +
                       std::to_string(out.claim.order) + "); e^" + std::to_string(out.derived.order) +
                       " coefficient " + low.to_factored_string();
    if (low.uses(Symbol::gamma)) {
      const auto roots = rational_roots(low, Symbol::gamma);
      note += "; vanishes for gamma in {";
      for (std::size_t i = 0; i < roots.size(); ++i) note += (i ? ", " : "") + roots[i].to_string();
      note += "}";
      out.notes.push_back(note);
      for (const auto& r : roots) {
        const CoeffPoly next = x.error[out.claim.order].substitute(Symbol::gamma, r);
        const CoeffPoly claim = out.claim.coefficient.substitute(Symbol::gamma, r);
        out.notes.push_back("at gamma = " + r.to_string() + ": e^" + std::to_string(out.claim.order) +
                            " coefficient " + next.to_factored_string() +
                            (next == claim ? " (matches the printed claim)" : " (differs from the printed claim)"));
      }
    } else {
      out.notes.push_back(note);
    }
  }
  return out;
}

VerificationReport verify_theorem(Theorem which, int truncation)
{
  VerificationReport r;
  r.theorem = which;
  const bool fourth = which == Theorem::fourth_order;
  const SymbolicScheme scheme = fourth ? theorem2_scheme() : theorem1_scheme();
  const Expansion x = expand_scheme(scheme, truncation);
  const int claimed = fourth ? 4 : 3;

  for (int k = 1; k < claimed; ++k) {
    r.vanishing.emplace_back(k, x.error[k]);
    if (!x.error[k].is_zero() && !r.counterexample) r.counterexample = std::make_pair(k, x.error[k]);
  }
  r.holds = !r.counterexample.has_value();
  r.result = derive_error_equation(scheme, truncation);
  r.printed = fourth ? general_fourth_order(sym(Symbol::A2), sym(Symbol::A3), sym(Symbol::B3))
                     : general_third_order(sym(Symbol::A2));
  r.matches_printed = r.result.order == claimed && r.result.leading_coefficient == r.printed;

  if (fourth) {
    const Expansion free_a = expand_scheme(theorem2_scheme(true, true), truncation);
    r.e2_with_free_a = free_a.error[2];
    if (!free_a.error[2].is_zero()) r.admissible_a = rational_roots(free_a.error[2], Symbol::a);
    const Expansion free_q2 = expand_scheme(theorem2_scheme(false, false), truncation);
    r.e3_with_free_q2 = free_q2.error[3];
  }
  return r;
}

}  // namespace wroot::oracle
