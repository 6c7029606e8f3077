#include "wroot/weights.hpp"

#include <algorithm>
#include <sstream>

namespace wroot {

namespace {

template <typename T>
T horner(const std::vector<Rational>& coefficients, const T& t, const T& zero)
{
  T acc = zero;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * t + T(*it);
  return acc;
}

Real horner_real(const std::vector<Rational>& coefficients, const Real& t)
{
  Real acc(t.context());
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * t + Real(t.context(), *it);
  return acc;
}

std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b)
{
  std::vector<Rational> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::string describe_pole(const std::vector<Rational>& denominator)
{
  if (denominator.size() == 2 && !denominator[1].is_zero()) {
    return "t = " + (-denominator[0] / denominator[1]).to_string();
  }
  return "a zero of the denominator";
}

}  // namespace

RationalFunction RationalFunction::polynomial(std::vector<Rational> coefficients)
{
  return RationalFunction{std::move(coefficients), {Rational(1)}};
}

Real RationalFunction::evaluate(const Real& t) const
{
  const Real den = horner_real(denominator, t);
  if (den.is_zero()) throw WeightDomainError("weight evaluated at its pole " + describe_pole(denominator));
  return horner_real(numerator, t) / den;
}

Rational RationalFunction::evaluate(const Rational& t) const
{
  const Rational den = horner(denominator, t, Rational(0));
  if (den.is_zero()) throw WeightDomainError("weight evaluated at its pole " + describe_pole(denominator));
  return horner(numerator, t, Rational(0)) / den;
}

RationalFunction RationalFunction::operator*(const RationalFunction& other) const
{
  return RationalFunction{multiply(numerator, other.numerator), multiply(denominator, other.denominator)};
}

WeightJet::WeightJet(std::string formula, RationalFunction function, std::array<Rational, 4> jet)
    : formula_(std::move(formula)), function_(std::move(function)), jet_(std::move(jet))
{
}

Real WeightJet::evaluate(const Real& t) const
{
  try {
    return function_.evaluate(t);
  } catch (const WeightDomainError& e) {
    throw WeightDomainError(formula_ + ": " + e.what());
  }
}

Real evaluate_weight(const WeightJet& weight, const Real& t) { return weight.evaluate(t); }

// ---------------------------------------------------------------------------
// Schemes

SchemeSpec make_newton()
{
  SchemeSpec s;
  s.kind = SchemeKind::newton;
  s.name = "newton";
  s.label = "Newton";
  return s;
}

SchemeSpec make_third_order(std::string name, WeightJet A)
{
  SchemeSpec s;
  s.kind = SchemeKind::third_order;
  s.label = name;
  s.name = std::move(name);
  s.A = std::move(A);
  s.a = Rational(1);
  return s;
}

SchemeSpec make_fourth_order(std::string name, WeightJet P, WeightJet Q, Rational a)
{
  SchemeSpec s;
  s.kind = SchemeKind::fourth_order;
  s.label = name;
  s.name = std::move(name);
  s.P = std::move(P);
  s.Q = std::move(Q);
  s.a = std::move(a);
  return s;
}

// ---------------------------------------------------------------------------
// Theorem conditions

bool ConditionReport::passed() const
{
  return std::all_of(checks.begin(), checks.end(), [](const ConditionCheck& c) { return c.passed; });
}

std::string ConditionReport::summary() const
{
  std::ostringstream out;
  for (const auto& c : checks) {
    out << "  " << c.name << " = " << c.actual.to_string() << " (required " << c.expected.to_string() << ") "
        << (c.passed ? "ok" : "FAILED") << '\n';
  }
  for (const auto& [name, value] : recorded) out << "  " << name << " = " << value.to_string() << " (free)\n";
  return out.str();
}

namespace {

ConditionCheck require(std::string name, const Rational& expected, const Rational& actual)
{
  return ConditionCheck{std::move(name), expected, actual, expected == actual};
}

}  // namespace

ConditionReport check_third_order(const WeightJet& A)
{
  ConditionReport r;
  r.checks.push_back(require("A(1)", Rational(1), A.derivative(0)));
  r.checks.push_back(require("A'(1)", Rational(-1, 2), A.derivative(1)));
  r.recorded.emplace_back("A''(1)", A.derivative(2));
  return r;
}

ConditionReport check_fourth_order(const WeightJet& P, const WeightJet& Q, const Rational& a)
{
  ConditionReport r;
  r.checks.push_back(require("a", Rational(2, 3), a));
  r.checks.push_back(require("P(1)", Rational(1), P.derivative(0)));
  r.checks.push_back(require("P'(1)", Rational(-1, 2), P.derivative(1)));
  r.checks.push_back(require("Q(1)", Rational(1), Q.derivative(0)));
  r.checks.push_back(require("Q'(1)", Rational(-1, 4), Q.derivative(1)));
  r.checks.push_back(require("Q''(1)", Rational(2) - P.derivative(2), Q.derivative(2)));
  r.recorded.emplace_back("P''(1)", P.derivative(2));
  r.recorded.emplace_back("P'''(1)", P.derivative(3));
  r.recorded.emplace_back("Q'''(1)", Q.derivative(3));
  return r;
}

ConditionReport check_conditions(const SchemeSpec& scheme)
{
  switch (scheme.kind) {
    case SchemeKind::newton:
      return {};
    case SchemeKind::third_order:
      return check_third_order(*scheme.A);
    case SchemeKind::fourth_order:
      return check_fourth_order(*scheme.P, *scheme.Q, scheme.a);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

using R = Rational;

WeightJet weerakoon_weight()
{
  return WeightJet("2/(1+t)", RationalFunction{{R(2)}, {R(1), R(1)}}, {R(1), R(-1, 2), R(1, 2), R(-3, 4)});
}

WeightJet homeier_weight()
{
  return WeightJet("(1+t)/(2t)", RationalFunction{{R(1), R(1)}, {R(0), R(2)}}, {R(1), R(-1, 2), R(1), R(-3)});
}

WeightJet chun_weight()
{
  return WeightJet("(3-t)/2", RationalFunction::polynomial({R(3, 2), R(-1, 2)}), {R(1), R(-1, 2), R(0), R(0)});
}

std::string gamma_suffix(const Rational& gamma) { return " [gamma=" + gamma.to_string() + "]"; }

}  // namespace

const std::vector<std::string>& catalog_names()
{
  static const std::vector<std::string> names{"newton", "weerakoon", "homeier", "chun", "gamma3",
                                              "m1",     "m2",        "m3",      "m4"};
  return names;
}

bool catalog_requires_gamma(std::string_view name) { return name == "gamma3" || name == "m4"; }

SchemeSpec catalog(std::string_view name, std::optional<Rational> gamma)
{
  if (std::find(catalog_names().begin(), catalog_names().end(), name) == catalog_names().end()) {
    throw CatalogError("unknown method '" + std::string(name) + "'");
  }
  if (catalog_requires_gamma(name) && !gamma) {
    throw CatalogError("method '" + std::string(name) + "' requires a gamma value");
  }

  SchemeSpec s;
  if (name == "newton") {
    s = make_newton();
  } else if (name == "weerakoon") {
    s = make_third_order("weerakoon", weerakoon_weight());
    s.label = "Weerakoon";
  } else if (name == "homeier") {
    s = make_third_order("homeier", homeier_weight());
    s.label = "Homeier";
  } else if (name == "chun") {
    s = make_third_order("chun", chun_weight());
    s.label = "Chun";
  } else if (name == "gamma3") {
    const R& g = *gamma;
    // (3-t)/2 + g (t-1)^2 = (3/2 + g) - (1/2 + 2g) t + g t^2
    WeightJet A("(3-t)/2+gamma(t-1)^2" + gamma_suffix(g),
                RationalFunction::polynomial({R(3, 2) + g, -(R(1, 2) + R(2) * g), g}),
                {R(1), R(-1, 2), R(2) * g, R(0)});
    s = make_third_order("gamma3", std::move(A));
    s.label = "gamma3(" + g.to_string() + ")";
  } else if (name == "m1") {
    WeightJet Q("2-(7/4)t+(3/4)t^2", RationalFunction::polynomial({R(2), R(-7, 4), R(3, 4)}),
                {R(1), R(-1, 4), R(3, 2), R(0)});
    s = make_fourth_order("m1", weerakoon_weight(), std::move(Q));
    s.label = "Method 1";
  } else if (name == "m2") {
    WeightJet Q("7/4-(5/4)t+(1/2)t^2", RationalFunction::polynomial({R(7, 4), R(-5, 4), R(1, 2)}),
                {R(1), R(-1, 4), R(1), R(0)});
    s = make_fourth_order("m2", homeier_weight(), std::move(Q));
    s.label = "Method 2";
  } else if (name == "m3") {
    WeightJet Q("9/4-(9/4)t+t^2", RationalFunction::polynomial({R(9, 4), R(-9, 4), R(1)}),
                {R(1), R(-1, 4), R(2), R(0)});
    s = make_fourth_order("m3", chun_weight(), std::move(Q));
    s.label = "Method 3";
  } else {  // m4
    const R& g = *gamma;
    // 3/2 - t/2 + (t-1)^2 = 5/2 - (5/2) t + t^2
    WeightJet P("3/2-t/2+(t-1)^2", RationalFunction::polynomial({R(5, 2), R(-5, 2), R(1)}),
                {R(1), R(-1, 2), R(2), R(0)});
    WeightJet Q("(9/4-gamma)+(2gamma-9/4)t+(1-gamma)t^2" + gamma_suffix(g),
                RationalFunction::polynomial({R(9, 4) - g, R(2) * g - R(9, 4), R(1) - g}),
                {R(1), R(-1, 4), R(2) - R(2) * g, R(0)});
    s = make_fourth_order("m4", std::move(P), std::move(Q));
    s.label = "Method 4(" + g.to_string() + ")";
  }
  s.gamma = gamma && catalog_requires_gamma(name) ? gamma : std::nullopt;
  return s;
}

}  // namespace wroot
