#pragma once

// Weight functions of t = f'(y)/f'(x) and the catalog of two-step schemes
// built from them.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wroot/numerics.hpp"

namespace wroot {

/// Quotient of two polynomials in t with rational coefficients, stored in
/// ascending powers.
struct RationalFunction {
  std::vector<Rational> numerator;
  std::vector<Rational> denominator{Rational(1)};

  static RationalFunction polynomial(std::vector<Rational> coefficients);

  /// Throws WeightDomainError where the denominator vanishes.
  Real evaluate(const Real& t) const;
  Rational evaluate(const Rational& t) const;
  RationalFunction operator*(const RationalFunction& other) const;
};

/// A weight W(t) together with W(1), W'(1), W''(1), W'''(1). The jet is
/// stored, not derived, so condition checks stay exact; tests compare it
/// against the evaluator.
class WeightJet {
 public:
  WeightJet(std::string formula, RationalFunction function, std::array<Rational, 4> jet);

  const std::string& formula() const { return formula_; }
  const RationalFunction& function() const { return function_; }
  const std::array<Rational, 4>& jet() const { return jet_; }
  const Rational& derivative(int order) const { return jet_.at(static_cast<std::size_t>(order)); }

  Real evaluate(const Real& t) const;

 private:
  std::string formula_;
  RationalFunction function_;
  std::array<Rational, 4> jet_;
};

Real evaluate_weight(const WeightJet& weight, const Real& t);

enum class SchemeKind { newton, third_order, fourth_order };

/// Newton, x_{n+1} = x_n - A(t) u_n, or x_{n+1} = x_n - P(t) Q(t) u_n with
/// u_n = f(x_n)/f'(x_n), y_n = x_n - a u_n and t = f'(y_n)/f'(x_n).
struct SchemeSpec {
  SchemeKind kind = SchemeKind::newton;
  std::string name;
  std::string label;
  std::optional<WeightJet> A;
  std::optional<WeightJet> P;
  std::optional<WeightJet> Q;
  Rational a{1};
  std::optional<Rational> gamma;

  /// Function and derivative evaluations per iteration.
  int evaluations() const { return kind == SchemeKind::newton ? 2 : 3; }
};

SchemeSpec make_newton();
SchemeSpec make_third_order(std::string name, WeightJet A);
SchemeSpec make_fourth_order(std::string name, WeightJet P, WeightJet Q, Rational a = Rational(2, 3));

struct ConditionCheck {
  std::string name;  // e.g. "A'(1)"
  Rational expected;
  Rational actual;
  bool passed;
};

struct ConditionReport {
  std::vector<ConditionCheck> checks;
  /// Free jet values that enter the error equation.
  std::vector<std::pair<std::string, Rational>> recorded;

  bool passed() const;
  std::string summary() const;
};

ConditionReport check_third_order(const WeightJet& A);
ConditionReport check_fourth_order(const WeightJet& P, const WeightJet& Q, const Rational& a);
ConditionReport check_conditions(const SchemeSpec& scheme);

const std::vector<std::string>& catalog_names();
bool catalog_requires_gamma(std::string_view name);
/// Throws CatalogError on an unknown name or a missing gamma.
SchemeSpec catalog(std::string_view name, std::optional<Rational> gamma = std::nullopt);

}  // namespace wroot
