#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "wroot/order_oracle.hpp"

using namespace wroot;
using namespace wroot::oracle;

namespace {

const CoeffPoly C2 = CoeffPoly::symbol(c(2));
const CoeffPoly C3 = CoeffPoly::symbol(c(3));
const CoeffPoly C4 = CoeffPoly::symbol(c(4));
const CoeffPoly G = CoeffPoly::symbol(Symbol::gamma);
const CoeffPoly AA2 = CoeffPoly::symbol(Symbol::A2);

CoeffPoly q(long p, long d = 1) { return CoeffPoly(Rational(p, d)); }

ESeries series(int n, std::vector<CoeffPoly> coefficients) { return ESeries::from_coefficients(n, std::move(coefficients)); }

// Small random series over c2, c3 with coefficients in {-3..3}/{1..3}.
struct RandomSeries {
  std::mt19937 rng{20240611};

  CoeffPoly coefficient()
  {
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3), pick(0, 3);
    const CoeffPoly monomials[] = {q(1), C2, C3, C2 * C3};
    return q(num(rng), den(rng)) * monomials[pick(rng)] + q(num(rng), den(rng));
  }

  ESeries operator()(int n)
  {
    std::vector<CoeffPoly> cs;
    for (int k = 0; k <= n; ++k) cs.push_back(coefficient());
    return series(n, cs);
  }
};

}  // namespace

TEST_CASE("coefficient polynomial basics")
{
  CHECK((C2 + C3 - C2) == C3);
  CHECK((C2 * C3 - C3 * C2).is_zero());
  CHECK(pow(C2 + 1, 2) == C2 * C2 + 2 * C2 + 1);
  CHECK(q(3, 6).constant_value() == Rational(1, 2));
  CHECK_FALSE(C2.constant_value());
  CHECK((C2 * C2 * G).degree_in(Symbol::c2) == 2);
  CHECK((C2 * G + C3).coefficient_of(Symbol::gamma, 1) == C2);
  CHECK((C2 * G + C3).substitute(Symbol::gamma, q(2)) == 2 * C2 + C3);
  CHECK((C2 * G).uses(Symbol::gamma));
  CHECK_FALSE(C3.uses(Symbol::gamma));
}

TEST_CASE("canonical text")
{
  CHECK((q(1, 2) * C3 + 2 * C2 * C2 - 2 * C2 * C2 * AA2).to_string() == "(1/2) c3 + 2 c2^2 - 2 c2^2 A''(1)");
  CHECK((q(1, 2) * C3 + 2 * C2 * C2 - 2 * C2 * C2 * AA2).to_factored_string() ==
        "(1/2)[c3 + 4 c2^2 - 4 c2^2 A''(1)]");
  CHECK(C2.to_string() == "c2");
  CHECK(CoeffPoly().to_string() == "0");
  CHECK(symbol_name(Symbol::B3) == "B'''(1)");
}

TEST_CASE("rational roots")
{
  CHECK(rational_roots(q(16, 9) * C2 * C2 * (G - 1), Symbol::gamma) == std::vector<Rational>{Rational(1)});
  CHECK(rational_roots(C2 * (2 - 3 * CoeffPoly::symbol(Symbol::a)), Symbol::a) == std::vector<Rational>{Rational(2, 3)});
  CHECK(rational_roots(G * G + 1, Symbol::gamma).empty());
  // Roots common to every c-monomial coefficient only.
  CHECK(rational_roots(C2 * (G - 1) + C3 * (G - 2), Symbol::gamma).empty());
  CHECK(rational_roots(C2 * (G - 1) * (2 * G + 1) + C3 * (G - 1), Symbol::gamma) == std::vector<Rational>{Rational(1)});
}

TEST_CASE("series arithmetic")
{
  const ESeries e = ESeries::variable(5);
  CHECK((e * e) == series(5, {0, 0, 1, 0, 0, 0}));
  const ESeries a = series(5, {1, C2});
  const ESeries b = series(5, {1, -C2});
  CHECK(a * b == series(5, {1, 0, -C2 * C2}));
  CHECK_THROWS_AS(ESeries::variable(3) + ESeries::variable(4), SeriesError);
  // Terms past the truncation are dropped.
  CHECK(pow(C2, 1) * (series(2, {0, 1}) * series(2, {0, 0, 1})) == ESeries(2));
}

TEST_CASE("reciprocal multiplies back to one")
{
  RandomSeries random;
  for (int i = 0; i < 20; ++i) {
    ESeries s = random(5);
    s.coefficient(0) = 1;
    CHECK(s * series_reciprocal(s) == ESeries::constant(5, 1));
  }
  CHECK_THROWS_AS(series_reciprocal(series(3, {2, 1})), SeriesError);
  CHECK_THROWS_AS(series_reciprocal(series(3, {C2, 1})), SeriesError);
}

TEST_CASE("ring laws on random series")
{
  RandomSeries random;
  for (int i = 0; i < 25; ++i) {
    const ESeries a = random(4), b = random(4), c = random(4);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == ESeries(4));
    CHECK(a * ESeries::constant(4, 1) == a);
    CHECK(series_mul(a, b) == a * b);
  }
}

TEST_CASE("composition")
{
  const int n = 5;
  // f'(alpha + delta)/f'(alpha) with delta = c2 e^2: 1 + 2 c2^2 e^2 + O(e^3).
  const ESeries fy = compose_into_polynomial(fprime_polynomial(n), series(n, {0, 0, C2}));
  CHECK(fy[0] == 1);
  CHECK(fy[1].is_zero());
  CHECK(fy[2] == 2 * C2 * C2);
  // delta = e/3 + (2/3) c2 e^2: 1 + (2/3) c2 e + (1/3)(4 c2^2 + c3) e^2 + ...
  const ESeries fy4 = compose_into_polynomial(fprime_polynomial(n), series(n, {0, q(1, 3), q(2, 3) * C2}));
  CHECK(fy4[1] == q(2, 3) * C2);
  CHECK(fy4[2] == q(1, 3) * (4 * C2 * C2 + C3));
  CHECK(compose_into_polynomial(fprime_polynomial(n), ESeries(n)) == ESeries::constant(n, 1));
  CHECK_THROWS_AS(compose_into_polynomial(fprime_polynomial(n), ESeries::constant(n, 1)), SeriesError);
  CHECK_THROWS_AS(fprime_polynomial(kMaxTruncation + 1), SeriesError);
}

TEST_CASE("jet and rational-function weight routes agree")
{
  const int n = 5;
  const ESeries tau = series(n, {0, -2 * C2, 6 * C2 * C2 - 3 * C3, C4});
  for (const auto& name : {"weerakoon", "homeier", "chun", "m1"}) {
    CAPTURE(name);
    const SchemeSpec s = catalog(name);
    const WeightJet& w = s.A ? *s.A : *s.P;
    std::array<CoeffPoly, 4> jet;
    for (int k = 0; k < 4; ++k) jet[static_cast<std::size_t>(k)] = w.derivative(k);
    const ESeries by_jet = expand_weight(jet, tau);
    const ESeries by_function = expand_rational_weight(w.function(), tau);
    for (int k = 0; k <= 3; ++k) CHECK(by_jet[k] == by_function[k]);
  }
  // 2/(1+t) with tau = -2 c2 e starts 1 + c2 e.
  const SchemeSpec w = catalog("weerakoon");
  const ESeries simple = expand_rational_weight(w.A->function(), series(n, {0, -2 * C2}));
  CHECK(simple[0] == 1);
  CHECK(simple[1] == C2);
  CHECK(expand_weight({1, 0, 0, 0}, tau) == ESeries::constant(n, 1));
}

TEST_CASE("derivatives at one from the rational functions match the stored jets")
{
  for (const auto& name : catalog_names()) {
    const SchemeSpec s = catalog(name, Rational(2, 5));
    for (const auto* w : {&s.A, &s.P, &s.Q}) {
      if (!*w) continue;
      CAPTURE(name);
      const auto d = derivatives_at_one((*w)->function(), 3);
      for (int k = 0; k < 4; ++k) CHECK(d[static_cast<std::size_t>(k)] == (*w)->derivative(k));
    }
  }
}

TEST_CASE("printed proof expansions")
{
  const auto mismatches = testing::printed_expansion_mismatches();
  for (const auto& m : mismatches) {
    CAPTURE(m.what);
    CAPTURE(m.power);
    CAPTURE(m.printed.to_string());
    CAPTURE(m.derived.to_string());
    CHECK(testing::is_known_misprint(m));
  }
  CHECK(mismatches.size() == 1);
}

TEST_CASE("error equations of the catalog")
{
  const ErrorEquation newton = derive_error_equation(catalog("newton"), 4);
  CHECK(newton.order == 2);
  CHECK(newton.leading_coefficient == C2);

  const ErrorEquation gamma3 = derive_error_equation(symbolic_catalog("gamma3", std::nullopt));
  CHECK(gamma3.order == 3);
  CHECK(gamma3.leading_coefficient == q(1, 2) * ((4 - 8 * G) * C2 * C2 + C3));

  const ErrorEquation half = derive_error_equation(catalog("gamma3", Rational(1, 2)));
  CHECK(half.leading_coefficient == q(1, 2) * C3);

  const ErrorEquation m1 = derive_error_equation(catalog("m1"));
  CHECK(m1.order == 4);
  CHECK(m1.leading_coefficient == q(1, 9) * (-9 * C2 * C3 + C4 + 33 * pow(C2, 3)));

  const ErrorEquation m2 = derive_error_equation(catalog("m2"));
  CHECK(m2.leading_coefficient == -C2 * C3 + q(1, 9) * C4 + q(79, 27) * pow(C2, 3));
  const ErrorEquation m3 = derive_error_equation(catalog("m3"));
  CHECK(m3.leading_coefficient == -C2 * C3 + q(1, 9) * C4 + q(103, 27) * pow(C2, 3));
}

TEST_CASE("method 4 is fourth order only at gamma = 1")
{
  const ErrorEquation symbolic = derive_error_equation(symbolic_catalog("m4", std::nullopt));
  CHECK(symbolic.order == 3);
  CHECK(symbolic.leading_coefficient.uses(Symbol::gamma));
  CHECK(rational_roots(symbolic.leading_coefficient, Symbol::gamma) == std::vector<Rational>{Rational(1)});

  const ErrorEquation one = derive_error_equation(catalog("m4", Rational(1)));
  CHECK(one.order == 4);
  CHECK(one.leading_coefficient == -C2 * C3 + q(1, 9) * C4 + q(119, 27) * pow(C2, 3));
  CHECK(derive_error_equation(catalog("m4", Rational(0))).order == 3);
}

TEST_CASE("both weight routes give the same error equations")
{
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const SymbolicScheme s = symbolic_catalog(name, Rational(1));
    const Expansion jet = expand_scheme(s, 6, WeightRoute::jet);
    const Expansion rf = expand_scheme(s, 6, WeightRoute::rational_function);
    CHECK(rf.exact_through == 6);
    for (int k = 0; k <= jet.exact_through; ++k) CHECK(jet.error[k] == rf.error[k]);
    // The rational-function route runs past the jet's reach.
    if (s.kind == SchemeKind::fourth_order) CHECK_FALSE(rf.error[5].is_zero());
  }
}

TEST_CASE("inconclusive truncation")
{
  CHECK_THROWS_AS(derive_error_equation(catalog("m1"), 3), InconclusiveOrderError);
  CHECK_THROWS_AS(derive_error_equation(theorem2_scheme(), 3), InconclusiveOrderError);
}

TEST_CASE("third-order theorem")
{
  const VerificationReport r = verify_theorem(Theorem::third_order);
  CHECK(r.holds);
  REQUIRE(r.vanishing.size() == 2);
  for (const auto& [power, coefficient] : r.vanishing) CHECK(coefficient.is_zero());
  CHECK(r.result.order == 3);
  CHECK(r.result.leading_coefficient == q(1, 2) * (C3 - 4 * C2 * C2 * (-1 + AA2)));
  CHECK(r.matches_printed);
}

TEST_CASE("fourth-order theorem")
{
  const VerificationReport r = verify_theorem(Theorem::fourth_order);
  CHECK(r.holds);
  REQUIRE(r.vanishing.size() == 3);
  CHECK(r.result.order == 4);
  const CoeffPoly P2 = AA2, P3 = CoeffPoly::symbol(Symbol::A3), Q3 = CoeffPoly::symbol(Symbol::B3);
  CHECK(r.result.leading_coefficient ==
        q(1, 81) * (-81 * C2 * C3 + 9 * C4 + (309 + 24 * P2 + 32 * P3 + 32 * Q3) * pow(C2, 3)));
  CHECK(r.matches_printed);
  REQUIRE(r.e2_with_free_a);
  CHECK(*r.e2_with_free_a == C2 * (1 - q(3, 2) * CoeffPoly::symbol(Symbol::a)));
  CHECK(r.admissible_a == std::vector<Rational>{Rational(2, 3)});
  REQUIRE(r.e3_with_free_q2);
  // Vanishes exactly when Q''(1) = 2 - P''(1).
  CHECK(r.e3_with_free_q2->substitute(Symbol::B2, 2 - P2).is_zero());
  CHECK_FALSE(r.e3_with_free_q2->is_zero());
}

TEST_CASE("comparison with the published equations")
{
  CHECK(compare_with_paper("m1", std::nullopt).agrees());
  CHECK(compare_with_paper("chun", std::nullopt).agrees());
  CHECK(compare_with_paper("gamma3", std::nullopt).agrees());
  CHECK(compare_with_paper("m4", Rational(1)).agrees());

  const ClaimComparison m2 = compare_with_paper("m2", std::nullopt);
  CHECK(m2.order_matches);
  CHECK_FALSE(m2.coefficient_matches);
  REQUIRE(m2.notes.size() == 1);
  CHECK(m2.notes[0].find("9 times") != std::string::npos);

  const ClaimComparison m4 = compare_with_paper("m4", std::nullopt);
  CHECK_FALSE(m4.order_matches);
  CHECK(m4.notes.size() == 2);
  CHECK_FALSE(compare_with_paper("m4", Rational(2)).agrees());
}

TEST_CASE("error equation text")
{
  CHECK(format_error_equation(derive_error_equation(catalog("newton"), 4)) == "e_{n+1} = c2 e^2 + O(e^3)");
  CHECK(format_error_equation(derive_error_equation(catalog("m1"))) ==
        "e_{n+1} = (1/9)[c4 - 9 c2 c3 + 33 c2^3] e^4 + O(e^5)");
}
