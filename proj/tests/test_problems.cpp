#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "wroot/problems.hpp"

using namespace wroot;

namespace {

// Roots to 50 digits from mpmath.findroot at 60 digits.
const char* mpmath_root(std::string_view id)
{
  if (id == "f1") return "4.9651142317442763036987591313228939440555849867973";
  if (id == "f2") return "2.0021187789538272889475714398880404572823259745191";
  if (id == "f3") return "0.4158555967898679887880048019829390190425864703934";
  return "0.11183255915896296483356945682026584227264536229127";
}

Real tolerance(const PrecisionContext& ctx, int exponent) { return pow(Real(ctx, 10), -exponent); }

}  // namespace

TEST_CASE("f2 at 2.5 equals the exact rational 4693/1848")
{
  // (15.625 + 17.9375 - 10.28)/4.62 - 2.5 = 23.2825/4.62 - 2.5, in lowest terms.
  const Rational exact = (Rational::parse("15.625") + Rational::parse("17.9375") - Rational::parse("10.28")) /
                             Rational::parse("4.62") -
                         Rational::parse("2.5");
  CHECK(exact == Rational(4693, 1848));

  const PrecisionContext ctx(200);
  const Problem p = builtin_problem("f2", ctx);
  const Real v = p.f(parse_real(ctx, "2.5"));
  CHECK(abs(v - Real(ctx, exact)) < tolerance(ctx, 195));
}

TEST_CASE("printed roots nearly annihilate f")
{
  const PrecisionContext ctx(200);
  const Problem p = builtin_problem("f1", ctx);
  CHECK(abs(p.f(parse_real(ctx, std::string(printed_root("f1"))))) < tolerance(ctx, 19));
}

TEST_CASE("refined roots agree with an independent root finder")
{
  const PrecisionContext ctx(200);
  for (const auto& id : builtin_problem_ids()) {
    CAPTURE(id);
    const Problem p = builtin_problem(id, ctx);
    REQUIRE(p.reference_root);
    CHECK(abs(*p.reference_root - parse_real(ctx, mpmath_root(id))) < tolerance(ctx, 48));
    CHECK(abs(p.f(*p.reference_root)) < tolerance(ctx, 190));
    // The printed 20-digit value is a prefix of the refined root.
    CHECK(abs(*p.reference_root - parse_real(ctx, std::string(printed_root(id)))) < tolerance(ctx, 18));
  }
}

TEST_CASE("builtin evaluations at simple points")
{
  const PrecisionContext ctx(200);
  const Real five(ctx, 5);
  const Problem f1 = builtin_problem("f1", ctx);
  const Evaluation e1 = evaluate(f1, five);
  CHECK(abs(e1.f - exp(-five)) < tolerance(ctx, 195));
  CHECK(abs(e1.fprime - (Real(ctx, Rational(1, 5)) - exp(-five))) < tolerance(ctx, 195));

  const Evaluation e3 = evaluate(builtin_problem("f3", ctx), Real(ctx));
  CHECK(e3.f == Real(ctx, Rational(-1, 4)));
  CHECK(abs(e3.fprime - 2 / pi(ctx)) < tolerance(ctx, 195));

  const Problem f4 = builtin_problem("f4", ctx);
  CHECK(f4.f(Real(ctx)) == -parse_real(ctx, "0.1"));
  const Evaluation e4 = evaluate(f4, Real(ctx, 1));
  CHECK(abs(e4.f - (exp(Real(ctx, -1)) - parse_real(ctx, "0.1"))) < tolerance(ctx, 195));
  CHECK(e4.fprime.is_zero());
}

TEST_CASE("analytic derivatives of the builtins match central differences")
{
  const PrecisionContext ctx(200);
  const Real h = tolerance(ctx, 60);
  for (const auto& id : builtin_problem_ids()) {
    CAPTURE(id);
    const Problem p = builtin_problem(id, ctx);
    for (const char* at : {"0.3", "1.1", "4.2"}) {
      const Real x = parse_real(ctx, at);
      const Real numeric = (p.f(x + h) - p.f(x - h)) / (2 * h);
      CHECK(abs(p.fprime(x) - numeric) < tolerance(ctx, 100));
    }
  }
}

TEST_CASE("starting points")
{
  const PrecisionContext ctx(50);
  CHECK(*builtin_problem("f1", ctx).suggested_x0 == Real(ctx, 5));
  CHECK(*builtin_problem("f2", ctx).suggested_x0 == parse_real(ctx, "2.5"));
  CHECK(*builtin_problem("f3", ctx).suggested_x0 == parse_real(ctx, "0.4"));
  CHECK(*builtin_problem("f4", ctx).suggested_x0 == parse_real(ctx, "0.3"));
}

TEST_CASE("unknown builtin")
{
  CHECK_FALSE(is_builtin_problem("f9"));
  CHECK_THROWS_AS(builtin_problem("f9", PrecisionContext(20)), CatalogError);
}

TEST_CASE("non-finite evaluation is reported")
{
  const PrecisionContext ctx(30);
  const Problem p = make_problem({"recip", "1/x", std::nullopt, std::nullopt, std::nullopt}, ctx);
  CHECK_THROWS_AS(evaluate(p, Real(ctx)), EvaluationError);
}

TEST_CASE("problem definition files")
{
  const auto defs = parse_problem_definitions(
      "# two problems\n"
      "label = sqrt2\n"
      "f = x^2 - 2\n"
      "root = 1.41421356\n"
      "x0 = 1\n"
      "\n"
      "label=cubic   # inline comment\n"
      "f=x^3 - x - 1\n"
      "fprime=3*x^2 - 1\n");
  REQUIRE(defs.size() == 2);
  CHECK(defs[0].label == "sqrt2");
  CHECK_FALSE(defs[0].fprime);
  CHECK(*defs[0].root == "1.41421356");
  CHECK(*defs[1].fprime == "3*x^2 - 1");

  const PrecisionContext ctx(100);
  const Problem p = make_problem(defs[0], ctx);
  // The file gives 9 digits; the stored root is polished to working precision.
  CHECK(abs(*p.reference_root - sqrt(Real(ctx, 2))) < tolerance(ctx, 95));
  CHECK(p.fprime(Real(ctx, 3)) == Real(ctx, 6));
  CHECK(*p.suggested_x0 == Real(ctx, 1));

  const Problem q = make_problem(defs[1], ctx);
  CHECK_FALSE(q.reference_root);
  CHECK(q.fprime(Real(ctx, 2)) == Real(ctx, 11));
}

TEST_CASE("malformed problem definitions")
{
  CHECK_THROWS_AS(parse_problem_definitions("f = x\n"), ParseError);
  CHECK_THROWS_AS(parse_problem_definitions("label = a\n"), ParseError);
  CHECK_THROWS_AS(parse_problem_definitions("label = a\nf = x\nspeed = 3\n"), ParseError);
  CHECK_THROWS_AS(parse_problem_definitions("label = a\nf x\n"), ParseError);
  CHECK_THROWS_AS(make_problem({"bad", "x +", std::nullopt, std::nullopt, std::nullopt}, PrecisionContext(20)),
                  ParseError);
  // A claimed root that is not one.
  CHECK_THROWS_AS(make_problem({"bad", "x^2 + 1", std::nullopt, std::string("0.5"), std::nullopt},
                               PrecisionContext(20)),
                  Error);
}

TEST_CASE("loading from disk")
{
  const auto path = std::filesystem::temp_directory_path() / "wroot_problem_test.txt";
  {
    std::ofstream out(path);
    out << "label = lin\nf = 3*x - 1\nroot = 0.333\n";
  }
  const auto defs = load_problem_file(path);
  REQUIRE(defs.size() == 1);
  CHECK(defs[0].label == "lin");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_problem_file(path), ConfigError);
}
