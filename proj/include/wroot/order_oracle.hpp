#pragma once

// Exact re-derivation of error equations. A scheme's error e_{n+1} is
// expanded as a truncated power series in e = e_n whose coefficients are
// polynomials, with rational coefficients, in c_h = f^(h)(alpha)/(h! f'(alpha))
// and in the free weight-jet symbols.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wroot/numerics.hpp"
#include "wroot/weights.hpp"

namespace wroot::oracle {

// Declaration order is the graded-lex variable order.
enum class Symbol : std::uint8_t {
  c2, c3, c4, c5, c6, c7, c8, c9,
  A2,     // A''(1), identified with P''(1) for fourth-order schemes
  A3,     // A'''(1) / P'''(1)
  B2,     // Q''(1)
  B3,     // Q'''(1)
  gamma,  // family parameter
  a,      // first-step damping
};

inline constexpr std::size_t kSymbolCount = 14;
inline constexpr int kMaxTruncation = 8;  // f'(x) to e^N needs c_{N+1}

/// c_h for h = 2..9.
Symbol c(int h);
std::string_view symbol_name(Symbol s);

using Monomial = std::array<std::uint16_t, kSymbolCount>;

/// Graded lexicographic order: lower total degree first, ties broken by
/// the exponent of the earliest symbol (higher exponent ranks later).
struct GrlexLess {
  bool operator()(const Monomial& lhs, const Monomial& rhs) const;
};

class CoeffPoly {
 public:
  using Terms = std::map<Monomial, Rational, GrlexLess>;

  CoeffPoly() = default;
  CoeffPoly(const Rational& constant);  // NOLINT: implicit by intent
  CoeffPoly(long constant) : CoeffPoly(Rational(constant)) {}  // NOLINT
  static CoeffPoly symbol(Symbol s);
  static CoeffPoly term(const Rational& coefficient, const Monomial& monomial);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::optional<Rational> constant_value() const;
  bool uses(Symbol s) const;
  int degree_in(Symbol s) const;

  /// Sum of the terms containing s^power, with s removed.
  CoeffPoly coefficient_of(Symbol s, int power) const;
  CoeffPoly substitute(Symbol s, const CoeffPoly& value) const;
  Real evaluate(const std::function<Real(Symbol)>& value, const PrecisionContext& ctx) const;

  /// Canonical expanded form, ascending grlex: "1/2 c3 + 2 c2^2 - 2 c2^2 A''(1)".
  std::string to_string() const;
  /// Content pulled out as a rational prefactor: "(1/2)[c3 + 4 c2^2 - 4 c2^2 A''(1)]".
  std::string to_factored_string() const;

  CoeffPoly& operator+=(const CoeffPoly& o);
  CoeffPoly& operator-=(const CoeffPoly& o);
  friend CoeffPoly operator+(CoeffPoly a, const CoeffPoly& b) { return a += b; }
  friend CoeffPoly operator-(CoeffPoly a, const CoeffPoly& b) { return a -= b; }
  friend CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b);
  friend CoeffPoly operator-(const CoeffPoly& a);
  friend bool operator==(const CoeffPoly& a, const CoeffPoly& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Monomial& m, const Rational& c);

  Terms terms_;
};

CoeffPoly pow(const CoeffPoly& base, int exponent);

/// Rational values r for which p with s := r is the zero polynomial.
/// Requires p to be nonzero.
std::vector<Rational> rational_roots(const CoeffPoly& p, Symbol s);

/// Power series in e truncated after e^N; arithmetic is exact modulo e^(N+1).
class ESeries {
 public:
  explicit ESeries(int truncation);
  static ESeries constant(int truncation, const CoeffPoly& value);
  /// The series e.
  static ESeries variable(int truncation);
  static ESeries from_coefficients(int truncation, std::vector<CoeffPoly> coefficients);

  int truncation() const { return static_cast<int>(coefficients_.size()) - 1; }
  const CoeffPoly& operator[](int power) const { return coefficients_.at(static_cast<std::size_t>(power)); }
  CoeffPoly& coefficient(int power) { return coefficients_.at(static_cast<std::size_t>(power)); }
  const std::vector<CoeffPoly>& coefficients() const { return coefficients_; }

  std::string to_string() const;

  ESeries& operator+=(const ESeries& o);
  ESeries& operator-=(const ESeries& o);
  friend ESeries operator+(ESeries a, const ESeries& b) { return a += b; }
  friend ESeries operator-(ESeries a, const ESeries& b) { return a -= b; }
  friend ESeries operator*(const ESeries& a, const ESeries& b);
  friend ESeries operator*(const CoeffPoly& k, const ESeries& a);
  friend ESeries operator-(const ESeries& a);
  friend bool operator==(const ESeries& a, const ESeries& b) { return a.coefficients_ == b.coefficients_; }

 private:
  std::vector<CoeffPoly> coefficients_;
};

ESeries series_mul(const ESeries& a, const ESeries& b);
/// Requires the constant coefficient to be exactly 1.
ESeries series_reciprocal(const ESeries& a);
/// sum_k coefficients[k] * delta^k; delta must have zero constant term.
ESeries compose_into_polynomial(const std::vector<CoeffPoly>& coefficients, const ESeries& delta);
/// W(1) + W'(1) tau + W''(1)/2 tau^2 + W'''(1)/6 tau^3, tau = t - 1.
ESeries expand_weight(const std::array<CoeffPoly, 4>& jet, const ESeries& tau);
/// Independent route: W(1 + tau) from the numerator and denominator
/// polynomials of a rational weight.
ESeries expand_rational_weight(const RationalFunction& weight, const ESeries& tau);
/// W(1), W'(1), ..., W^(order)(1) computed from the rational function.
std::vector<Rational> derivatives_at_one(const RationalFunction& weight, int order);

/// Taylor data shared by every scheme: f(x)/f'(alpha) and f'(x)/f'(alpha).
ESeries f_series(int truncation);
ESeries fprime_series(int truncation);
/// 1, 2 c2, 3 c3, ...: f'(alpha + d)/f'(alpha) as a polynomial in d.
std::vector<CoeffPoly> fprime_polynomial(int truncation);

struct SymbolicScheme {
  SchemeKind kind = SchemeKind::newton;
  std::string name;
  std::array<CoeffPoly, 4> first;   // A, or P
  std::array<CoeffPoly, 4> second;  // Q
  CoeffPoly a{1};
  // Rational-function weights when known, for the independent route.
  std::optional<RationalFunction> first_function;
  std::optional<RationalFunction> second_function;
};

SymbolicScheme symbolic_scheme(const SchemeSpec& scheme);
/// Catalog entry with gamma left as a free symbol when absent.
SymbolicScheme symbolic_catalog(std::string_view name, std::optional<Rational> gamma);
/// A(1) = 1, A'(1) = -1/2, A''(1) and A'''(1) free.
SymbolicScheme theorem1_scheme();
/// P(1) = 1, P'(1) = -1/2, Q(1) = 1, Q'(1) = -1/4; P'', P''', Q''' free.
/// Q''(1) = 2 - P''(1) unless `constrain_q2` is false; a = 2/3 unless
/// `symbolic_a`.
SymbolicScheme theorem2_scheme(bool constrain_q2 = true, bool symbolic_a = false);

/// Every intermediate expansion of one iteration.
struct Expansion {
  ESeries u;          // f(x)/f'(x)
  ESeries delta;      // y - alpha
  ESeries fprime_y;   // f'(y)/f'(alpha)
  ESeries t;          // f'(y)/f'(x)
  ESeries weight;     // A(t) or P(t) Q(t)
  ESeries correction; // weight * u
  ESeries error;      // e_{n+1}
  int exact_through;  // highest power of e that is exact
};

enum class WeightRoute { jet, rational_function };

Expansion expand_scheme(const SymbolicScheme& scheme, int truncation, WeightRoute route = WeightRoute::jet);

struct ErrorEquation {
  int order;
  CoeffPoly leading_coefficient;
};

/// First nonvanishing power of e in e_{n+1}. Throws InconclusiveOrderError
/// when every exact coefficient vanishes.
ErrorEquation derive_error_equation(const SymbolicScheme& scheme, int truncation = 5,
                                    WeightRoute route = WeightRoute::jet);
ErrorEquation derive_error_equation(const SchemeSpec& scheme, int truncation = 5);

/// "e_{n+1} = (1/2)[c3 + 4 c2^2 - 4 c2^2 A''(1)] e^3 + O(e^4)"
std::string format_error_equation(const ErrorEquation& equation);

struct PaperClaim {
  int order;
  CoeffPoly coefficient;
  std::string printed;  // as typeset, in ASCII
  std::string source;
};

/// The published claim for a catalog method; gamma stays symbolic when absent.
PaperClaim paper_claim(std::string_view name, std::optional<Rational> gamma);

struct ClaimComparison {
  ErrorEquation derived;
  PaperClaim claim;
  bool order_matches = false;
  bool coefficient_matches = false;
  std::vector<std::string> notes;

  bool agrees() const { return order_matches && coefficient_matches; }
};

ClaimComparison compare_with_paper(std::string_view name, std::optional<Rational> gamma, int truncation = 5);

enum class Theorem { third_order = 1, fourth_order = 2 };

struct VerificationReport {
  Theorem theorem;
  /// Coefficients required to vanish, by power of e.
  std::vector<std::pair<int, CoeffPoly>> vanishing;
  bool holds = false;
  std::optional<std::pair<int, CoeffPoly>> counterexample;
  ErrorEquation result{0, CoeffPoly()};
  CoeffPoly printed;  // published general coefficient
  bool matches_printed = false;
  /// Fourth order only: the e^2 coefficient with `a` free, and the values of
  /// a for which it vanishes.
  std::optional<CoeffPoly> e2_with_free_a;
  std::vector<Rational> admissible_a;
  /// Fourth order only: the e^3 coefficient with Q''(1) free.
  std::optional<CoeffPoly> e3_with_free_q2;
};

VerificationReport verify_theorem(Theorem which, int truncation = 5);

}  // namespace wroot::oracle
