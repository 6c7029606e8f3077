#pragma once

// Helpers shared by the unit tests and the acceptance binary.

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wroot/order_oracle.hpp"
#include "wroot/problems.hpp"
#include "wroot/solvers.hpp"

namespace wroot::testing {

// Fourth-order steps written out the long way, straight from the closed
// forms, for comparison against the P(t)Q(t) engine.
inline Real literal_fourth_order_step(std::string_view method, const Problem& p, const Real& x)
{
  const auto& ctx = x.context();
  const Real fx = p.f(x);
  const Real dx = p.fprime(x);
  const Real y = x - Real(ctx, Rational(2, 3)) * fx / dx;
  const Real dy = p.fprime(y);
  const Real t = dy / dx;
  auto q = [&](Rational c0, Rational c1, Rational c2) {
    return Real(ctx, c0) + Real(ctx, c1) * t + Real(ctx, c2) * t * t;
  };
  if (method == "m1") return x - q({2}, {-7, 4}, {3, 4}) * (2 * fx / (dx + dy));
  if (method == "m2") return x - q({7, 4}, {-5, 4}, {1, 2}) * (fx / 2 * (1 / dx + 1 / dy));
  if (method == "m3") {
    return x - q({9, 4}, {-9, 4}, {1}) * (Real(ctx, Rational(3, 2)) - dy / (2 * dx)) * (fx / dx);
  }
  throw CatalogError("no literal form for " + std::string(method));
}

/// alpha + d with |d| <= 0.05 |alpha|, d a random multiple of 1e-9.
inline std::vector<Real> near_root_points(const Problem& p, int count, unsigned seed)
{
  std::mt19937_64 rng(seed);
  const Real& alpha = *p.reference_root;
  const long span = static_cast<long>(alpha.to_double() * 5e7);
  std::uniform_int_distribution<long> pick(-span, span);
  std::vector<Real> out;
  for (int i = 0; i < count; ++i) {
    long k = pick(rng);
    if (k == 0) k = 1;
    out.push_back(alpha + Real(alpha.context(), Rational(k, 1000000000)));
  }
  return out;
}

struct PrintedExpansion {
  std::string what;
  std::vector<oracle::CoeffPoly> printed;  // e^0 .. e^k as printed
  oracle::ESeries derived;
};

struct TermMismatch {
  std::string what;
  int power;
  oracle::CoeffPoly printed;
  oracle::CoeffPoly derived;
};

/// The intermediate expansions printed in the proofs of the two order
/// theorems, next to what the series kernel derives for them.
inline std::vector<PrintedExpansion> printed_expansions()
{
  using oracle::CoeffPoly;
  using oracle::c;
  const CoeffPoly c2 = CoeffPoly::symbol(c(2));
  const CoeffPoly c3 = CoeffPoly::symbol(c(3));
  const CoeffPoly c4 = CoeffPoly::symbol(c(4));
  const CoeffPoly A2 = CoeffPoly::symbol(oracle::Symbol::A2);
  const CoeffPoly A3 = CoeffPoly::symbol(oracle::Symbol::A3);
  const CoeffPoly B3 = CoeffPoly::symbol(oracle::Symbol::B3);
  const auto r = [](long p, long q = 1) { return CoeffPoly(Rational(p, q)); };

  const oracle::Expansion third = oracle::expand_scheme(oracle::theorem1_scheme(), 5);
  const oracle::Expansion fourth = oracle::expand_scheme(oracle::theorem2_scheme(), 5);

  return {
      {"third-order u = f/f'", {0, 1, -c2, 2 * c2 * c2 - 2 * c3}, third.u},
      {"third-order y - alpha", {0, 0, c2, 2 * (c3 - c2 * c2)}, third.delta},
      {"third-order f'(y)/f'(alpha)", {1, 0, 2 * c2 * c2, 4 * c2 * c3 - 4 * pow(c2, 3)}, third.fprime_y},
      {"third-order t", {1, -2 * c2, 6 * c2 * c2 - 3 * c3}, third.t},
      {"third-order A(t) u", {0, 1, 0, -r(1, 2) * (c3 - 4 * c2 * c2 * (-1 + A2))}, third.correction},
      {"fourth-order y - alpha", {0, r(1, 3), r(2, 3) * c2, r(4, 3) * (c3 - c2 * c2)}, fourth.delta},
      {"fourth-order f'(y)/f'(alpha)", {1, r(2, 3) * c2, r(1, 3) * (4 * c2 * c2 + c3)}, fourth.fprime_y},
      {"fourth-order t", {1, -r(2, 3) * c2, 4 * c2 * c2 - r(8, 3) * c3}, fourth.t},
      {"fourth-order P(t) Q(t) u",
       {0, 1, 0, 0, -r(1, 81) * (-81 * c2 * c3 + 9 * c4 + (309 + 24 * A2 + 32 * A3 + 32 * B3) * pow(c2, 3))},
       fourth.correction},
  };
}

inline std::vector<TermMismatch> printed_expansion_mismatches()
{
  std::vector<TermMismatch> out;
  for (const auto& e : printed_expansions()) {
    for (std::size_t k = 0; k < e.printed.size(); ++k) {
      const auto& derived = e.derived[static_cast<int>(k)];
      if (!(derived == e.printed[k])) out.push_back({e.what, static_cast<int>(k), e.printed[k], derived});
    }
  }
  return out;
}

/// The one printed term known to be wrong: the e^1 term of t for a = 2/3
/// is printed as -2 c2/3. Expanding t = f'(y)/f'(x) by hand, or with a CAS,
/// gives 2 c2 (1/3) - 2 c2 = -4 c2/3.
inline bool is_known_misprint(const TermMismatch& m)
{
  using oracle::CoeffPoly;
  return m.what == "fourth-order t" && m.power == 1 &&
         m.derived == CoeffPoly(Rational(-4, 3)) * CoeffPoly::symbol(oracle::c(2));
}

}  // namespace wroot::testing
