#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wroot/numerics.hpp"

namespace wroot {

using RealFunction = std::function<Real(const Real&)>;

/// A scalar equation f(x) = 0 with its analytic derivative. Immutable after
/// construction; evaluators capture no mutable state.
struct Problem {
  std::string label;
  std::string f_text;
  std::string fprime_text;
  RealFunction f;
  RealFunction fprime;
  std::optional<Real> reference_root;  // refined to working precision
  std::optional<Real> suggested_x0;
};

struct Evaluation {
  Real f;
  Real fprime;
};

/// f and f' at x. Throws EvaluationError on a non-finite value.
Evaluation evaluate(const Problem& problem, const Real& x);

/// The four test equations with their printed 20-digit roots and the
/// starting points used in the published comparison tables.
Problem builtin_problem(std::string_view id, const PrecisionContext& ctx);
const std::vector<std::string>& builtin_problem_ids();
bool is_builtin_problem(std::string_view id);

/// Printed root for a builtin problem, before refinement.
std::string_view printed_root(std::string_view id);

/// Newton-polishes `guess` at the working precision of `ctx`.
Real refine_root(const Problem& problem, const Real& guess, const PrecisionContext& ctx);

// Problem definition files: blocks of key=value lines separated by blank
// lines; '#' starts a comment. Keys: label, f, fprime (optional, derived
// symbolically when absent), root (optional), x0 (optional).
struct ProblemDefinition {
  std::string label;
  std::string f;
  std::optional<std::string> fprime;
  std::optional<std::string> root;
  std::optional<std::string> x0;
};

std::vector<ProblemDefinition> parse_problem_definitions(std::string_view text);
std::vector<ProblemDefinition> load_problem_file(const std::filesystem::path& path);
Problem make_problem(const ProblemDefinition& definition, const PrecisionContext& ctx);

}  // namespace wroot
