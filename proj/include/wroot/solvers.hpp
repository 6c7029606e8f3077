#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wroot/numerics.hpp"
#include "wroot/problems.hpp"
#include "wroot/weights.hpp"

namespace wroot {

struct SolverConfig {
  int max_iterations = 3;
  std::optional<Real> residual_tolerance;
  PrecisionContext precision;
};

enum class Termination { max_iterations, tolerance, failure };

const char* to_string(Termination t);

struct IterationStep {
  int n;
  Real x;
  std::optional<Real> y;
  std::optional<Real> t;
  Real residual;               // |f(x_n)|
  std::optional<Real> error;  // |x_n - alpha|, when the root is known
};

struct IterationTrace {
  std::string scheme_label;
  std::vector<IterationStep> iterates;
  Termination terminated_by = Termination::max_iterations;
  std::string failure_reason;

  std::vector<Real> errors() const;
};

struct StepResult {
  Real x_next;
  std::optional<Real> y;
  std::optional<Real> t;
};

Real newton_step(const Problem& problem, const Real& x);
StepResult scheme_step(const Problem& problem, const SchemeSpec& scheme, const Real& x);

IterationTrace solve(const Problem& problem, const SchemeSpec& scheme, const Real& x0, const SolverConfig& config);
/// Starts from the problem's suggested x0.
IterationTrace solve(const Problem& problem, const SchemeSpec& scheme, const SolverConfig& config);

struct ConvergenceReport {
  std::optional<Real> estimated_order;
  std::optional<Real> asymptotic_constant;
  std::string reason;  // set when not estimable

  bool estimable() const { return estimated_order.has_value(); }
};

/// Computational order from the last three errors,
/// ln(e_{n+1}/e_n) / ln(e_n/e_{n-1}), and zeta = e_{n+1}/e_n^m.
ConvergenceReport estimate_coc(const std::vector<Real>& errors);
ConvergenceReport estimate_coc(const IterationTrace& trace);

double efficiency_index(double order, int evaluations_per_iteration);

}  // namespace wroot
