#include "wroot/solvers.hpp"

#include <cmath>

namespace wroot {

const char* to_string(Termination t)
{
  switch (t) {
    case Termination::max_iterations:
      return "max_iterations";
    case Termination::tolerance:
      return "tolerance";
    case Termination::failure:
      return "failure";
  }
  return "?";
}

std::vector<Real> IterationTrace::errors() const
{
  std::vector<Real> out;
  for (const auto& step : iterates) {
    if (step.error) out.push_back(*step.error);
  }
  return out;
}

namespace {

void require_nonsingular(const Problem& problem, const Real& fprime, const Real& x, const char* where)
{
  if (fprime.is_zero()) {
    throw DerivativeSingularError(problem.label + ": f'(" + std::string(where) + ") = 0 at x = " + x.to_string(20));
  }
}

}  // namespace

Real newton_step(const Problem& problem, const Real& x)
{
  const Evaluation v = evaluate(problem, x);
  require_nonsingular(problem, v.fprime, x, "x");
  const Real u = v.f / v.fprime;
  return x - u;
}

StepResult scheme_step(const Problem& problem, const SchemeSpec& scheme, const Real& x)
{
  if (scheme.kind == SchemeKind::newton) return {newton_step(problem, x), std::nullopt, std::nullopt};

  const Evaluation v = evaluate(problem, x);
  require_nonsingular(problem, v.fprime, x, "x");
  const Real u = v.f / v.fprime;
  const Real y = scheme.a == Rational(1) ? x - u : x - Real(x.context(), scheme.a) * u;
  const Real fprime_y = problem.fprime(y);
  if (!fprime_y.is_finite()) throw EvaluationError(problem.label + ": non-finite f'(y) at y = " + y.to_string(20));
  const Real t = fprime_y / v.fprime;

  Real weight = scheme.kind == SchemeKind::third_order ? scheme.A->evaluate(t)
                                                      : scheme.P->evaluate(t) * scheme.Q->evaluate(t);
  return {x - weight * u, y, t};
}

IterationTrace solve(const Problem& problem, const SchemeSpec& scheme, const Real& x0, const SolverConfig& config)
{
  if (config.max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
  if (config.residual_tolerance && config.residual_tolerance->sign() <= 0) {
    throw ConfigError("residual tolerance must be positive");
  }
  if (!x0.is_finite()) throw ConfigError("initial guess must be finite");

  IterationTrace trace;
  trace.scheme_label = scheme.label;

  std::optional<Real> root;
  if (problem.reference_root) root = Real(config.precision) + *problem.reference_root;
  Real x = Real(config.precision) + x0;

  for (int n = 1; n <= config.max_iterations; ++n) {
    try {
      StepResult step = scheme_step(problem, scheme, x);
      x = std::move(step.x_next);
      Real residual = abs(evaluate(problem, x).f);
      std::optional<Real> error;
      if (root) error = abs(x - *root);
      const bool exact = residual.is_zero();
      const bool within = config.residual_tolerance && residual <= *config.residual_tolerance;
      trace.iterates.push_back(
          IterationStep{n, x, std::move(step.y), std::move(step.t), std::move(residual), std::move(error)});
      if (exact || within) {
        trace.terminated_by = Termination::tolerance;
        return trace;
      }
    } catch (const Error& e) {
      trace.terminated_by = Termination::failure;
      trace.failure_reason = e.what();
      return trace;
    }
  }
  trace.terminated_by = Termination::max_iterations;
  return trace;
}

IterationTrace solve(const Problem& problem, const SchemeSpec& scheme, const SolverConfig& config)
{
  if (!problem.suggested_x0) throw ConfigError(problem.label + " has no suggested starting point; pass x0");
  return solve(problem, scheme, *problem.suggested_x0, config);
}

ConvergenceReport estimate_coc(const std::vector<Real>& errors)
{
  ConvergenceReport report;
  if (errors.size() < 3) {
    report.reason = "need at least three errors";
    return report;
  }
  const Real& e0 = errors[errors.size() - 3];
  const Real& e1 = errors[errors.size() - 2];
  const Real& e2 = errors[errors.size() - 1];
  if (e0.is_zero() || e1.is_zero() || e2.is_zero()) {
    report.reason = "iteration reached the root exactly";
    return report;
  }
  const Real denominator = log(e1 / e0);
  if (denominator.is_zero()) {
    report.reason = "errors are not decreasing";
    return report;
  }
  Real order = log(e2 / e1) / denominator;
  if (order.sign() <= 0) {
    report.reason = "errors do not indicate convergence";
    return report;
  }
  report.asymptotic_constant = e2 / pow(e1, order);
  report.estimated_order = std::move(order);
  return report;
}

ConvergenceReport estimate_coc(const IterationTrace& trace) { return estimate_coc(trace.errors()); }

double efficiency_index(double order, int evaluations_per_iteration)
{
  return std::pow(order, 1.0 / evaluations_per_iteration);
}

}  // namespace wroot
