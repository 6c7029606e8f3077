#include "wroot/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "wroot/bench.hpp"
#include "wroot/order_oracle.hpp"
#include "wroot/problems.hpp"
#include "wroot/solvers.hpp"
#include "wroot/weights.hpp"

namespace wroot {

namespace {

struct UsageError : Error {
  using Error::Error;
};

std::optional<Rational> parse_gamma(const std::string& text, std::ostream& err)
{
  if (text.empty()) return std::nullopt;
  Rational g;
  try {
    g = Rational::parse(text);
  } catch (const Error& e) {
    throw UsageError("invalid --gamma '" + text + "': " + e.what());
  }
  if (text.find_first_of(".eE") != std::string::npos) {
    err << "warning: gamma '" << text << "' is a decimal; using the exact rational " << g.to_string()
        << ", which may differ from the intended value\n";
  }
  return g;
}

void require_method(const std::string& name)
{
  const auto& names = catalog_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::string known;
    for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
    throw UsageError("unknown method '" + name + "' (known: " + known + ")");
  }
}

// "f1", "path/to/file" or "path/to/file:label".
Problem resolve_problem(const std::string& spec, const PrecisionContext& ctx)
{
  if (is_builtin_problem(spec)) return builtin_problem(spec, ctx);
  std::string path = spec;
  std::optional<std::string> label;
  if (!std::filesystem::exists(path)) {
    const auto colon = spec.rfind(':');
    if (colon != std::string::npos) {
      path = spec.substr(0, colon);
      label = spec.substr(colon + 1);
    }
  }
  if (!std::filesystem::exists(path)) throw UsageError("unknown problem '" + spec + "' (not a builtin id or a file)");
  const auto definitions = load_problem_file(path);
  if (label) {
    for (const auto& d : definitions) {
      if (d.label == *label) return make_problem(d, ctx);
    }
    throw UsageError("no problem labelled '" + *label + "' in " + path);
  }
  if (definitions.size() != 1) {
    throw UsageError(path + " defines " + std::to_string(definitions.size()) + " problems; select one with " + path +
                     ":<label>");
  }
  return make_problem(definitions.front(), ctx);
}

std::string fixed(double v, int places)
{
  std::ostringstream s;
  s << std::fixed << std::setprecision(places) << v;
  return s.str();
}

std::string strip_gamma_suffix(std::string formula)
{
  const auto pos = formula.find(" [gamma=");
  if (pos != std::string::npos) formula.erase(pos);
  return formula;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string problem;
  std::string method;
  std::string gamma;
  std::string x0;
  int digits = PrecisionContext::kDefaultDigits;
  int iters = 3;
  std::string tol;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err)
{
  require_method(a.method);
  if (a.problem.empty()) throw UsageError("solve needs --problem");
  const auto gamma = parse_gamma(a.gamma, err);
  const PrecisionContext ctx = [&] {
    try {
      return PrecisionContext(a.digits);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }();
  SchemeSpec scheme;
  try {
    scheme = catalog(a.method, gamma);
  } catch (const CatalogError& e) {
    throw UsageError(e.what());
  }
  const Problem problem = resolve_problem(a.problem, ctx);

  Real x0(ctx);
  if (!a.x0.empty()) {
    try {
      x0 = parse_real(ctx, a.x0);
    } catch (const Error& e) {
      throw UsageError("invalid --x0: " + std::string(e.what()));
    }
  } else if (problem.suggested_x0) {
    x0 = *problem.suggested_x0;
  } else {
    throw UsageError(problem.label + " has no suggested starting point; pass --x0");
  }

  SolverConfig config{a.iters, std::nullopt, ctx};
  if (!a.tol.empty()) {
    try {
      config.residual_tolerance = parse_real(ctx, a.tol);
    } catch (const Error& e) {
      throw UsageError("invalid --tol: " + std::string(e.what()));
    }
    config.max_iterations = 100;
  }
  if (config.max_iterations < 1) throw UsageError("--iters must be at least 1");

  IterationTrace trace;
  try {
    trace = solve(problem, scheme, x0, config);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }

  const int shown = std::min(ctx.decimal_digits(), 40);
  out << "problem " << problem.label << ": f(x) = " << problem.f_text << '\n';
  out << "method  " << scheme.label << ", x0 = " << x0.to_string(std::min(ctx.decimal_digits(), 20)) << ", "
      << ctx.decimal_digits() << " digits\n";
  for (const auto& step : trace.iterates) {
    out << "n=" << step.n << "  x=" << step.x.to_string(shown) << "  |f(x)|=" << format_error(step.residual);
    if (step.error) out << "  |x-alpha|=" << format_error(*step.error);
    out << '\n';
  }
  const ConvergenceReport coc = estimate_coc(trace);
  if (coc.estimable()) {
    out << "COC " << fixed(coc.estimated_order->to_double(), 4);
    if (coc.asymptotic_constant) out << "  zeta " << coc.asymptotic_constant->to_string(6);
    out << '\n';
  } else {
    out << "COC not estimable: " << coc.reason << '\n';
  }
  out << "terminated by " << to_string(trace.terminated_by) << '\n';
  if (!trace.iterates.empty() && trace.iterates.back().error) {
    out << "final error " << format_error(*trace.iterates.back().error) << '\n';
  }

  if (trace.terminated_by == Termination::failure) {
    err << "solver failure: " << trace.failure_reason << '\n';
    return kExitSolverFailure;
  }
  if (config.residual_tolerance && trace.terminated_by != Termination::tolerance) {
    err << "solver failure: tolerance not reached in " << config.max_iterations << " iterations\n";
    return kExitSolverFailure;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string method;
  int theorem = 0;
  std::string gamma;
  int truncation = 5;
};

int verify_method(const VerifyArgs& a, std::ostream& out, std::ostream& err)
{
  require_method(a.method);
  const auto gamma = parse_gamma(a.gamma, err);
  const auto use_gamma = catalog_requires_gamma(a.method) ? gamma : std::nullopt;

  out << "method " << a.method;
  if (catalog_requires_gamma(a.method)) out << " (gamma = " << (use_gamma ? use_gamma->to_string() : "symbolic") << ")";
  out << '\n';
  if (!catalog_requires_gamma(a.method) || use_gamma) {
    const ConditionReport conditions = check_conditions(catalog(a.method, use_gamma));
    out << "conditions " << (conditions.passed() ? "satisfied" : "NOT satisfied") << '\n' << conditions.summary();
  }

  const oracle::ClaimComparison cmp = oracle::compare_with_paper(a.method, use_gamma, a.truncation);
  out << "order " << cmp.derived.order << '\n';
  out << "leading coefficient " << cmp.derived.leading_coefficient.to_factored_string() << '\n';
  out << "  expanded: " << cmp.derived.leading_coefficient.to_string() << '\n';
  out << oracle::format_error_equation(cmp.derived) << '\n';
  out << cmp.claim.source << ": order " << cmp.claim.order << ", " << cmp.claim.printed << '\n';
  for (const auto& note : cmp.notes) out << "note: " << note << '\n';
  if (cmp.agrees()) {
    out << "verdict: agrees with the published error equation\n";
    return kExitOk;
  }
  out << "verdict: DISCREPANCY (" << (cmp.order_matches ? "coefficient differs" : "order differs") << ")\n";
  return kExitDiscrepancy;
}

int verify_theorem(const VerifyArgs& a, std::ostream& out)
{
  if (a.theorem != 1 && a.theorem != 2) throw UsageError("--theorem must be 1 or 2");
  const auto which = a.theorem == 1 ? oracle::Theorem::third_order : oracle::Theorem::fourth_order;
  const oracle::VerificationReport r = oracle::verify_theorem(which, a.truncation);
  out << (a.theorem == 1 ? "third-order weight conditions: A(1) = 1, A'(1) = -1/2\n"
                         : "fourth-order weight conditions: a = 2/3, P(1) = 1, P'(1) = -1/2, Q(1) = 1, "
                           "Q'(1) = -1/4, Q''(1) = 2 - P''(1)\n");
  for (const auto& [power, coefficient] : r.vanishing) {
    out << "e^" << power << " coefficient: " << (coefficient.is_zero() ? "0" : coefficient.to_factored_string())
        << '\n';
  }
  if (r.counterexample) {
    out << "counterexample at e^" << r.counterexample->first << ": " << r.counterexample->second.to_factored_string()
        << '\n';
  }
  out << "order " << r.result.order << '\n';
  out << oracle::format_error_equation(r.result) << '\n';
  out << "  expanded: " << r.result.leading_coefficient.to_string() << '\n';
  out << "published: " << r.printed.to_factored_string() << (r.matches_printed ? " (matches)" : " (DIFFERS)")
      << '\n';
  if (r.e2_with_free_a) {
    out << "with a free, e^2 coefficient: " << r.e2_with_free_a->to_factored_string() << "; vanishes for a in {";
    for (std::size_t i = 0; i < r.admissible_a.size(); ++i) out << (i ? ", " : "") << r.admissible_a[i].to_string();
    out << "}\n";
  }
  if (r.e3_with_free_q2) {
    out << "with Q''(1) free, e^3 coefficient: " << r.e3_with_free_q2->to_factored_string() << '\n';
  }
  const bool ok = r.holds && r.matches_printed;
  out << "verdict: " << (ok ? "theorem holds" : "DISCREPANCY") << '\n';
  return ok ? kExitOk : kExitDiscrepancy;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err)
{
  if (a.method.empty() == (a.theorem == 0)) throw UsageError("verify needs exactly one of --method or --theorem");
  if (a.truncation < 1 || a.truncation > oracle::kMaxTruncation) {
    throw UsageError("--truncation must be between 1 and " + std::to_string(oracle::kMaxTruncation));
  }
  try {
    return a.method.empty() ? verify_theorem(a, out) : verify_method(a, out, err);
  } catch (const InconclusiveOrderError& e) {
    throw UsageError(std::string(e.what()) + "; raise --truncation");
  }
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  int table = 0;
  std::string problem;
  std::string methods;
  std::string gamma;
  std::string x0;
  std::string format = "md";
  std::string out;
  int digits = PrecisionContext::kDefaultDigits;
  int iters = 3;
};

std::vector<std::string> split_methods(const std::string& list)
{
  std::vector<std::string> out;
  std::stringstream s(list);
  std::string item;
  while (std::getline(s, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err)
{
  if ((a.table != 0) == !a.problem.empty()) throw UsageError("bench needs exactly one of --table or --problem");
  if (a.format != "md" && a.format != "csv") throw UsageError("--format must be md or csv");

  std::string problem_id = a.problem;
  std::optional<std::string> x0;
  if (!a.x0.empty()) x0 = a.x0;
  std::vector<std::string> methods = split_methods(a.methods);
  if (a.table != 0) {
    if (a.table < 2 || a.table > 5) throw UsageError("--table must be 2, 3, 4 or 5");
    const PublishedTable& t = published_table(a.table);
    problem_id = t.problem_id;
    if (!x0) x0 = t.x0;
  }
  if (methods.empty()) {
    for (const auto& row : published_tables().front().rows) methods.push_back(row.method);
  }
  for (const auto& m : methods) require_method(m);
  const auto gamma = parse_gamma(a.gamma, err);
  for (const auto& m : methods) {
    if (catalog_requires_gamma(m) && !gamma) throw UsageError("method '" + m + "' requires --gamma");
  }

  BenchmarkOptions options{x0, a.iters, a.digits, gamma};
  if (a.iters < 1) throw UsageError("--iters must be at least 1");
  const PrecisionContext ctx = [&] {
    try {
      return PrecisionContext(a.digits);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }();
  const Problem problem = resolve_problem(problem_id, ctx);
  if (!x0 && !problem.suggested_x0) throw UsageError(problem.label + " has no suggested starting point; pass --x0");

  const BenchmarkRun run = run_benchmark(problem, methods, options);
  const std::string text = emit(run, a.format == "csv" ? OutputFormat::csv : OutputFormat::markdown);
  if (a.out.empty()) {
    out << text;
  } else {
    std::ofstream file(a.out);
    if (!file) throw UsageError("cannot write " + a.out);
    file << text;
    out << "wrote " << a.out << '\n';
  }

  bool flagged = false;
  for (const auto& row : run.results) {
    for (const auto& cell : row) {
      if (cell.text.rfind("FAIL", 0) == 0) flagged = true;
    }
  }
  for (const auto& c : compare_with_published(run)) {
    if (c.match == CellMatch::within) {
      err << "note: " << c.method << " x" << c.iteration << " reproduced " << c.reproduced << ", published "
          << c.published << " (agree to 3 digits, differ in the 4th or 5th)\n";
    } else if (c.match == CellMatch::mismatch) {
      err << "flagged: " << c.method << " x" << c.iteration << " reproduced " << c.reproduced << ", published "
          << c.published << '\n';
      flagged = true;
    }
  }
  return flagged ? kExitCellFlagged : kExitOk;
}

// ---------------------------------------------------------------- catalog

int cmd_catalog(std::ostream& out)
{
  for (const auto& name : catalog_names()) {
    const bool has_gamma = catalog_requires_gamma(name);
    const SchemeSpec spec = catalog(name, has_gamma ? std::optional<Rational>(Rational(0)) : std::nullopt);
    const oracle::ErrorEquation eq = oracle::derive_error_equation(oracle::symbolic_catalog(name, std::nullopt));
    const int target = spec.kind == SchemeKind::newton ? 2 : (spec.kind == SchemeKind::third_order ? 3 : 4);

    std::string conditions = "ok";
    int best_order = eq.order;
    std::string best_gamma;
    if (eq.order < target && eq.leading_coefficient.uses(oracle::Symbol::gamma)) {
      const auto roots = oracle::rational_roots(eq.leading_coefficient, oracle::Symbol::gamma);
      conditions = "ok only for gamma in {";
      for (std::size_t i = 0; i < roots.size(); ++i) conditions += (i ? ", " : "") + roots[i].to_string();
      conditions += "}";
      if (!roots.empty()) {
        best_order = oracle::derive_error_equation(oracle::symbolic_catalog(name, roots.front())).order;
        best_gamma = roots.front().to_string();
      }
    } else if (eq.order < target) {
      conditions = "violated";
    }

    std::ostringstream line;
    line << name << "  order=" << eq.order;
    if (best_order != eq.order) line << " (" << best_order << " at gamma=" << best_gamma << ")";
    const std::string ei = fixed(efficiency_index(eq.order, spec.evaluations()), 3);
    switch (spec.kind) {
      case SchemeKind::newton:
        line << "  EI=" << ei;
        break;
      case SchemeKind::third_order:
        line << "  A(t)=" << strip_gamma_suffix(spec.A->formula()) << "  EI=" << ei;
        break;
      case SchemeKind::fourth_order:
        line << "  EI(" << spec.evaluations() << " evals)=" << ei << "  P(t)=" << spec.P->formula()
             << "  Q(t)=" << strip_gamma_suffix(spec.Q->formula()) << "  a=" << spec.a.to_string();
        break;
    }
    line << "  conditions=" << conditions << "  [" << (has_gamma ? "gamma symbolic" : spec.label) << "]";
    out << line.str() << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"High-precision two-step root finders with weight functions"};
  app.name("wroot");
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Iterate one method on one problem");
  solve_cmd->add_option("--problem", solve_args.problem, "Builtin id (f1..f4) or problem file[:label]");
  solve_cmd->add_option("--method", solve_args.method, "Catalog method name")->required();
  solve_cmd->add_option("--gamma", solve_args.gamma, "Family parameter as p/q");
  solve_cmd->add_option("--x0", solve_args.x0, "Initial guess (decimal)");
  solve_cmd->add_option("--digits", solve_args.digits, "Working precision in decimal digits")->capture_default_str();
  auto* iters = solve_cmd->add_option("--iters", solve_args.iters, "Iterations")->capture_default_str();
  auto* tol = solve_cmd->add_option("--tol", solve_args.tol, "Stop once |f(x)| <= tol (at most 100 iterations)");
  iters->excludes(tol);

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Derive an error equation symbolically");
  verify_cmd->add_option("--method", verify_args.method, "Catalog method name");
  verify_cmd->add_option("--theorem", verify_args.theorem, "1: third-order class, 2: fourth-order class");
  verify_cmd->add_option("--gamma", verify_args.gamma, "Family parameter as p/q (symbolic when omitted)");
  verify_cmd->add_option("--truncation", verify_args.truncation, "Highest power of e kept")->capture_default_str();

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Reproduce an error table");
  bench_cmd->add_option("--table", bench_args.table, "Published table 2..5");
  bench_cmd->add_option("--problem", bench_args.problem, "Builtin id or problem file[:label]");
  bench_cmd->add_option("--methods", bench_args.methods, "Comma-separated catalog names");
  bench_cmd->add_option("--gamma", bench_args.gamma, "Family parameter for gamma3/m4 rows");
  bench_cmd->add_option("--x0", bench_args.x0, "Initial guess (decimal)");
  bench_cmd->add_option("--format", bench_args.format, "md or csv")->capture_default_str();
  bench_cmd->add_option("--out", bench_args.out, "Write the table to this file");
  bench_cmd->add_option("--digits", bench_args.digits, "Working precision in decimal digits")->capture_default_str();
  bench_cmd->add_option("--iters", bench_args.iters, "Iterations")->capture_default_str();

  auto* catalog_cmd = app.add_subcommand("catalog", "List the methods");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << "run 'wroot " << sub->get_name() << " --help' for usage\n";
    } else {
      err << "run 'wroot --help' for usage\n";
    }
    return kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve_args, out, err);
    if (verify_cmd->parsed()) return cmd_verify(verify_args, out, err);
    if (bench_cmd->parsed()) return cmd_bench(bench_args, out, err);
    if (catalog_cmd->parsed()) return cmd_catalog(out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CatalogError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolverFailure;
  }
  return kExitUsage;
}

}  // namespace wroot
