#include "wroot/problems.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "wroot/expression.hpp"

namespace wroot {

namespace {

struct BuiltinEntry {
  const char* id;
  const char* f_text;
  const char* fprime_text;
  const char* root;
  const char* x0;
  Real (*f)(const Real&);
  Real (*fprime)(const Real&);
};

Real decimal_like(const Real& x, const char* text) { return parse_real(x.context(), text); }

// f1(x) = e^-x - 1 + x/5
Real f1(const Real& x) { return exp(-x) - 1 + x / 5; }
Real f1_prime(const Real& x) { return -exp(-x) + Real(x.context(), Rational(1, 5)); }

// f2(x) = (x^3 + 2.87 x^2 - 10.28)/4.62 - x
Real f2(const Real& x)
{
  return (x * x * x + decimal_like(x, "2.87") * x * x - decimal_like(x, "10.28")) / decimal_like(x, "4.62") - x;
}
Real f2_prime(const Real& x)
{
  return (3 * x * x + decimal_like(x, "5.74") * x) / decimal_like(x, "4.62") - 1;
}

// f3(x) = (x + cos x sin x)/pi - 1/4
Real f3(const Real& x)
{
  return (x + cos(x) * sin(x)) / pi(x.context()) - Real(x.context(), Rational(1, 4));
}
Real f3_prime(const Real& x) { return (1 + cos(2 * x)) / pi(x.context()); }

// f4(x) = x e^-x - 0.1
Real f4(const Real& x) { return x * exp(-x) - decimal_like(x, "0.1"); }
Real f4_prime(const Real& x) { return exp(-x) * (1 - x); }

const std::array<BuiltinEntry, 4>& builtins()
{
  static const std::array<BuiltinEntry, 4> table{{
      {"f1", "exp(-x) - 1 + x/5", "-exp(-x) + 1/5", "4.9651142317442763036", "5", f1, f1_prime},
      {"f2", "(x^3 + 2.87*x^2 - 10.28)/4.62 - x", "(3*x^2 + 5.74*x)/4.62 - 1", "2.0021187789538272889", "2.5", f2,
       f2_prime},
      {"f3", "(x + cos(x)*sin(x))/pi - 1/4", "(1 + cos(2*x))/pi", "0.4158555967898679887", "0.4", f3, f3_prime},
      {"f4", "x*exp(-x) - 0.1", "exp(-x)*(1 - x)", "0.1118325591589629648", "0.3", f4, f4_prime},
  }};
  return table;
}

const BuiltinEntry* find_builtin(std::string_view id)
{
  for (const auto& entry : builtins()) {
    if (id == entry.id) return &entry;
  }
  return nullptr;
}

// Residual bound a refined root must meet: 10^(8 - digits).
Real residual_bound(const PrecisionContext& ctx)
{
  Real ten(ctx, 10);
  return pow(ten, 8L - ctx.decimal_digits());
}

void attach_root(Problem& problem, const Real& guess, const PrecisionContext& ctx)
{
  Real root = refine_root(problem, guess, ctx);
  const Real residual = abs(problem.f(root));
  if (residual > residual_bound(ctx)) {
    throw EvaluationError("reference root for " + problem.label + " does not satisfy f(root) = 0 (residual " +
                          residual.to_string(6) + ")");
  }
  problem.reference_root = std::move(root);
}

std::string trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Evaluation evaluate(const Problem& problem, const Real& x)
{
  Real f = problem.f(x);
  Real fprime = problem.fprime(x);
  if (!f.is_finite() || !fprime.is_finite()) {
    throw EvaluationError(problem.label + ": non-finite value at x = " + x.to_string(20));
  }
  return {std::move(f), std::move(fprime)};
}

const std::vector<std::string>& builtin_problem_ids()
{
  static const std::vector<std::string> ids{"f1", "f2", "f3", "f4"};
  return ids;
}

bool is_builtin_problem(std::string_view id) { return find_builtin(id) != nullptr; }

std::string_view printed_root(std::string_view id)
{
  const BuiltinEntry* entry = find_builtin(id);
  if (entry == nullptr) throw CatalogError("unknown problem '" + std::string(id) + "'");
  return entry->root;
}

Problem builtin_problem(std::string_view id, const PrecisionContext& ctx)
{
  const BuiltinEntry* entry = find_builtin(id);
  if (entry == nullptr) throw CatalogError("unknown problem '" + std::string(id) + "' (expected f1, f2, f3 or f4)");
  Problem problem{entry->id, entry->f_text, entry->fprime_text, entry->f, entry->fprime, std::nullopt,
                  parse_real(ctx, entry->x0)};
  attach_root(problem, parse_real(ctx, entry->root), ctx);
  return problem;
}

Real refine_root(const Problem& problem, const Real& guess, const PrecisionContext& ctx)
{
  Real x = guess;
  if (x.context() != ctx) x = parse_real(ctx, guess.to_string());
  // Quadratic convergence: a 20-digit guess reaches 200 digits in ~4 steps.
  const Real tiny = pow(Real(ctx, 10), -static_cast<long>(ctx.decimal_digits() + PrecisionContext::kGuardDigits));
  for (int i = 0; i < 64; ++i) {
    const Evaluation v = evaluate(problem, x);
    if (v.fprime.is_zero()) throw DerivativeSingularError(problem.label + ": f' vanishes while refining root");
    const Real step = v.f / v.fprime;
    x -= step;
    if (step.is_zero() || abs(step) <= tiny * abs(x)) break;
  }
  return x;
}

std::vector<ProblemDefinition> parse_problem_definitions(std::string_view text)
{
  std::vector<ProblemDefinition> out;
  std::optional<ProblemDefinition> current;
  int line_number = 0;

  auto flush = [&] {
    if (!current) return;
    if (current->label.empty()) throw ParseError("problem record ending at line " + std::to_string(line_number) + " has no label");
    if (current->f.empty()) throw ParseError("problem '" + current->label + "' has no f expression");
    out.push_back(std::move(*current));
    current.reset();
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_number;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) {
      flush();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(line_number) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!current) current.emplace();
    if (key == "label") {
      current->label = value;
    } else if (key == "f") {
      current->f = value;
    } else if (key == "fprime") {
      current->fprime = value;
    } else if (key == "root") {
      current->root = value;
    } else if (key == "x0") {
      current->x0 = value;
    } else {
      throw ParseError("line " + std::to_string(line_number) + ": unknown key '" + key + "'");
    }
  }
  flush();
  return out;
}

std::vector<ProblemDefinition> load_problem_file(const std::filesystem::path& path)
{
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open problem file " + path.string());
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_problem_definitions(buffer.str());
}

Problem make_problem(const ProblemDefinition& definition, const PrecisionContext& ctx)
{
  const Expression f = Expression::parse(definition.f);
  const Expression fprime = definition.fprime ? Expression::parse(*definition.fprime) : f.derivative();
  Problem problem{definition.label,
                  f.to_string(),
                  fprime.to_string(),
                  [f](const Real& x) { return f.evaluate(x); },
                  [fprime](const Real& x) { return fprime.evaluate(x); },
                  std::nullopt,
                  std::nullopt};
  if (definition.x0) problem.suggested_x0 = parse_real(ctx, *definition.x0);
  if (definition.root) attach_root(problem, parse_real(ctx, *definition.root), ctx);
  return problem;
}

}  // namespace wroot
