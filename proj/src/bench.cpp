#include "wroot/bench.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "wroot/solvers.hpp"
#include "wroot/weights.hpp"

namespace wroot {

const std::vector<PublishedTable>& published_tables()
{
  static const std::vector<PublishedTable> tables{
      {2,
       "f1",
       "5",
       {
           {"newton", "Newton Method", {"0.21464e-4", "0.83264e-11", "0.12530e-23"}},
           {"weerakoon", "Weerakoon", {"0.11208e-6", "0.37810e-23", "0.14517e-72"}},
           {"homeier", "Homeier", {"0.12544e-6", "0.59456e-23", "0.63310e-72"}},
           {"chun", "Chun Method", {"0.98734e-7", "0.22705e-23", "0.27611e-73"}},
           {"m1", "Method 1", {"0.42743e-9", "0.99425e-41", "0.29108e-167"}},
       }},
      {3,
       "f2",
       "2.5",
       {
           {"newton", "Newton Method", {"0.85925e-1", "0.32675e-2", "0.50032e-5"}},
           {"weerakoon", "Weerakoon", {"0.18271e-1", "0.14770e-5", "0.79610e-18"}},
           {"homeier", "Homeier", {"0.49772e-2", "0.33027e-8", "0.95318e-27"}},
           {"chun", "Chun Method", {"0.27815e-1", "0.95903e-5", "0.41254e-15"}},
           {"m1", "Method 1", {"0.76770e-2", "0.12105e-8", "0.76261e-36"}},
       }},
      {4,
       "f3",
       "0.4",
       {
           {"newton", "Newton Method", {"0.10737e-3", "0.50901e-8", "0.11442e-16"}},
           {"weerakoon", "Weerakoon", {"0.20631e-6", "0.53436e-21", "0.92858e-65"}},
           {"homeier", "Homeier", {"0.52795e-6", "0.19743e-19", "0.10325e-59"}},
           {"chun", "Chun Method", {"0.93064e-6", "0.20624e-18", "0.22446e-56"}},
           {"m1", "Method 1", {"0.24363e-7", "0.14724e-30", "0.19642e-123"}},
       }},
      {5,
       "f4",
       "0.3",
       {
           {"newton", "Newton Method", {"0.47567e-1", "0.22849e-2", "0.55356e-5"}},
           {"weerakoon", "Weerakoon", {"0.13039e-1", "0.31800e-5", "0.45048e-16"}},
           {"homeier", "Homeier", {"0.64393e-3", "0.72236e-10", "0.10226e-30"}},
           {"chun", "Chun Method", {"0.34012e-1", "0.11125e-3", "0.34855e-11"}},
           {"m1", "Method 1", {"0.11886e-1", "0.73037e-7", "0.10950e-27"}},
       }},
  };
  return tables;
}

const PublishedTable& published_table(int number)
{
  for (const auto& t : published_tables()) {
    if (t.number == number) return t;
  }
  throw CatalogError("no published table " + std::to_string(number) + " (expected 2, 3, 4 or 5)");
}

const std::vector<std::string>& omitted_comparators()
{
  static const std::vector<std::string> names{"Soleymani et al.", "Khattri"};
  return names;
}

namespace {

std::vector<BenchmarkCell> run_row(const Problem& problem, const std::string& method, const Real& x0,
                                   const SolverConfig& config, const std::optional<Rational>& gamma)
{
  std::vector<BenchmarkCell> cells;
  auto fail_rest = [&](const std::string& reason) {
    while (static_cast<int>(cells.size()) < config.max_iterations) cells.push_back({"FAIL(" + reason + ")", {}});
  };
  try {
    const SchemeSpec scheme = catalog(method, catalog_requires_gamma(method) ? gamma : std::nullopt);
    const IterationTrace trace = solve(problem, scheme, x0, config);
    for (const auto& step : trace.iterates) {
      if (step.error) {
        cells.push_back({format_error(*step.error), *step.error});
      } else {
        cells.push_back({"n/a", {}});
      }
    }
    if (trace.terminated_by == Termination::failure) fail_rest(trace.failure_reason);
    // An exact hit ends the trace early; later iterates stay at the root.
    while (static_cast<int>(cells.size()) < config.max_iterations) {
      cells.push_back(cells.empty() ? BenchmarkCell{"n/a", {}} : cells.back());
    }
  } catch (const Error& e) {
    fail_rest(e.what());
  }
  return cells;
}

struct Prepared {
  BenchmarkRun run;
  SolverConfig config;
  Real x0;
};

Prepared prepare(const Problem& problem, const std::vector<std::string>& methods, const BenchmarkOptions& options)
{
  if (options.iterations < 1) throw ConfigError("iterations must be at least 1");
  const PrecisionContext ctx(options.digits);
  Real x0 = options.x0 ? parse_real(ctx, *options.x0)
                       : (problem.suggested_x0 ? Real(ctx) + *problem.suggested_x0
                                               : throw ConfigError(problem.label + " needs an explicit x0"));
  BenchmarkRun run;
  run.problem_id = problem.label;
  run.methods = methods;
  run.x0 = options.x0 ? *options.x0 : x0.to_string(20);
  if (!options.x0) {
    // Shortest decimal that names the suggested start.
    for (int sig = 1; sig <= 17; ++sig) {
      if (parse_real(ctx, x0.to_string(sig)) == x0) {
        std::ostringstream s;
        s << std::setprecision(sig) << x0.to_double();
        run.x0 = s.str();
        break;
      }
    }
  }
  run.iterations = options.iterations;
  run.digits = options.digits;
  for (const auto& m : methods) {
    try {
      run.method_labels.push_back(catalog(m, catalog_requires_gamma(m) ? options.gamma : std::nullopt).label);
    } catch (const Error&) {
      run.method_labels.push_back(m);
    }
  }
  run.results.resize(methods.size());
  SolverConfig config{options.iterations, std::nullopt, ctx};
  return {std::move(run), std::move(config), std::move(x0)};
}

}  // namespace

BenchmarkRun run_benchmark(const Problem& problem, const std::vector<std::string>& methods,
                           const BenchmarkOptions& options)
{
  Prepared p = prepare(problem, methods, options);
  const long rows = static_cast<long>(methods.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < rows; ++i) {
    p.run.results[static_cast<std::size_t>(i)] =
        run_row(problem, methods[static_cast<std::size_t>(i)], p.x0, p.config, options.gamma);
  }
  return std::move(p.run);
}

BenchmarkRun run_benchmark_serial(const Problem& problem, const std::vector<std::string>& methods,
                                  const BenchmarkOptions& options)
{
  Prepared p = prepare(problem, methods, options);
  for (std::size_t i = 0; i < methods.size(); ++i) {
    p.run.results[i] = run_row(problem, methods[i], p.x0, p.config, options.gamma);
  }
  return std::move(p.run);
}

BenchmarkRun run_benchmark(std::string_view problem_id, const std::vector<std::string>& methods,
                           const BenchmarkOptions& options)
{
  const Problem problem = builtin_problem(problem_id, PrecisionContext(options.digits));
  return run_benchmark(problem, methods, options);
}

std::string emit(const BenchmarkRun& run, OutputFormat format)
{
  std::ostringstream out;
  if (format == OutputFormat::csv) {
    out << "method";
    for (int n = 1; n <= run.iterations; ++n) out << ",e" << n;
    out << '\n';
    for (std::size_t i = 0; i < run.results.size(); ++i) {
      out << run.methods[i];
      for (const auto& cell : run.results[i]) {
        // FAIL texts may contain commas.
        const bool quote = cell.text.find_first_of(",\"") != std::string::npos;
        if (quote) {
          std::string escaped;
          for (char ch : cell.text) escaped += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          out << ",\"" << escaped << '"';
        } else {
          out << ',' << cell.text;
        }
      }
      out << '\n';
    }
    return out.str();
  }

  out << "Errors |x_n - alpha| for " << run.problem_id << " with x0 = " << run.x0 << " (" << run.digits
      << " digits)\n\n";
  out << "| Method |";
  for (int n = 1; n <= run.iterations; ++n) out << " \\|x" << n << " - alpha\\| |";
  out << "\n|---|";
  for (int n = 1; n <= run.iterations; ++n) out << "---|";
  out << '\n';
  for (std::size_t i = 0; i < run.results.size(); ++i) {
    out << "| " << run.method_labels[i] << " |";
    for (const auto& cell : run.results[i]) out << ' ' << cell.text << " |";
    out << '\n';
  }
  if (!run.results.empty() && is_builtin_problem(run.problem_id)) {
    out << "\nNot reproduced (formulas unavailable): ";
    for (std::size_t i = 0; i < omitted_comparators().size(); ++i) {
      out << (i ? "; " : "") << omitted_comparators()[i];
    }
    out << ".\n";
  }
  return out.str();
}

const char* to_string(CellMatch m)
{
  switch (m) {
    case CellMatch::exact:
      return "exact";
    case CellMatch::within:
      return "within";
    case CellMatch::mismatch:
      return "mismatch";
    case CellMatch::unchecked:
      return "unchecked";
  }
  return "?";
}

CellMatch match_cell(std::string_view reproduced, std::string_view published)
{
  auto split = [](std::string_view s) -> std::optional<std::pair<std::string, std::string>> {
    if (s.substr(0, 2) != "0.") return std::nullopt;
    const auto e = s.find('e');
    if (e == std::string_view::npos) return std::nullopt;
    return std::make_pair(std::string(s.substr(2, e - 2)), std::string(s.substr(e + 1)));
  };
  const auto a = split(reproduced);
  const auto b = split(published);
  if (!a || !b) return CellMatch::mismatch;
  if (a->second != b->second || a->first.size() < 3 || b->first.size() < 3) return CellMatch::mismatch;
  if (a->first == b->first) return CellMatch::exact;
  return a->first.substr(0, 3) == b->first.substr(0, 3) ? CellMatch::within : CellMatch::mismatch;
}

std::vector<CellComparison> compare_with_published(const BenchmarkRun& run)
{
  std::vector<CellComparison> out;
  const PublishedTable* table = nullptr;
  for (const auto& t : published_tables()) {
    if (t.problem_id == run.problem_id) table = &t;
  }
  for (std::size_t i = 0; i < run.results.size(); ++i) {
    const PublishedRow* row = nullptr;
    if (table != nullptr && Rational::parse(run.x0) == Rational::parse(table->x0)) {
      for (const auto& r : table->rows) {
        if (r.method == run.methods[i]) row = &r;
      }
    }
    for (std::size_t n = 0; n < run.results[i].size(); ++n) {
      CellComparison c{run.methods[i], static_cast<int>(n) + 1, run.results[i][n].text, "", CellMatch::unchecked};
      if (row != nullptr && n < row->errors.size() && run.digits == PrecisionContext::kDefaultDigits) {
        c.published = row->errors[n];
        c.match = match_cell(c.reproduced, c.published);
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace wroot
