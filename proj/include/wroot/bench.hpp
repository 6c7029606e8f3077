#pragma once

// Reproduction of the published error tables: one solve per (method, problem)
// and a matrix of |x_n - alpha| cells.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wroot/numerics.hpp"
#include "wroot/problems.hpp"

namespace wroot {

struct PublishedRow {
  std::string method;  // catalog name
  std::string printed_label;
  std::array<std::string, 3> errors;
};

struct PublishedTable {
  int number;
  std::string problem_id;
  std::string x0;
  std::vector<PublishedRow> rows;  // implemented methods only
};

/// Published tables 2-5 (rows with reproducible formulas).
const std::vector<PublishedTable>& published_tables();
const PublishedTable& published_table(int number);
/// Comparator rows that cannot be reproduced; named in emitted tables.
const std::vector<std::string>& omitted_comparators();

struct BenchmarkCell {
  std::string text;            // format_error(|x_n - alpha|) or "FAIL(reason)"
  std::optional<Real> value;
};

struct BenchmarkRun {
  std::string problem_id;
  std::vector<std::string> methods;
  std::vector<std::string> method_labels;
  std::string x0;
  int iterations = 3;
  int digits = PrecisionContext::kDefaultDigits;
  std::vector<std::vector<BenchmarkCell>> results;  // methods x iterations
};

struct BenchmarkOptions {
  std::optional<std::string> x0;       // defaults to the problem's suggestion
  int iterations = 3;
  int digits = PrecisionContext::kDefaultDigits;
  std::optional<Rational> gamma;       // for gamma3 and m4 rows
};

/// Rows run concurrently (OpenMP). Failures become "FAIL(...)" cells.
BenchmarkRun run_benchmark(const Problem& problem, const std::vector<std::string>& methods,
                           const BenchmarkOptions& options = {});
BenchmarkRun run_benchmark(std::string_view problem_id, const std::vector<std::string>& methods,
                           const BenchmarkOptions& options = {});
/// Serial reference for run_benchmark; results must be identical.
BenchmarkRun run_benchmark_serial(const Problem& problem, const std::vector<std::string>& methods,
                                  const BenchmarkOptions& options = {});

enum class OutputFormat { markdown, csv };

std::string emit(const BenchmarkRun& run, OutputFormat format);

enum class CellMatch {
  exact,      // all five mantissa digits and the exponent agree
  within,     // exponent and first three digits agree; 4th-5th differ
  mismatch,
  unchecked,  // no published value for this cell
};

const char* to_string(CellMatch m);

/// Exponent equal and at least three leading mantissa digits equal.
CellMatch match_cell(std::string_view reproduced, std::string_view published);

struct CellComparison {
  std::string method;
  int iteration;
  std::string reproduced;
  std::string published;
  CellMatch match;
};

std::vector<CellComparison> compare_with_published(const BenchmarkRun& run);

}  // namespace wroot
