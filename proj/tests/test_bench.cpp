#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "wroot/bench.hpp"

using namespace wroot;

namespace {

std::vector<std::string> texts(const BenchmarkRun& run, std::size_t row)
{
  std::vector<std::string> out;
  for (const auto& cell : run.results.at(row)) out.push_back(cell.text);
  return out;
}

std::vector<std::string> lines(const std::string& s)
{
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("table 2 rows")
{
  const PublishedTable& t = published_table(2);
  std::vector<std::string> methods;
  for (const auto& row : t.rows) methods.push_back(row.method);
  const BenchmarkRun run = run_benchmark("f1", methods, {t.x0});
  REQUIRE(run.results.size() == 5);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CAPTURE(t.rows[i].method);
    CHECK(texts(run, i) == std::vector<std::string>(t.rows[i].errors.begin(), t.rows[i].errors.end()));
  }
}

TEST_CASE("single rows from tables 3 and 5")
{
  CHECK(texts(run_benchmark("f2", {"m1"}, {"2.5"}), 0) ==
        std::vector<std::string>{"0.76770e-2", "0.12105e-8", "0.76261e-36"});
  // The middle cell differs from the printed 0.72236e-10 in the 4th digit.
  const BenchmarkRun homeier = run_benchmark("f4", {"homeier"}, {"0.3"});
  CHECK(texts(homeier, 0) == std::vector<std::string>{"0.64393e-3", "0.72263e-10", "0.10226e-30"});
  const auto cmp = compare_with_published(homeier);
  REQUIRE(cmp.size() == 3);
  CHECK(cmp[0].match == CellMatch::exact);
  CHECK(cmp[1].match == CellMatch::within);
  CHECK(cmp[2].match == CellMatch::exact);
}

TEST_CASE("every published cell meets the three-digit policy")
{
  int checked = 0;
  for (const auto& t : published_tables()) {
    std::vector<std::string> methods;
    for (const auto& row : t.rows) methods.push_back(row.method);
    for (const auto& c : compare_with_published(run_benchmark(t.problem_id, methods, {t.x0}))) {
      CAPTURE(t.number);
      CAPTURE(c.method);
      CAPTURE(c.iteration);
      CHECK(c.match != CellMatch::mismatch);
      CHECK(c.match != CellMatch::unchecked);
      ++checked;
    }
  }
  CHECK(checked == 60);
}

TEST_CASE("parallel rows equal the serial reference")
{
  const std::vector<std::string> methods{"newton", "weerakoon", "homeier", "chun", "gamma3",
                                         "m1",     "m2",        "m3",      "m4"};
  BenchmarkOptions options;
  options.gamma = Rational(1, 3);
  for (const auto& id : builtin_problem_ids()) {
    const Problem p = builtin_problem(id, PrecisionContext(200));
    const BenchmarkRun parallel = run_benchmark(p, methods, options);
    const BenchmarkRun serial = run_benchmark_serial(p, methods, options);
    REQUIRE(parallel.results.size() == serial.results.size());
    for (std::size_t i = 0; i < methods.size(); ++i) {
      for (std::size_t n = 0; n < 3; ++n) {
        CHECK(*parallel.results[i][n].value == *serial.results[i][n].value);
      }
    }
  }
}

TEST_CASE("failures become cells")
{
  const BenchmarkRun run = run_benchmark("f4", {"newton", "m1", "nosuch"}, {"1"});
  CHECK(run.results[0][0].text.rfind("FAIL(", 0) == 0);
  CHECK(run.results[0].size() == 3);
  CHECK(run.results[2][0].text.find("unknown method") != std::string::npos);
  CHECK_FALSE(run.results[0][0].value);
}

TEST_CASE("markdown output")
{
  const BenchmarkRun run = run_benchmark("f1", {"newton", "m1"}, {});
  const auto md = lines(emit(run, OutputFormat::markdown));
  CHECK(md[0] == "Errors |x_n - alpha| for f1 with x0 = 5 (200 digits)");
  CHECK(md[2] == "| Method | \\|x1 - alpha\\| | \\|x2 - alpha\\| | \\|x3 - alpha\\| |");
  CHECK(md[4] == "| Newton | 0.21464e-4 | 0.83264e-11 | 0.12530e-23 |");
  CHECK(md[5] == "| Method 1 | 0.42743e-9 | 0.99425e-41 | 0.29108e-167 |");
  CHECK(md.back().find("Not reproduced") == 0);

  const auto empty = lines(emit(run_benchmark("f1", {}, {}), OutputFormat::markdown));
  CHECK(empty.size() == 4);
  CHECK(empty.back() == "|---|---|---|---|");
}

TEST_CASE("csv output")
{
  BenchmarkOptions one;
  one.iterations = 1;
  const auto csv = lines(emit(run_benchmark("f3", {"m1"}, one), OutputFormat::csv));
  CHECK(csv == std::vector<std::string>{"method,e1", "m1,0.24363e-7"});
  CHECK(lines(emit(run_benchmark("f3", {"m1"}, {}), OutputFormat::csv))[1] == "m1,0.24363e-7,0.14724e-30,0.19642e-123");

  BenchmarkRun fail;
  fail.methods = {"x"};
  fail.iterations = 1;
  fail.results = {{{"FAIL(a, \"b\")", std::nullopt}}};
  CHECK(lines(emit(fail, OutputFormat::csv))[1] == "x,\"FAIL(a, \"\"b\"\")\"");
}

TEST_CASE("cell policy")
{
  CHECK(match_cell("0.72263e-10", "0.72236e-10") == CellMatch::within);
  CHECK(match_cell("0.72236e-10", "0.72236e-10") == CellMatch::exact);
  CHECK(match_cell("0.72336e-10", "0.72236e-10") == CellMatch::mismatch);
  CHECK(match_cell("0.72236e-11", "0.72236e-10") == CellMatch::mismatch);
  CHECK(match_cell("FAIL(x)", "0.72236e-10") == CellMatch::mismatch);
}

TEST_CASE("published tables")
{
  CHECK(published_tables().size() == 4);
  CHECK(published_table(4).problem_id == "f3");
  CHECK_THROWS_AS(published_table(9), CatalogError);
  CHECK(omitted_comparators().size() == 2);
  // Off-protocol runs are not compared against the printed cells.
  BenchmarkOptions fewer;
  fewer.digits = 100;
  for (const auto& c : compare_with_published(run_benchmark("f1", {"m1"}, fewer))) {
    CHECK(c.match == CellMatch::unchecked);
  }
}
