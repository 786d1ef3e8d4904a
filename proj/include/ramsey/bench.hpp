#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ramsey/applications.hpp"
#include "ramsey/frontend.hpp"
#include "ramsey/normalize.hpp"
#include "ramsey/solver.hpp"

namespace ramsey {

enum class Family { Half, EqEx, EqFree, Dickson, Program, Imp, Diagonal, Cubes2d, Cubes10, Mixed };

const char* family_name(Family f);
std::optional<Family> parse_family(const std::string& s);
std::optional<Domain> parse_domain(const std::string& s);
// Families checked for monadic decomposability rather than for satisfiability.
bool is_mondec_family(Family f);

struct BenchSpec {
  Family family = Family::Half;
  int dim = 1;
  long param = 0;  // t for half, k for imp, diagonal, cubes2d and mixed; unused otherwise
  Domain domain = Domain::Int;
};

// Throws std::invalid_argument for combinations outside the benchmark tables.
void validate(const BenchSpec& s);
std::string describe(const BenchSpec& s);

// Ramsey families: the goal is the ∃ram formula. Mondec families: the goal is quantifier-free
// and info["mode"] is "mondec".
Script generate_benchmark(const BenchSpec& s);

// "sat"/"unsat" or "decomposable"/"not-decomposable" as listed in the tables.
std::string expected_verdict(const BenchSpec& s);

struct BenchReport {
  BenchSpec spec;
  SizeMetrics input, output;
  double eliminate_ms = 0, solve_ms = 0;
  std::string verdict;   // sat, unsat, unknown, decomposable, not-decomposable, inconclusive, error
  std::string expected;
  std::string error;
  std::string script;    // the eliminated query, kept when requested

  bool matches() const { return error.empty() && verdict == expected; }
};

struct SuiteOptions {
  std::size_t jobs = 1;
  MondecMode mode = MondecMode::Group;
  bool keep_script = false;
};

BenchReport run_benchmark(const BenchSpec& s, const SolverConfig& cfg, const SuiteOptions& opts = {});
// Reports come back in spec order; failures of one entry do not affect the others.
std::vector<BenchReport> run_suite(const std::vector<BenchSpec>& specs, const SolverConfig& cfg,
                                   const SuiteOptions& opts = {});

std::string render_table(const std::vector<BenchReport>& reports);
std::string to_json(const std::vector<BenchReport>& reports);

}  // namespace ramsey
