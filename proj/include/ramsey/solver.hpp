#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramsey/ast.hpp"

namespace ramsey {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverConfig {
  std::string path = "z3";
  std::vector<std::string> args = {"-in", "-smt2"};
  int timeout_ms = 60000;
  std::optional<std::string> logic;

  // Defaults, with the executable taken from RAMSEY_SOLVER when set.
  static SolverConfig from_env();
};

struct Verdict {
  enum class Kind { Sat, Unsat, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<Assignment> model;
  std::string reason;

  static Verdict sat(std::optional<Assignment> m = std::nullopt) { return {Kind::Sat, std::move(m), {}}; }
  static Verdict unsat() { return {Kind::Unsat, std::nullopt, {}}; }
  static Verdict unknown(std::string why) { return {Kind::Unknown, std::nullopt, std::move(why)}; }
  bool is_sat() const { return kind == Kind::Sat; }
  bool is_unsat() const { return kind == Kind::Unsat; }
  bool is_unknown() const { return kind == Kind::Unknown; }
};

const char* verdict_name(Verdict::Kind k);

struct ProcessResult {
  int exit_code = 0;
  bool timed_out = false;
  std::string out;
  std::string err;
};

// Runs the program with the input on stdin; kills it once timeout_ms elapses.
ProcessResult run_process(const std::string& path, const std::vector<std::string>& args, const std::string& input,
                          int timeout_ms);

// SMT-LIB2 query text for a Ramsey-free formula: existentials become declarations, and
// get-value over every declared variable follows check-sat when with_model is set.
struct Query {
  std::string text;
  std::vector<Var> declared;
  Formula matrix;
};
Query render_query(const Formula& f, const SolverConfig& cfg, bool with_model = true);

// Values from a get-value response.
Assignment parse_model(const std::string& text, const std::vector<Var>& declared);

// Decides satisfiability. Sat models are re-checked against the formula; a mismatch throws.
Verdict check_sat(const Formula& f, const SolverConfig& cfg, bool with_model = true);

// k copies c_1..c_k of the tuple with body(c_i, c_j) for all i < j and pairwise distinct copies.
// Parameters listed in params are fixed to the given values.
struct CliqueQuery {
  Formula formula;
  std::vector<std::vector<Var>> copies;
};
CliqueQuery clique_formula(const Formula& body, const std::vector<Var>& xs, const std::vector<Var>& ys,
                           const Assignment& params, int k);
Verdict find_k_clique(const Formula& body, const std::vector<Var>& xs, const std::vector<Var>& ys,
                      const Assignment& params, int k, const SolverConfig& cfg);

}  // namespace ramsey
