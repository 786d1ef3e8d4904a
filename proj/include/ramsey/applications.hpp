#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/ast.hpp"
#include "ramsey/ops.hpp"
#include "ramsey/solver.hpp"

namespace ramsey {

// ------------------------------------------------------------ monadic decomposability

enum class MondecMode { PerVariable, Group };

// δ(x, x') := ∃y: ¬((¬φ(x,y) ∨ φ(x',y)) ∧ (¬φ(x',y) ∨ φ(x,y)))
// PerVariable: x = x_i and y = the rest. Group: x = the rest and y = x_i.
struct MondecQuery {
  std::vector<Var> xs, ys;
  Formula ramsey;  // ∃ram x, x': δ
};
MondecQuery mondec_query(const Formula& phi, const std::vector<Var>& vars, std::size_t i, MondecMode mode,
                         FreshNames& names);

struct MondecStep {
  std::size_t index = 0;
  SizeMetrics input, output;
  double eliminate_ms = 0, solve_ms = 0;
  Verdict verdict;
};

struct MondecResult {
  enum class Kind { Decomposable, NotDecomposable, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::optional<std::size_t> index;  // witness variable, or the first Unknown
  std::string reason;
  std::vector<MondecStep> steps;  // ordered by index

  bool decomposable() const { return kind == Kind::Decomposable; }
};

const char* mondec_name(MondecResult::Kind k);

struct MondecOptions {
  MondecMode mode = MondecMode::PerVariable;
  std::size_t jobs = 1;  // concurrent queries; 1 stops at the first Sat
  std::vector<Var> vars;  // variable order; defaults to the free variables of φ
};

MondecResult mondec_check(const Formula& phi, const SolverConfig& cfg, const MondecOptions& opts = {});

// ¬ψ(x) ∨ y = z over fresh y, z of the sort of x_1. Not decomposable iff ψ is satisfiable.
struct Reduction {
  Formula formula;
  std::vector<Var> xs, ys;
};
Reduction mondec_reduction(const Formula& psi, const std::vector<Var>& xs, FreshNames& names);

// -------------------------------------------------------------------------- WQO

struct WqoResult {
  enum class Kind { Wqo, NotWqo, Inconclusive };
  enum class Reason { None, Reflexivity, Transitivity, BadSequence };
  Kind kind = Kind::Inconclusive;
  Reason reason = Reason::None;
  std::string detail;
  std::vector<Verdict> verdicts;  // one per query issued

  bool is_wqo() const { return kind == Kind::Wqo; }
};

const char* wqo_name(WqoResult::Kind k);
const char* wqo_reason_name(WqoResult::Reason r);

struct WqoQueries {
  Formula reflexivity;   // ∃x: ¬φ(x,x)
  Formula transitivity;  // ∃x,y,z: φ(x,y) ∧ φ(y,z) ∧ ¬φ(x,z)
  Formula bad_sequence;  // ∃ram x,y: ¬φ(x,y), eliminated
};
WqoQueries wqo_queries(const Formula& phi, const std::vector<Var>& xs, const std::vector<Var>& ys, FreshNames& names);

WqoResult wqo_check(const Formula& phi, const std::vector<Var>& xs, const std::vector<Var>& ys,
                    const SolverConfig& cfg);

// φ((x,x̄),(y,ȳ)) := x=y=0 ∨ (x<0 ∧ y<0) ∨ (x>0 ∧ y>0) ∨ (x<0 ∧ y=0) ∨ (x=0 ∧ y>0 ∧ ψ(ȳ)).
// A WQO iff ψ is unsatisfiable. ψ ranges over ybar; xbar is a fresh copy.
Reduction wqo_reduction(const Formula& psi, const std::vector<Var>& ybar, FreshNames& names);

// -------------------------------------------------------------------- liveness

// ∃z: ∃ram x,y: reach(x,y) ∧ constraint(x,y,z) with the Ramsey binder eliminated.
// z is every free variable of the constraint outside x and y.
Formula liveness_condition(const Formula& reach, const Formula& constraint, const std::vector<Var>& xs,
                           const std::vector<Var>& ys, FreshNames& names);
Formula liveness_condition(const Formula& reach, const Formula& constraint, const std::vector<Var>& xs,
                           const std::vector<Var>& ys);

// ------------------------------------------------------------------ termination

struct TerminationConditions {
  Formula inductivity;  // [R(x,x') ∧ ¬T(x,x')] ∨ [T(x,x') ∧ R(x',x'') ∧ ¬T(x,x'')]
  Formula loop;         // T(x,x') ∧ T(x',x')
  Formula clique;       // ∃ram x,x': T, eliminated
};
TerminationConditions termination_conditions(const Formula& R, const Formula& T, const std::vector<Var>& xs,
                                             const std::vector<Var>& ys, FreshNames& names);

// Simplified McCarthy 91 over (n, m) restricted to -1 ≤ m ≤ 1, with its ranking relation.
struct TerminationExample {
  std::vector<Var> xs, ys;
  Formula R, T;
};
TerminationExample mccarthy91();

}  // namespace ramsey
