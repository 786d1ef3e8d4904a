#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>

#include "ramsey/ast.hpp"

namespace ramsey {

std::set<Var> free_vars(const Formula& f);
// Every variable occurrence, free or bound, including binder lists.
std::set<Var> all_vars(const Formula& f);

// Fresh-name generator. Names use a reserved prefix and a monotone counter.
class FreshNames {
 public:
  static constexpr std::string_view prefix = "ram!";

  FreshNames() = default;
  // Starts the counter above every prefixed name already used in f.
  explicit FreshNames(const Formula& f) { reserve(f); }

  Var fresh(std::string_view hint, Sort sort);
  void reserve(const Formula& f);
  void reserve(const std::string& name);
  std::size_t counter() const { return next_; }

 private:
  std::size_t next_ = 0;
};

bool is_reserved_name(std::string_view name);

// Simultaneous capture-avoiding substitution. Int variables only accept Int-sorted terms.
Formula substitute(const Formula& f, const std::map<Var, Term>& m, FreshNames& names);
Formula substitute(const Formula& f, const std::map<Var, Term>& m);
Formula substitute_vars(const Formula& f, const std::map<Var, Var>& m, FreshNames& names);
Term substitute(const Term& t, const std::map<Var, Term>& m);

// Standard semantics for quantifier-free, Ramsey-free formulas.
bool evaluate(const Formula& f, const Assignment& a);

bool is_quantifier_free(const Formula& f);
bool contains_ramsey(const Formula& f);
bool contains_floor(const Formula& f);

// Moves every existential in positive position to one top-level block, renaming bound
// variables apart from each other and from free variables. Rejects existentials under
// negation and Ramsey binders.
struct Prenex {
  std::vector<Var> vars;
  Formula matrix;
};
Prenex hoist_exists(const Formula& f, FreshNames& names);

// Drops binder variables that do not occur in the body.
Formula prune_unused_binders(const Formula& f);

struct SizeMetrics {
  std::size_t vars = 0;   // distinct variables, free and bound
  std::size_t atoms = 0;  // atom occurrences
  std::size_t length = 0; // symbols, constants by bit-length
};
SizeMetrics measure(const Formula& f);

}  // namespace ramsey
