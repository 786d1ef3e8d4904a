#pragma once

#include <optional>
#include <vector>

#include "ramsey/ast.hpp"
#include "ramsey/normalize.hpp"
#include "ramsey/ops.hpp"

namespace ramsey {

struct Existential {
  std::vector<Var> vars;
  Formula body;

  Formula formula() const { return mk_exists(vars, body); }
};

// Profile constraints over ℤ for the guarded atoms: admissibility, x ≠ 0, and the guarded
// bound and modulo conditions on x0 and x. Atom positions index a tuple of the given dimension.
Existential int_core(const std::vector<GuardedAtom>& table, std::size_t dim, FreshNames& names);

// Profile constraints over ℝ: type-code ranges and admissibility, x_c ≠ 0, and the guarded
// limit, constant, convergence, unboundedness and equality conditions on x, x_c, x_∞.
Existential real_core(const std::vector<GuardedAtom>& table, std::size_t dim, FreshNames& names);

// Each takes an ExistsRamsey formula. Inner existentials are lifted first.
Formula eliminate_ramsey_int(const Formula& ramsey, FreshNames& names);
Formula eliminate_ramsey_real(const Formula& ramsey, FreshNames& names);
Formula eliminate_ramsey_mixed(const Formula& ramsey, FreshNames& names, bool force_split = false);

// Int when every variable is Int and no floor occurs; Real when the tuple and inner variables
// are Real and no floor occurs; Mixed otherwise.
Domain choose_domain(const Formula& ramsey);

struct EliminationOptions {
  std::optional<Domain> domain;
  bool force_split = false;
};

// Replaces the Ramsey binder of f by an equivalent existential formula and drops unused binders.
// Formulas without a Ramsey binder are returned unchanged.
Formula eliminate(const Formula& f, FreshNames& names, const EliminationOptions& opts = {});
Formula eliminate(const Formula& f, const EliminationOptions& opts = {});

}  // namespace ramsey
