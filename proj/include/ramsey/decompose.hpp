#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ramsey/ast.hpp"
#include "ramsey/ops.hpp"

namespace ramsey {

// Removes every Not node by complementing relations, congruences, and constants. Atoms keep
// their sort-independent meaning; quantifiers under negation are rejected.
Formula push_negations(const Formula& f);

// Result of flattening: f is equivalent to ∃fresh: body ∧ constraints. Each fresh variable is
// fixed by its entry in definitions, listed in dependency order.
struct FlattenResult {
  Formula body;
  Formula constraints;
  std::vector<Var> fresh;
  std::vector<std::pair<Var, Term>> definitions;

  Formula formula() const;
  // Extends an assignment of the original variables with the defined values.
  Assignment extend(const Assignment& a) const;
};

// Rewrites every arithmetic atom into the primitive forms x = 0, x = 1, x + y = z, x < 0 and
// x = ⌊y⌋. Integer multiples use double-and-add chains shared per (variable, factor); division
// by q introduces h with q·h equal to the dividend. Congruence atoms pass through unchanged.
FlattenResult flatten_atoms(const Formula& f, FreshNames& names);

// Whether every non-congruence atom has one of the five primitive forms.
bool is_primitive(const Formula& f);

struct SplitVar {
  Var integral;    // v_int
  Var fractional;  // v_real
};

struct Separation {
  Formula formula;
  std::map<Var, SplitVar> parts;  // Real variables only; Int variables are kept
};

// Replaces each Real variable v by v_int + v_real with 0 ≤ v_real < 1 and rewrites the primitive
// atoms so that each one mentions only integral or only fractional parts.
Separation separate(const Formula& primitive, FreshNames& names);

// v_int = ⌊v⌋ and v_real = v − ⌊v⌋ for every split variable.
Assignment split_assignment(const Assignment& a, const std::map<Var, SplitVar>& parts);

// Every atom is floor-free and mentions only Int or only Real variables.
bool is_separated(const Formula& f);

// Replaces floors of compound arguments by fresh Int variables f with f ≤ u < f + 1, bound by an
// existential next to the atom. ⌊v⌋ of a single Real variable and floors of integral terms stay.
// Arithmetic atoms that mix sorts and whose fractional coefficients sum above carry_limit are
// flattened to primitive form. Expects a negation-free formula.
Formula localize_floors(const Formula& positive, FreshNames& names, std::size_t carry_limit = 24);

struct RamseySplit {
  Formula ramsey;                  // ExistsRamsey with a separated body
  std::map<Var, SplitVar> params;  // split free variables
  std::map<Var, SplitVar> tuple;   // split tuple variables
};

// Separates the body of a Ramsey formula whose body is quantifier-free and negation-free. Real
// variables that share an atom with an Int variable or a floor are split, closed under sharing
// atoms and under pairing x_i with y_i. force_split splits every Real variable.
RamseySplit decompose_ramsey(const Formula& ramsey, FreshNames& names, bool force_split = false);

}  // namespace ramsey
