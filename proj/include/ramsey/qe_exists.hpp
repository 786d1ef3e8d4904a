#pragma once

#include "ramsey/ast.hpp"
#include "ramsey/ops.hpp"

namespace ramsey {

// Component-wise disequality of two equally sorted vectors: ⋁ (a_i < b_i ∨ a_i > b_i).
Formula vectors_differ(const std::vector<LinTerm>& a, const std::vector<LinTerm>& b);

// ∃ram x,y: ∃w: φ(x,y,w,z)  becomes  ∃ram (x,v1,v2),(y,w1,w2): φ(x,y,v1+w2,z) ∧ x ≠ y.
// Existentials anywhere in positive position of the body are first hoisted to one block.
// Without an inner block the formula is returned unchanged.
Formula lift_inner_existentials(const Formula& f, FreshNames& names);

}  // namespace ramsey
