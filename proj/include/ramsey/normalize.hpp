#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ramsey/ast.hpp"
#include "ramsey/ops.hpp"

namespace ramsey {

enum class Domain { Int, Real, Mixed };

const char* domain_name(Domain d);

// Pushes negations into atoms and desugars ≤, ≥, >, ≠ and negated atoms. Over Mixed each
// atom is treated by the rules of its own sort; an atom mixing Int and Real variables is
// rejected there and under Int.
Formula nnf_positive(const Formula& f, Domain domain);

// Integer-valued atoms get integer coefficients; the factor is positive.
Atom clear_denominators(const Atom& a);

using SparseVec = std::map<std::size_t, Rational>;

// kind Lt: r·x < s·y + t + h;  Eq: r·x = s·y + t + h;  congruences: r·x ≡ s·y + t + h (mod m).
// r and s are indexed by tuple position; t ranges over parameters without a constant.
struct CanonAtom {
  AtomKind kind = AtomKind::Lt;
  SparseVec r;
  SparseVec s;
  LinTerm t;
  Rational h;
  BigInt modulus = 1;

  bool touches_tuple() const { return !r.empty() || !s.empty(); }
};

struct TuplePartition {
  std::vector<Var> xs;
  std::vector<Var> ys;
  // When set, every variable must be a tuple variable or one of these.
  std::optional<std::set<Var>> params;
};

struct PositionIndex {
  std::map<Var, std::size_t> xpos, ypos;
  explicit PositionIndex(const TuplePartition& p);
};

CanonAtom canonize_atom(const Atom& a, const TuplePartition& p);
CanonAtom canonize_atom(const Atom& a, const TuplePartition& p, const PositionIndex& idx);
// Atom for the canonical form with the tuple positions bound to the given vectors.
Atom assemble(const CanonAtom& c, const std::vector<LinTerm>& xside, const std::vector<LinTerm>& yside);
Atom assemble(const CanonAtom& c, const std::vector<Var>& xs, const std::vector<Var>& ys);

// Rearranges every atom into canonical shape with denominators cleared.
Formula canonize(const Formula& positive, const TuplePartition& p);

LinTerm dot(const SparseVec& v, const std::vector<Var>& vars);

struct GuardedAtom {
  Var selector;
  CanonAtom atom;
};

struct SelectorSkeleton {
  Formula skeleton;                // selectors, 0/1 ranges, and parameter-only atoms
  std::vector<GuardedAtom> table;  // one entry per abstracted atom occurrence
  std::vector<Var> selectors() const;
};

// Abstracts every atom that mentions a tuple variable by a selector. Selector sort is Int
// over Int, Real over Real, and follows the atom's sort over Mixed.
SelectorSkeleton build_selector_skeleton(const Formula& positive, const TuplePartition& p, Domain domain,
                                         FreshNames& names);

// Builds ∃q: φ′ ∧ ⋀(q = 1 → α).
Formula reassemble(const SelectorSkeleton& s, const TuplePartition& p);

}  // namespace ramsey
