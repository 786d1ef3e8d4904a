#include "ramsey/normalize.hpp"

#include <stdexcept>

namespace ramsey {

const char* domain_name(Domain d) {
  switch (d) {
    case Domain::Int: return "int";
    case Domain::Real: return "real";
    case Domain::Mixed: return "mixed";
  }
  return "?";
}

Atom clear_denominators(const Atom& a) {
  if (a.is_congruence()) return a;
  const LinTerm& l = a.lhs();
  if (l.has_integer_data()) return a;
  return a.with_lhs(l * Rational(l.denominator_lcm()));
}

namespace {

enum class AtomSort { Int, Real, Mixed };

AtomSort sort_of(const LinTerm& t) {
  bool ints = false, reals = false;
  for (const auto& [v, c] : t.coeffs()) (v.sort == Sort::Int ? ints : reals) = true;
  if (ints && reals) return AtomSort::Mixed;
  return reals ? AtomSort::Real : AtomSort::Int;
}

// Whether integer complement rules apply to an atom over lhs.
bool integer_rules(const LinTerm& lhs, Domain domain) {
  AtomSort s = sort_of(lhs);
  switch (domain) {
    case Domain::Int:
      if (s != AtomSort::Int) throw std::invalid_argument("mixed-sort atom in an integer formula");
      return true;
    case Domain::Real:
      return false;
    case Domain::Mixed:
      if (s == AtomSort::Mixed) throw std::invalid_argument("mixed-sort atom reaching normalization");
      return s == AtomSort::Int;
  }
  return false;
}

Formula less(const LinTerm& d) { return mk_atom(Atom::lt(d)); }  // d < 0
Formula zero(const LinTerm& d) { return mk_atom(Atom::eq(d)); }  // d = 0

Formula int_atom(Atom a) { return mk_atom(clear_denominators(a)); }

// d REL 0 with REL one of the six relations, positive polarity.
Formula relation(Relation rel, LinTerm d, bool ints) {
  if (ints) d *= Rational(d.denominator_lcm());
  switch (rel) {
    case Relation::Lt:
      return less(d);
    case Relation::Gt:
      return less(-d);
    case Relation::Le:
      return ints ? less(d - LinTerm(1)) : mk_or({less(d), zero(d)});
    case Relation::Ge:
      return ints ? less(-d - LinTerm(1)) : mk_or({less(-d), zero(d)});
    case Relation::Eq:
      return zero(d);
    case Relation::Ne:
      return mk_or({less(d), less(-d)});
  }
  return Formula::bottom();
}

Relation complement(Relation r) {
  switch (r) {
    case Relation::Lt: return Relation::Ge;
    case Relation::Le: return Relation::Gt;
    case Relation::Gt: return Relation::Le;
    case Relation::Ge: return Relation::Lt;
    case Relation::Eq: return Relation::Ne;
    case Relation::Ne: return Relation::Eq;
  }
  return r;
}

Formula nnf(const Formula& f, Domain domain, bool positive) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return positive ? f : mk_not(f);
    case Formula::Kind::Atom: {
      const Atom& a = f.atom();
      if (a.is_congruence()) {
        if (positive) return mk_atom(a);
        return mk_atom(Atom::congruent(a.lhs(), a.modulus(), a.residue(), a.kind() == AtomKind::DivCong));
      }
      bool ints = integer_rules(a.lhs(), domain);
      if (positive) return ints ? int_atom(a) : mk_atom(a);
      Relation rel = a.kind() == AtomKind::Lt ? Relation::Ge : Relation::Ne;
      return relation(rel, a.lhs(), ints);
    }
    case Formula::Kind::TermAtom: {
      auto l = f.lhs().linear();
      auto r = f.rhs().linear();
      if (!l || !r) throw std::invalid_argument("floor term reaching normalization");
      LinTerm d = *l - *r;
      bool ints = integer_rules(d, domain);
      return relation(positive ? f.relation() : complement(f.relation()), d, ints);
    }
    case Formula::Kind::Not:
      return nnf(f.body(), domain, !positive);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& k : f.children()) kids.push_back(nnf(k, domain, positive));
      bool conj = (f.kind() == Formula::Kind::And) == positive;
      return conj ? mk_and(std::move(kids)) : mk_or(std::move(kids));
    }
    case Formula::Kind::Exists:
    case Formula::Kind::ExistsRamsey:
      throw std::invalid_argument("quantifier reaching normalization");
  }
  return f;
}

}  // namespace

Formula nnf_positive(const Formula& f, Domain domain) { return nnf(f, domain, true); }

// ---------------------------------------------------------------- canonical atoms

PositionIndex::PositionIndex(const TuplePartition& p) {
  for (std::size_t i = 0; i < p.xs.size(); ++i) xpos.emplace(p.xs[i], i);
  for (std::size_t i = 0; i < p.ys.size(); ++i) ypos.emplace(p.ys[i], i);
}

CanonAtom canonize_atom(const Atom& a, const TuplePartition& p) { return canonize_atom(a, p, PositionIndex(p)); }

CanonAtom canonize_atom(const Atom& a0, const TuplePartition& p, const PositionIndex& idx) {
  Atom a = a0;
  if (!a.is_congruence()) a = a.with_lhs(a.lhs() * Rational(a.lhs().denominator_lcm()));
  const auto& xpos = idx.xpos;
  const auto& ypos = idx.ypos;
  CanonAtom c;
  c.kind = a.kind();
  c.modulus = a.modulus();
  for (const auto& [v, k] : a.lhs().coeffs()) {
    if (auto it = xpos.find(v); it != xpos.end()) {
      c.r[it->second] += k;
    } else if (auto jt = ypos.find(v); jt != ypos.end()) {
      c.s[jt->second] -= k;
    } else {
      if (p.params && !p.params->count(v))
        throw std::invalid_argument("variable '" + v.name + "' outside the partition");
      c.t.add(v, -k);
    }
  }
  for (auto* vec : {&c.r, &c.s})
    for (auto it = vec->begin(); it != vec->end();) it = it->second.is_zero() ? vec->erase(it) : std::next(it);
  if (a.is_congruence())
    c.h = Rational(a.residue()) - a.lhs().constant();
  else
    c.h = -a.lhs().constant();
  return c;
}

LinTerm dot(const SparseVec& v, const std::vector<Var>& vars) {
  LinTerm out;
  for (const auto& [i, k] : v) out.add(vars.at(i), k);
  return out;
}

namespace {

LinTerm dot_terms(const SparseVec& v, const std::vector<LinTerm>& terms) {
  LinTerm out;
  for (const auto& [i, k] : v) out += terms.at(i) * k;
  return out;
}

}  // namespace

Atom assemble(const CanonAtom& c, const std::vector<LinTerm>& xside, const std::vector<LinTerm>& yside) {
  LinTerm lhs = dot_terms(c.r, xside) - dot_terms(c.s, yside) - c.t - LinTerm(c.h);
  switch (c.kind) {
    case AtomKind::Lt:
      return Atom::lt(lhs);
    case AtomKind::Eq:
      return Atom::eq(lhs);
    case AtomKind::DivCong:
    case AtomKind::NotDivCong:
      return Atom::congruent(lhs, c.modulus, 0, c.kind == AtomKind::NotDivCong);
  }
  return Atom::lt(lhs);
}

Atom assemble(const CanonAtom& c, const std::vector<Var>& xs, const std::vector<Var>& ys) {
  std::vector<LinTerm> xt, yt;
  xt.reserve(c.r.size());
  yt.reserve(c.s.size());
  SparseVec r, s;
  for (const auto& [i, k] : c.r) {
    r.emplace(xt.size(), k);
    xt.emplace_back(xs.at(i));
  }
  for (const auto& [i, k] : c.s) {
    s.emplace(yt.size(), k);
    yt.emplace_back(ys.at(i));
  }
  CanonAtom packed = c;
  packed.r = std::move(r);
  packed.s = std::move(s);
  return assemble(packed, xt, yt);
}

namespace {

template <typename F>
Formula map_atoms(const Formula& f, F&& fn) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return fn(f.atom());
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& k : f.children()) kids.push_back(map_atoms(k, fn));
      return f.kind() == Formula::Kind::And ? mk_and(std::move(kids)) : mk_or(std::move(kids));
    }
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    default:
      throw std::invalid_argument("expected a positive combination of atoms");
  }
}

}  // namespace

Formula canonize(const Formula& positive, const TuplePartition& p) {
  PositionIndex idx(p);
  return map_atoms(positive, [&](const Atom& a) { return mk_atom(assemble(canonize_atom(a, p, idx), p.xs, p.ys)); });
}

std::vector<Var> SelectorSkeleton::selectors() const {
  std::vector<Var> out;
  out.reserve(table.size());
  for (const auto& g : table) out.push_back(g.selector);
  return out;
}

SelectorSkeleton build_selector_skeleton(const Formula& positive, const TuplePartition& p, Domain domain,
                                         FreshNames& names) {
  SelectorSkeleton out;
  std::vector<Formula> ranges;
  PositionIndex idx(p);
  Formula skel = map_atoms(positive, [&](const Atom& a) -> Formula {
    CanonAtom c = canonize_atom(a, p, idx);
    if (!c.touches_tuple()) return mk_atom(assemble(c, p.xs, p.ys));
    Sort sort = Sort::Int;
    if (domain == Domain::Real) {
      sort = Sort::Real;
    } else if (domain == Domain::Mixed) {
      bool real = false;
      for (const auto& [v, k] : a.lhs().coeffs())
        if (v.sort == Sort::Real) real = true;
      sort = real ? Sort::Real : Sort::Int;
    }
    Var q = names.fresh(sort == Sort::Int ? "q" : "p", sort);
    out.table.push_back(GuardedAtom{q, std::move(c)});
    ranges.push_back(mk_or({eq(q, 0), eq(q, 1)}));
    return eq(q, 1);
  });
  ranges.insert(ranges.begin(), skel);
  out.skeleton = mk_and(std::move(ranges));
  return out;
}

Formula reassemble(const SelectorSkeleton& s, const TuplePartition& p) {
  std::vector<Formula> parts{s.skeleton};
  std::vector<Var> qs;
  for (const auto& g : s.table) {
    parts.push_back(mk_or({eq(g.selector, 0), mk_atom(assemble(g.atom, p.xs, p.ys))}));
    qs.push_back(g.selector);
  }
  return mk_exists(std::move(qs), mk_and(std::move(parts)));
}

}  // namespace ramsey
