#include "ramsey/ramsey.hpp"

#include <algorithm>
#include <stdexcept>

#include "ramsey/decompose.hpp"
#include "ramsey/qe_exists.hpp"

namespace ramsey {

namespace {

std::vector<Var> fresh_vector(std::size_t n, std::string_view hint, Sort sort, FreshNames& names) {
  std::vector<Var> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(names.fresh(hint, sort));
  return out;
}

std::vector<LinTerm> as_terms(const std::vector<Var>& vs) { return {vs.begin(), vs.end()}; }

Formula nonzero(const std::vector<Var>& v) {
  return vectors_differ(as_terms(v), std::vector<LinTerm>(v.size(), LinTerm(0)));
}

Formula unguarded(const Var& q, Formula f) { return mk_or({eq(q, 0), std::move(f)}); }

// ---------------------------------------------------------------- integers

CanonAtom shifted(CanonAtom c, bool negate, const Rational& delta) {
  c.kind = AtomKind::Lt;
  if (negate) {
    for (auto& [i, k] : c.r) k = -k;
    for (auto& [i, k] : c.s) k = -k;
    c.t = -c.t;
    c.h = -c.h;
  }
  c.h += delta;
  return c;
}

void int_inequality(const Var& q, const CanonAtom& c, const std::vector<Var>& x0, const std::vector<Var>& x,
                    FreshNames& names, Existential& out, std::vector<Formula>& parts) {
  Var p1 = names.fresh("p", Sort::Int), p2 = names.fresh("p", Sort::Int);
  Var w1 = names.fresh("w", Sort::Int), w2 = names.fresh("w", Sort::Int);
  out.vars.insert(out.vars.end(), {p1, p2, w1, w2});
  parts.push_back(mk_or({eq(w1, 0), eq(w1, 1)}));
  parts.push_back(mk_or({eq(w2, 0), eq(w2, 1)}));
  parts.push_back(mk_or({mk_and({eq(w1, 0), lt(p1, p2)}), eq(w2, 1)}));

  LinTerm rx0 = dot(c.r, x0), rx = dot(c.r, x), sx0 = dot(c.s, x0), sx = dot(c.s, x);
  Formula gamma = mk_and({
      mk_or({eq(w1, 1), mk_and({le_int(rx0, p1), le_int(rx, 0)})}),
      mk_or({eq(w2, 1), mk_and({le_int(p2, sx0 + c.t + LinTerm(c.h)), le_int(0, sx)})}),
      mk_or({eq(w2, 0), gt(sx, 0)}),
  });
  parts.push_back(unguarded(q, std::move(gamma)));
}

// ---------------------------------------------------------------- reals

constexpr int kRhoCodes[] = {-2, -1, 0, 1, 2};
constexpr int kSigmaCodes[] = {-1, 0, 1, 2};

template <std::size_t N>
std::vector<int> codes(const int (&u)[N]) {
  return {u, u + N};
}

// t ∈ s for a code variable already restricted to the sorted universe u.
Formula member(const Var& t, const std::vector<int>& s, const std::vector<int>& u) {
  std::vector<Formula> runs;
  std::size_t i = 0;
  while (i < u.size()) {
    if (std::find(s.begin(), s.end(), u[i]) == s.end()) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < u.size() && std::find(s.begin(), s.end(), u[j + 1]) != s.end()) ++j;
    std::vector<Formula> bounds;
    if (i > 0) bounds.push_back(gt(t, LinTerm(u[i] - 1)));
    if (j + 1 < u.size()) bounds.push_back(lt(t, LinTerm(u[j] + 1)));
    runs.push_back(mk_and(std::move(bounds)));
    i = j + 1;
  }
  return mk_or(std::move(runs));
}

std::vector<int> complement(const std::vector<int>& s, const std::vector<int>& u) {
  std::vector<int> out;
  for (int v : u)
    if (std::find(s.begin(), s.end(), v) == s.end()) out.push_back(v);
  return out;
}

// (t ∈ s → f) as (t ∈ u∖s ∨ f).
Formula when(const Var& t, const std::vector<int>& s, const std::vector<int>& u, Formula f) {
  return mk_or({member(t, complement(s, u), u), std::move(f)});
}

Formula in_range(const Var& t, const std::vector<int>& u) {
  std::vector<Formula> cases;
  for (int v : u) cases.push_back(eq(t, v));
  return mk_or(std::move(cases));
}

void real_inequality(const Var& q, const CanonAtom& c, const std::vector<Var>& x, const std::vector<Var>& xc,
                     const std::vector<Var>& xi, FreshNames& names, Existential& out, std::vector<Formula>& parts) {
  const auto U = codes(kRhoCodes);
  const auto V = codes(kSigmaCodes);
  Var rho = names.fresh("rho", Sort::Real), sigma = names.fresh("sigma", Sort::Real);
  Var tr = names.fresh("trho", Sort::Real), ts = names.fresh("tsigma", Sort::Real);
  out.vars.insert(out.vars.end(), {rho, sigma, tr, ts});

  LinTerm bound = LinTerm(sigma) + c.t + LinTerm(c.h);
  parts.push_back(in_range(tr, U));
  parts.push_back(in_range(ts, V));
  parts.push_back(when(tr, {2}, U, eq(ts, 2)));
  Formula strict = lt(rho, bound);
  Formula weak = le_real(rho, bound);
  parts.push_back(mk_or({member(tr, complement({-1, 0}, U), U), member(ts, complement({0, 1}, V), V), strict}));
  parts.push_back(mk_or({member(tr, complement({-1}, U), U), member(ts, complement({-1}, V), V), strict}));
  parts.push_back(mk_or({member(tr, complement({0}, U), U), member(ts, complement({-1}, V), V), weak}));
  parts.push_back(when(tr, {1}, U, weak));

  std::vector<Formula> g;
  auto side = [&](const SparseVec& w, const Var& val, const Var& t, const std::vector<int>& u) {
    LinTerm wx = dot(w, x), wc = dot(w, xc), wi = dot(w, xi);
    g.push_back(when(t, {-1, 1}, u, mk_and({eq(wx, val), eq(wi, 0)})));             // limits
    g.push_back(when(t, {0}, u, mk_and({eq(wx, val), eq(wc, 0), eq(wi, 0)})));       // constants
    g.push_back(when(t, {-1}, u, lt(wc, 0)));                                       // convergence
    g.push_back(when(t, {1}, u, gt(wc, 0)));
    g.push_back(when(t, {-2}, u, lt(wi, 0)));                                       // unboundedness
    g.push_back(when(t, {2}, u, gt(wi, 0)));
  };
  side(c.r, rho, tr, U);
  side(c.s, sigma, ts, V);
  parts.push_back(unguarded(q, mk_and(std::move(g))));
}

void real_equality(const Var& q, const CanonAtom& c, const std::vector<Var>& x, const std::vector<Var>& xc,
                   const std::vector<Var>& xi, std::vector<Formula>& parts) {
  parts.push_back(unguarded(q, mk_and({
                                   eq(dot(c.r, xc), 0),
                                   eq(dot(c.r, xi), 0),
                                   eq(dot(c.s, xc), 0),
                                   eq(dot(c.s, xi), 0),
                                   eq(dot(c.r, x) - dot(c.s, x), c.t + LinTerm(c.h)),
                               })));
}

// ---------------------------------------------------------------- shared plumbing

void require_sorts(const Formula& ramsey, Sort tuple_sort, bool params_too, const char* what) {
  auto check = [&](const Var& v) {
    if (v.sort != tuple_sort) throw std::invalid_argument(std::string(what) + ": variable '" + v.name + "' has sort " +
                                                          sort_name(v.sort));
  };
  auto fv = free_vars(ramsey);
  for (const auto& v : all_vars(ramsey))
    if (params_too || !fv.count(v)) check(v);
  if (contains_floor(ramsey)) throw std::invalid_argument(std::string(what) + ": floor is not allowed");
}

const Formula& expect_ramsey(const Formula& f) {
  if (f.kind() != Formula::Kind::ExistsRamsey) throw std::invalid_argument("expected a Ramsey binder");
  return f;
}

Formula single_domain(const Formula& ramsey, Domain domain, FreshNames& names) {
  Formula lifted = lift_inner_existentials(ramsey, names);
  TuplePartition p{lifted.xs(), lifted.ys(), std::nullopt};
  Formula positive = nnf_positive(lifted.body(), domain);
  SelectorSkeleton skel = build_selector_skeleton(positive, p, domain, names);
  Existential core = domain == Domain::Int ? int_core(skel.table, p.xs.size(), names)
                                           : real_core(skel.table, p.xs.size(), names);
  std::vector<Var> vars = skel.selectors();
  vars.insert(vars.end(), core.vars.begin(), core.vars.end());
  return mk_exists(std::move(vars), mk_and({skel.skeleton, core.body}));
}

std::vector<GuardedAtom> restrict_positions(const std::vector<GuardedAtom>& table, Sort sort,
                                            const std::map<std::size_t, std::size_t>& index) {
  std::vector<GuardedAtom> out;
  for (const auto& g : table) {
    if (g.selector.sort != sort) continue;
    GuardedAtom h = g;
    h.atom.r.clear();
    h.atom.s.clear();
    for (const auto& [i, k] : g.atom.r) h.atom.r.emplace(index.at(i), k);
    for (const auto& [i, k] : g.atom.s) h.atom.s.emplace(index.at(i), k);
    out.push_back(std::move(h));
  }
  return out;
}

Formula diagonal(const std::vector<GuardedAtom>& table, const std::vector<Var>& v) {
  std::vector<Formula> parts;
  for (const auto& g : table) parts.push_back(unguarded(g.selector, mk_atom(assemble(g.atom, v, v))));
  return mk_and(std::move(parts));
}

}  // namespace

Existential int_core(const std::vector<GuardedAtom>& table, std::size_t dim, FreshNames& names) {
  Existential out;
  std::vector<Var> x0 = fresh_vector(dim, "x0", Sort::Int, names);
  std::vector<Var> x = fresh_vector(dim, "dx", Sort::Int, names);
  out.vars = x0;
  out.vars.insert(out.vars.end(), x.begin(), x.end());
  std::vector<Formula> parts{nonzero(x)};
  std::vector<LinTerm> next;
  for (std::size_t i = 0; i < dim; ++i) next.push_back(LinTerm(x0[i]) + LinTerm(x[i]));

  for (const auto& g : table) {
    const CanonAtom& c = g.atom;
    switch (c.kind) {
      case AtomKind::Lt:
        int_inequality(g.selector, c, x0, x, names, out, parts);
        break;
      case AtomKind::Eq:
        int_inequality(g.selector, shifted(c, false, Rational(1)), x0, x, names, out, parts);
        int_inequality(g.selector, shifted(c, true, Rational(1)), x0, x, names, out, parts);
        break;
      case AtomKind::DivCong:
      case AtomKind::NotDivCong:
        parts.push_back(unguarded(g.selector, mk_and({
                                                  mk_atom(assemble(c, as_terms(x0), next)),
                                                  mk_atom(Atom::congruent(dot(c.r, x), c.modulus, 0)),
                                                  mk_atom(Atom::congruent(dot(c.s, x), c.modulus, 0)),
                                              })));
        break;
    }
  }
  out.body = mk_and(std::move(parts));
  return out;
}

Existential real_core(const std::vector<GuardedAtom>& table, std::size_t dim, FreshNames& names) {
  Existential out;
  std::vector<Var> x = fresh_vector(dim, "x", Sort::Real, names);
  std::vector<Var> xc = fresh_vector(dim, "xc", Sort::Real, names);
  std::vector<Var> xi = fresh_vector(dim, "xinf", Sort::Real, names);
  for (const auto* v : {&x, &xc, &xi}) out.vars.insert(out.vars.end(), v->begin(), v->end());
  std::vector<Formula> parts{nonzero(xc)};
  for (const auto& g : table) {
    switch (g.atom.kind) {
      case AtomKind::Lt:
        real_inequality(g.selector, g.atom, x, xc, xi, names, out, parts);
        break;
      case AtomKind::Eq:
        real_equality(g.selector, g.atom, x, xc, xi, parts);
        break;
      default:
        throw std::invalid_argument("modulo constraint over the reals");
    }
  }
  out.body = mk_and(std::move(parts));
  return out;
}

Formula eliminate_ramsey_int(const Formula& ramsey, FreshNames& names) {
  require_sorts(expect_ramsey(ramsey), Sort::Int, true, "integer elimination");
  return single_domain(ramsey, Domain::Int, names);
}

Formula eliminate_ramsey_real(const Formula& ramsey, FreshNames& names) {
  require_sorts(expect_ramsey(ramsey), Sort::Real, false, "real elimination");
  return single_domain(ramsey, Domain::Real, names);
}

Formula eliminate_ramsey_mixed(const Formula& ramsey, FreshNames& names, bool force_split) {
  expect_ramsey(ramsey);
  names.reserve(ramsey);
  Formula lifted = Formula::exists_ramsey(ramsey.xs(), ramsey.ys(), push_negations(ramsey.body()));
  // Lifting substitutes sums into floors of bound variables; localize again until none remain.
  for (;;) {
    Formula body = localize_floors(lifted.body(), names);
    Formula next = lift_inner_existentials(Formula::exists_ramsey(lifted.xs(), lifted.ys(), body), names);
    if (next.identity() == lifted.identity() || next.xs().size() == lifted.xs().size()) {
      lifted = next;
      break;
    }
    lifted = next;
  }
  RamseySplit split = decompose_ramsey(lifted, names, force_split);
  const Formula& r = split.ramsey;

  TuplePartition p{r.xs(), r.ys(), std::nullopt};
  Formula positive = nnf_positive(r.body(), Domain::Mixed);
  SelectorSkeleton skel = build_selector_skeleton(positive, p, Domain::Mixed, names);

  std::map<std::size_t, std::size_t> int_index, real_index;
  for (std::size_t i = 0; i < p.xs.size(); ++i) {
    auto& idx = p.xs[i].sort == Sort::Int ? int_index : real_index;
    idx.emplace(i, idx.size());
  }
  auto int_table = restrict_positions(skel.table, Sort::Int, int_index);
  auto real_table = restrict_positions(skel.table, Sort::Real, real_index);
  Existential icore = int_core(int_table, int_index.size(), names);
  Existential rcore = real_core(real_table, real_index.size(), names);

  Var sw = names.fresh("r", Sort::Int);
  std::vector<Var> xr = fresh_vector(real_index.size(), "xr", Sort::Real, names);
  std::vector<Var> xn = fresh_vector(int_index.size(), "xn", Sort::Int, names);

  Formula out = mk_and({
      skel.skeleton,
      mk_or({eq(sw, 0), eq(sw, 1)}),
      mk_or({rcore.body, mk_and({eq(sw, 0), diagonal(real_table, xr)})}),
      mk_or({icore.body, mk_and({eq(sw, 1), diagonal(int_table, xn)})}),
  });
  std::vector<Var> vars = skel.selectors();
  vars.push_back(sw);
  for (const auto* v : {&rcore.vars, &icore.vars, &xr, &xn}) vars.insert(vars.end(), v->begin(), v->end());
  out = mk_exists(std::move(vars), std::move(out));

  if (split.params.empty()) return out;
  std::map<Var, Term> back;
  for (const auto& [z, s] : split.params) {
    Term fl = Term::floor(Term::variable(z));
    back.emplace(s.integral, fl);
    back.emplace(s.fractional, Term::sum({Term::variable(z), Term::scale(Rational(-1), fl)}));
  }
  return substitute(out, back, names);
}

Domain choose_domain(const Formula& ramsey) {
  expect_ramsey(ramsey);
  if (contains_floor(ramsey)) return Domain::Mixed;
  auto all = all_vars(ramsey);
  auto fv = free_vars(ramsey);
  if (std::all_of(all.begin(), all.end(), [](const Var& v) { return v.sort == Sort::Int; })) return Domain::Int;
  bool bound_real = std::all_of(all.begin(), all.end(), [&](const Var& v) { return fv.count(v) || v.sort == Sort::Real; });
  return bound_real ? Domain::Real : Domain::Mixed;
}

namespace {

Formula replace_ramsey(const Formula& f, FreshNames& names, const EliminationOptions& opts, bool& done) {
  switch (f.kind()) {
    case Formula::Kind::ExistsRamsey: {
      if (done) throw std::invalid_argument("more than one ramsey binder");
      done = true;
      Domain d = opts.domain.value_or(choose_domain(f));
      if (opts.force_split) d = Domain::Mixed;
      switch (d) {
        case Domain::Int: return eliminate_ramsey_int(f, names);
        case Domain::Real: return eliminate_ramsey_real(f, names);
        case Domain::Mixed: return eliminate_ramsey_mixed(f, names, opts.force_split);
      }
      return f;
    }
    case Formula::Kind::Not:
      return mk_not(replace_ramsey(f.body(), names, opts, done));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> kids;
      for (const auto& k : f.children()) kids.push_back(replace_ramsey(k, names, opts, done));
      return f.kind() == Formula::Kind::And ? mk_and(std::move(kids)) : mk_or(std::move(kids));
    }
    case Formula::Kind::Exists:
      return mk_exists(f.bound(), replace_ramsey(f.body(), names, opts, done));
    default:
      return f;
  }
}

}  // namespace

Formula eliminate(const Formula& f, FreshNames& names, const EliminationOptions& opts) {
  if (!contains_ramsey(f)) return f;
  names.reserve(f);
  bool done = false;
  return prune_unused_binders(replace_ramsey(f, names, opts, done));
}

Formula eliminate(const Formula& f, const EliminationOptions& opts) {
  FreshNames names(f);
  return eliminate(f, names, opts);
}

}  // namespace ramsey
