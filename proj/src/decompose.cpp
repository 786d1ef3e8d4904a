#include "ramsey/decompose.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

namespace ramsey {

namespace {

Relation negate_relation(Relation r) {
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

Formula push(const Formula& f, bool pos) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return Formula::constant(f.is_true() == pos);
    case Formula::Kind::Atom: {
      if (pos) return f;
      const Atom& a = f.atom();
      if (a.is_congruence())
        return mk_atom(Atom::congruent(a.lhs(), a.modulus(), a.residue(), a.kind() == AtomKind::DivCong));
      Relation rel = a.kind() == AtomKind::Lt ? Relation::Ge : Relation::Ne;
      return Formula::term_atom(rel, Term::from_lin(a.lhs()), Term::constant(0));
    }
    case Formula::Kind::TermAtom:
      if (pos) return f;
      return Formula::term_atom(negate_relation(f.relation()), f.lhs(), f.rhs());
    case Formula::Kind::Not:
      return push(f.body(), !pos);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& k : f.children()) kids.push_back(push(k, pos));
      bool conj = (f.kind() == Formula::Kind::And) == pos;
      return conj ? mk_and(std::move(kids)) : mk_or(std::move(kids));
    }
    case Formula::Kind::Exists:
      if (!pos) throw std::invalid_argument("existential quantifier under negation");
      return mk_exists(f.bound(), push(f.body(), true));
    case Formula::Kind::ExistsRamsey:
      if (!pos) throw std::invalid_argument("ramsey binder under negation");
      return Formula::exists_ramsey(f.xs(), f.ys(), push(f.body(), true));
  }
  return f;
}

// Linear form of t where ⌊v⌋ of a single variable is mapped through on_floor.
LinTerm linearize(const Term& t, const std::function<LinTerm(const Var&)>& on_floor) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return LinTerm(t.var());
    case Term::Kind::Constant:
      return LinTerm(t.value());
    case Term::Kind::Sum: {
      LinTerm out;
      for (const auto& k : t.children()) out += linearize(k, on_floor);
      return out;
    }
    case Term::Kind::Scale:
      return linearize(t.children()[0], on_floor) * t.value();
    case Term::Kind::Floor: {
      if (auto l = t.linear()) return *l;
      const Term& arg = t.children()[0];
      if (arg.kind() == Term::Kind::Variable) return on_floor(arg.var());
      throw std::invalid_argument("floor of a compound term reached separation");
    }
  }
  return {};
}

// d REL 0 as a disjunction of (kind, lhs) pairs with kind Lt or Eq.
std::vector<std::pair<AtomKind, LinTerm>> lt_eq_cases(Relation rel, const LinTerm& d) {
  switch (rel) {
    case Relation::Lt: return {{AtomKind::Lt, d}};
    case Relation::Gt: return {{AtomKind::Lt, -d}};
    case Relation::Le: return {{AtomKind::Lt, d}, {AtomKind::Eq, d}};
    case Relation::Ge: return {{AtomKind::Lt, -d}, {AtomKind::Eq, d}};
    case Relation::Eq: return {{AtomKind::Eq, d}};
    case Relation::Ne: return {{AtomKind::Lt, d}, {AtomKind::Lt, -d}};
  }
  return {};
}

Formula make_atom(AtomKind kind, const LinTerm& l) {
  return mk_atom(kind == AtomKind::Lt ? Atom::lt(l) : Atom::eq(l));
}

// ---------------------------------------------------------------- flattening

class Flattener {
 public:
  explicit Flattener(FreshNames& names) : names_(names) {}

  FlattenResult result(Formula body) {
    return FlattenResult{std::move(body), mk_and(std::move(constraints_)), std::move(fresh_), std::move(defs_)};
  }

  Formula run(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::True:
      case Formula::Kind::False:
        return f;
      case Formula::Kind::Atom: {
        const Atom& a = f.atom();
        if (a.is_congruence()) return f;
        Var e = term(Term::from_lin(a.lhs()));
        return mk_atom(a.kind() == AtomKind::Lt ? Atom::lt(LinTerm(e)) : Atom::eq(LinTerm(e)));
      }
      case Formula::Kind::TermAtom: {
        Var e = term(Term::sum({f.lhs(), Term::scale(Rational(-1), f.rhs())}));
        auto neg = [&] { return LinTerm(negate(e)); };
        LinTerm el(e);
        switch (f.relation()) {
          case Relation::Lt: return mk_atom(Atom::lt(el));
          case Relation::Gt: return mk_atom(Atom::lt(neg()));
          case Relation::Eq: return mk_atom(Atom::eq(el));
          case Relation::Le: return mk_or({mk_atom(Atom::lt(el)), mk_atom(Atom::eq(el))});
          case Relation::Ge: return mk_or({mk_atom(Atom::lt(neg())), mk_atom(Atom::eq(el))});
          case Relation::Ne: return mk_or({mk_atom(Atom::lt(el)), mk_atom(Atom::lt(neg()))});
        }
        return f;
      }
      case Formula::Kind::Not:
        return mk_not(run(f.body()));
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        std::vector<Formula> kids;
        for (const auto& k : f.children()) kids.push_back(run(k));
        return f.kind() == Formula::Kind::And ? mk_and(std::move(kids)) : mk_or(std::move(kids));
      }
      default:
        throw std::invalid_argument("flattening expects a quantifier-free formula");
    }
  }

 private:
  FreshNames& names_;
  std::vector<Var> fresh_;
  std::vector<std::pair<Var, Term>> defs_;
  std::vector<Formula> constraints_;
  std::optional<Var> zero_, one_;
  std::map<std::pair<Var, BigInt>, Var, std::function<bool(const std::pair<Var, BigInt>&, const std::pair<Var, BigInt>&)>>
      mult_cache_{[](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return cmp(a.second, b.second) < 0;
      }};
  std::map<Var, Var> neg_cache_;

  Var define(std::string_view hint, Term def) {
    Var v = names_.fresh(hint, Sort::Real);
    fresh_.push_back(v);
    defs_.emplace_back(v, std::move(def));
    return v;
  }

  void sum_constraint(const Var& a, const Var& b, const Var& c) {
    constraints_.push_back(mk_atom(Atom::eq(LinTerm(a) + LinTerm(b) - LinTerm(c))));
  }

  Var zero() {
    if (!zero_) {
      zero_ = define("zero", Term::constant(0));
      constraints_.push_back(mk_atom(Atom::eq(LinTerm(*zero_))));
    }
    return *zero_;
  }

  Var one() {
    if (!one_) {
      one_ = define("one", Term::constant(1));
      constraints_.push_back(mk_atom(Atom::eq(LinTerm(*one_) - LinTerm(1))));
    }
    return *one_;
  }

  Var add(const Var& a, const Var& b) {
    Var c = define("sum", Term::sum({Term::variable(a), Term::variable(b)}));
    sum_constraint(a, b, c);
    return c;
  }

  Var negate(const Var& a) {
    if (auto it = neg_cache_.find(a); it != neg_cache_.end()) return it->second;
    Var z = zero();
    Var n = define("neg", Term::scale(Rational(-1), Term::variable(a)));
    sum_constraint(a, n, z);
    neg_cache_.emplace(a, n);
    return n;
  }

  Var mult(const Var& a, const BigInt& n) {
    if (n == 0) return zero();
    if (n < 0) return negate(mult(a, BigInt(-n)));
    if (n == 1) return a;
    auto key = std::make_pair(a, n);
    if (auto it = mult_cache_.find(key); it != mult_cache_.end()) return it->second;
    std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    Var acc = a;
    for (std::size_t i = bits - 1; i-- > 0;) {
      acc = add(acc, acc);
      if (mpz_tstbit(n.get_mpz_t(), i)) acc = add(acc, a);
    }
    mult_cache_.emplace(key, acc);
    return acc;
  }

  Var divide(const Var& a, const BigInt& q) {
    Var h = define("div", Term::scale(Rational(BigInt(1), q), Term::variable(a)));
    Var m = mult(h, q);
    sum_constraint(m, zero(), a);
    return h;
  }

  Var scaled(const Var& a, const Rational& c) {
    Var b = mult(a, c.numerator());
    if (c.denominator() != 1) b = divide(b, c.denominator());
    return b;
  }

  Var term(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Variable:
        return t.var();
      case Term::Kind::Constant:
        if (t.value().is_zero()) return zero();
        return scaled(one(), t.value());
      case Term::Kind::Sum: {
        const auto& ks = t.children();
        if (ks.empty()) return zero();
        Var acc = term(ks[0]);
        for (std::size_t i = 1; i < ks.size(); ++i) acc = add(acc, term(ks[i]));
        return acc;
      }
      case Term::Kind::Scale:
        return scaled(term(t.children()[0]), t.value());
      case Term::Kind::Floor: {
        Var a = term(t.children()[0]);
        Var f = define("floor", Term::floor(Term::variable(a)));
        constraints_.push_back(Formula::term_atom(Relation::Eq, Term::variable(f), Term::floor(Term::variable(a))));
        return f;
      }
    }
    return zero();
  }
};

bool unit_var(const LinTerm& l, const Rational& c) {
  return l.coeffs().size() == 1 && l.coeffs().begin()->second == Rational(1) && l.constant() == c;
}

bool primitive_atom(const Formula& f) {
  if (f.kind() == Formula::Kind::TermAtom) {
    return f.relation() == Relation::Eq && f.lhs().kind() == Term::Kind::Variable &&
           f.rhs().kind() == Term::Kind::Floor && f.rhs().children()[0].kind() == Term::Kind::Variable;
  }
  const Atom& a = f.atom();
  if (a.is_congruence()) return true;
  const LinTerm& l = a.lhs();
  if (a.kind() == AtomKind::Lt) return unit_var(l, Rational(0));
  if (unit_var(l, Rational(0)) || unit_var(l, Rational(-1))) return true;
  if (!l.constant().is_zero()) return false;
  std::vector<Rational> cs;
  for (const auto& [v, c] : l.coeffs()) cs.push_back(c);
  std::sort(cs.begin(), cs.end());
  if (cs == std::vector<Rational>{Rational(-1), Rational(1), Rational(1)}) return true;
  if (cs == std::vector<Rational>{Rational(-1), Rational(2)}) return true;
  if (cs == std::vector<Rational>{Rational(-2), Rational(1)}) return true;  // x + x = z with z = x impossible
  return false;
}

bool all_atoms(const Formula& f, const std::function<bool(const Formula&)>& pred) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::TermAtom:
      return pred(f);
    case Formula::Kind::True:
    case Formula::Kind::False:
      return true;
    default:
      for (const auto& k : f.children())
        if (!all_atoms(k, pred)) return false;
      if (f.kind() == Formula::Kind::Not || f.kind() == Formula::Kind::Exists ||
          f.kind() == Formula::Kind::ExistsRamsey)
        return all_atoms(f.body(), pred);
      return true;
  }
}

// ---------------------------------------------------------------- separation

Formula fractional_range(const Var& r) { return mk_and({le_real(LinTerm(0), LinTerm(r)), lt(LinTerm(r), LinTerm(1))}); }

class Separator {
 public:
  Separator(FreshNames& names, std::map<Var, SplitVar>& parts) : names_(names), parts_(parts) {}

  LinTerm ip(const Var& v) { return v.sort == Sort::Int ? LinTerm(v) : LinTerm(part(v).integral); }
  LinTerm rp(const Var& v) { return v.sort == Sort::Int ? LinTerm(0) : LinTerm(part(v).fractional); }

  Formula run(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::True:
      case Formula::Kind::False:
        return f;
      case Formula::Kind::Not:
        return mk_not(run(f.body()));
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        std::vector<Formula> kids;
        for (const auto& k : f.children()) kids.push_back(run(k));
        return f.kind() == Formula::Kind::And ? mk_and(std::move(kids)) : mk_or(std::move(kids));
      }
      case Formula::Kind::TermAtom: {
        if (!primitive_atom(f)) throw std::invalid_argument("separation expects primitive atoms");
        const Var& x = f.lhs().var();
        const Var& y = f.rhs().children()[0].var();
        return mk_and({eq(rp(x), 0), eq(ip(x), ip(y))});
      }
      case Formula::Kind::Atom:
        return atom(f);
      default:
        throw std::invalid_argument("separation expects a quantifier-free formula");
    }
  }

 private:
  FreshNames& names_;
  std::map<Var, SplitVar>& parts_;

  const SplitVar& part(const Var& v) {
    auto it = parts_.find(v);
    if (it == parts_.end())
      it = parts_.emplace(v, SplitVar{names_.fresh(v.name + "_int", Sort::Int), names_.fresh(v.name + "_real", Sort::Real)})
               .first;
    return it->second;
  }

  Formula atom(const Formula& f) {
    const Atom& a = f.atom();
    if (a.is_congruence()) return f;
    if (!primitive_atom(f)) throw std::invalid_argument("separation expects primitive atoms");
    const LinTerm& l = a.lhs();
    if (a.kind() == AtomKind::Lt) {
      const Var& x = l.coeffs().begin()->first;
      return lt(ip(x), 0);
    }
    if (l.coeffs().size() == 1) {
      const Var& x = l.coeffs().begin()->first;
      Rational k = -l.constant();  // 0 or 1
      return mk_and({eq(ip(x), LinTerm(k)), eq(rp(x), 0)});
    }
    // x + y = z, possibly with x = y.
    std::vector<Var> summands;
    Var z;
    for (const auto& [v, c] : l.coeffs()) {
      if (c.sign() < 0) {
        if (c != Rational(-1)) throw std::invalid_argument("separation expects primitive atoms");
        z = v;
      } else {
        for (long i = 0; i < c.numerator().get_si(); ++i) summands.push_back(v);
      }
    }
    const Var& x = summands.at(0);
    const Var& y = summands.at(1);
    LinTerm fr = rp(x) + rp(y);
    LinTerm in = ip(x) + ip(y);
    Formula low = lt(fr, 1);
    Formula high = le_real(LinTerm(1), fr);
    Formula no_carry = mk_and({eq(in, ip(z)), eq(fr, rp(z))});
    Formula carry = mk_and({eq(in + LinTerm(1), ip(z)), eq(fr - LinTerm(1), rp(z))});
    return mk_and({mk_or({high, no_carry}), mk_or({low, carry})});
  }
};

// ---------------------------------------------------------------- floor localization

class FloorLocalizer {
 public:
  FloorLocalizer(FreshNames& names, std::size_t limit) : names_(names), limit_(limit) {}

  Formula run(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::True:
      case Formula::Kind::False:
        return f;
      case Formula::Kind::Not:
        throw std::invalid_argument("floor localization expects a negation-free formula");
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        std::vector<Formula> kids;
        for (const auto& k : f.children()) kids.push_back(run(k));
        return f.kind() == Formula::Kind::And ? mk_and(std::move(kids)) : mk_or(std::move(kids));
      }
      case Formula::Kind::Exists:
        return mk_exists(f.bound(), run(f.body()));
      case Formula::Kind::ExistsRamsey:
        return Formula::exists_ramsey(f.xs(), f.ys(), run(f.body()));
      case Formula::Kind::Atom:
        return limit(f);
      case Formula::Kind::TermAtom: {
        if (!f.lhs().has_floor() && !f.rhs().has_floor()) return limit(f);
        std::vector<Var> fresh;
        std::vector<Formula> parts;
        Term l = term(f.lhs(), fresh, parts);
        Term r = term(f.rhs(), fresh, parts);
        parts.push_back(Formula::term_atom(f.relation(), l, r));
        for (auto& p : parts) p = limit(p);
        return mk_exists(std::move(fresh), mk_and(std::move(parts)));
      }
    }
    return f;
  }

 private:
  FreshNames& names_;
  std::size_t limit_;

  Term term(const Term& t, std::vector<Var>& fresh, std::vector<Formula>& defs) {
    switch (t.kind()) {
      case Term::Kind::Variable:
      case Term::Kind::Constant:
        return t;
      case Term::Kind::Sum: {
        std::vector<Term> ks;
        for (const auto& k : t.children()) ks.push_back(term(k, fresh, defs));
        return Term::sum(std::move(ks));
      }
      case Term::Kind::Scale:
        return Term::scale(t.value(), term(t.children()[0], fresh, defs));
      case Term::Kind::Floor:
        break;
    }
    Term arg = term(t.children()[0], fresh, defs);
    if (auto lin = arg.linear()) {
      // ⌊I + R⌋ = I + ⌊R⌋ for the integral part I.
      LinTerm integral(lin->constant().floor()), rest(lin->constant() - lin->constant().floor());
      for (const auto& [v, c] : lin->coeffs()) {
        if (v.sort == Sort::Int && c.is_integer())
          integral.add(v, c);
        else
          rest.add(v, c);
      }
      if (rest.is_constant()) return Term::from_lin(integral);
      if (rest.constant().is_zero() && rest.coeffs().size() == 1 && rest.coeffs().begin()->second == Rational(1))
        return Term::sum({Term::from_lin(integral), Term::floor(Term::variable(rest.coeffs().begin()->first))});
    }
    Var f = names_.fresh("floor", Sort::Int);
    fresh.push_back(f);
    Term fv = Term::variable(f);
    defs.push_back(Formula::term_atom(Relation::Le, fv, arg));
    defs.push_back(Formula::term_atom(Relation::Lt, arg, Term::sum({fv, Term::constant(1)})));
    return fv;
  }

  // Flattens atoms whose fractional coefficients would need too many carry cases.
  Formula limit(const Formula& f) {
    LinTerm d;
    bool has_floor = false;
    auto on_floor = [&](const Var& v) {
      has_floor = true;
      return LinTerm(Var{v.name, Sort::Int});
    };
    if (f.kind() == Formula::Kind::Atom) {
      if (f.atom().is_congruence()) return f;
      d = f.atom().lhs();
    } else {
      d = linearize(f.lhs(), on_floor) - linearize(f.rhs(), on_floor);
    }
    bool ints = has_floor, reals = false;
    for (const auto& [v, c] : d.coeffs()) (v.sort == Sort::Int ? ints : reals) = true;
    if (!ints || !reals) return f;
    d *= Rational(d.denominator_lcm());
    BigInt total = 0;
    for (const auto& [v, c] : d.coeffs())
      if (v.sort == Sort::Real) total += abs(c.numerator());
    if (total <= limit_) return f;
    return flatten_atoms(f, names_).formula();
  }
};

// ---------------------------------------------------------------- ramsey split

struct UnionFind {
  std::vector<std::size_t> parent;
  std::size_t add() {
    parent.push_back(parent.size());
    return parent.size() - 1;
  }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

struct AtomInfo {
  std::vector<Var> plain;   // variables outside floors
  std::vector<Var> floors;  // variables under ⌊·⌋
};

AtomInfo inspect(const Formula& f) {
  AtomInfo info;
  if (f.kind() == Formula::Kind::Atom) {
    for (const auto& [v, c] : f.atom().lhs().coeffs()) info.plain.push_back(v);
    return info;
  }
  auto on_floor = [&](const Var& v) {
    info.floors.push_back(v);
    return LinTerm(0);
  };
  LinTerm d = linearize(f.lhs(), on_floor) - linearize(f.rhs(), on_floor);
  for (const auto& [v, c] : d.coeffs()) info.plain.push_back(v);
  return info;
}

void collect_atoms(const Formula& f, std::vector<Formula>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::TermAtom:
      out.push_back(f);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      for (const auto& k : f.children()) collect_atoms(k, out);
      return;
    case Formula::Kind::True:
    case Formula::Kind::False:
      return;
    default:
      throw std::invalid_argument("expected a quantifier-free, negation-free Ramsey body");
  }
}

class RamseySplitter {
 public:
  RamseySplitter(FreshNames& names, const std::set<Var>& split) : names_(names), split_(split) {
    for (const auto& v : split_)
      parts_.emplace(v, SplitVar{names_.fresh(v.name + "_int", Sort::Int), names_.fresh(v.name + "_real", Sort::Real)});
  }

  const std::map<Var, SplitVar>& parts() const { return parts_; }

  Formula run(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        std::vector<Formula> kids;
        for (const auto& k : f.children()) kids.push_back(run(k));
        return f.kind() == Formula::Kind::And ? mk_and(std::move(kids)) : mk_or(std::move(kids));
      }
      case Formula::Kind::Atom:
      case Formula::Kind::TermAtom:
        return atom(f);
      default:
        return f;
    }
  }

 private:
  FreshNames& names_;
  const std::set<Var>& split_;
  std::map<Var, SplitVar> parts_;

  LinTerm substituted(const LinTerm& l) {
    LinTerm out(l.constant());
    for (const auto& [v, c] : l.coeffs()) {
      auto it = parts_.find(v);
      if (it == parts_.end()) {
        out.add(v, c);
      } else {
        out.add(it->second.integral, c);
        out.add(it->second.fractional, c);
      }
    }
    return out;
  }

  bool touches_split(const Formula& f) const {
    AtomInfo info = inspect(f);
    for (const auto* vs : {&info.plain, &info.floors})
      for (const auto& v : *vs)
        if (split_.count(v)) return true;
    return false;
  }

  Formula atom(const Formula& f) {
    if (!touches_split(f)) return f;
    if (f.kind() == Formula::Kind::Atom) {
      const Atom& a = f.atom();
      return carry(a.kind(), substituted(a.lhs()));
    }
    auto on_floor = [&](const Var& v) -> LinTerm {
      auto it = parts_.find(v);
      if (it == parts_.end()) throw std::logic_error("floor of an unsplit variable");
      return LinTerm(it->second.integral);
    };
    LinTerm d = linearize(f.lhs(), on_floor) - linearize(f.rhs(), on_floor);
    // linearize keeps split variables whole outside floors; substitute them now.
    d = substituted(d);
    std::vector<Formula> cases;
    for (const auto& [kind, l] : lt_eq_cases(f.relation(), d)) cases.push_back(carry(kind, l));
    return mk_or(std::move(cases));
  }

  // I + f ⋈ 0 with I integral and f a combination of fractional parts with integer weights.
  Formula carry(AtomKind kind, LinTerm l) {
    l *= Rational(l.denominator_lcm());
    LinTerm integral(l.constant()), frac;
    BigInt lo = 0, hi = 0;
    for (const auto& [v, c] : l.coeffs()) {
      if (v.sort == Sort::Int) {
        integral.add(v, c);
      } else {
        frac.add(v, c);
        (c.sign() < 0 ? lo : hi) += c.numerator();
      }
    }
    if (frac.is_constant() || integral.is_constant()) return make_atom(kind, l);
    std::vector<Formula> cases;
    if (kind == AtomKind::Lt) {
      cases.push_back(mk_atom(Atom::lt(integral + LinTerm(Rational(hi)))));
      for (BigInt c = -hi; c <= -lo - 1; ++c) {
        Rational rc(c);
        cases.push_back(mk_and({mk_atom(Atom::eq(integral - LinTerm(rc))), mk_atom(Atom::lt(frac + LinTerm(rc)))}));
      }
    } else {
      BigInt first = hi > 0 ? BigInt(-hi + 1) : BigInt(-hi);
      BigInt last = lo < 0 ? BigInt(-lo - 1) : BigInt(-lo);
      for (BigInt c = first; c <= last; ++c) {
        Rational rc(c);
        cases.push_back(mk_and({mk_atom(Atom::eq(integral - LinTerm(rc))), mk_atom(Atom::eq(frac + LinTerm(rc)))}));
      }
    }
    return mk_or(std::move(cases));
  }
};

}  // namespace

Formula push_negations(const Formula& f) { return push(f, true); }

Formula FlattenResult::formula() const { return mk_exists(fresh, mk_and({body, constraints})); }

Assignment FlattenResult::extend(const Assignment& a) const {
  Assignment out = a;
  for (const auto& [v, t] : definitions) out[v] = t.evaluate(out);
  return out;
}

FlattenResult flatten_atoms(const Formula& f, FreshNames& names) {
  names.reserve(f);
  Flattener fl(names);
  Formula body = fl.run(f);
  return fl.result(std::move(body));
}

bool is_primitive(const Formula& f) { return all_atoms(f, primitive_atom); }

Separation separate(const Formula& primitive, FreshNames& names) {
  names.reserve(primitive);
  Separation out;
  Separator sep(names, out.parts);
  for (const auto& v : free_vars(primitive))
    if (v.sort == Sort::Real) sep.ip(v);
  Formula body = sep.run(primitive);
  std::vector<Formula> parts;
  for (const auto& [v, s] : out.parts) parts.push_back(fractional_range(s.fractional));
  parts.push_back(body);
  out.formula = mk_and(std::move(parts));
  return out;
}

Assignment split_assignment(const Assignment& a, const std::map<Var, SplitVar>& parts) {
  Assignment out = a;
  for (const auto& [v, s] : parts) {
    auto it = a.find(v);
    if (it == a.end()) continue;
    Rational fl(it->second.floor());
    out[s.integral] = fl;
    out[s.fractional] = it->second - fl;
  }
  return out;
}

bool is_separated(const Formula& f) {
  return all_atoms(f, [](const Formula& a) {
    std::vector<Var> vs;
    if (a.kind() == Formula::Kind::TermAtom) {
      if (a.lhs().has_floor() || a.rhs().has_floor()) return false;
      a.lhs().collect_vars(vs);
      a.rhs().collect_vars(vs);
    } else {
      for (const auto& [v, c] : a.atom().lhs().coeffs()) vs.push_back(v);
    }
    bool ints = false, reals = false;
    for (const auto& v : vs) (v.sort == Sort::Int ? ints : reals) = true;
    return !(ints && reals);
  });
}

Formula localize_floors(const Formula& positive, FreshNames& names, std::size_t carry_limit) {
  names.reserve(positive);
  return FloorLocalizer(names, carry_limit).run(positive);
}

RamseySplit decompose_ramsey(const Formula& ramsey, FreshNames& names, bool force_split) {
  if (ramsey.kind() != Formula::Kind::ExistsRamsey) throw std::invalid_argument("expected a Ramsey binder");
  names.reserve(ramsey);
  Formula body = push_negations(ramsey.body());
  const auto& xs = ramsey.xs();
  const auto& ys = ramsey.ys();

  std::vector<Formula> atoms;
  collect_atoms(body, atoms);

  UnionFind uf;
  std::map<Var, std::size_t> index;
  auto id = [&](const Var& v) {
    auto it = index.find(v);
    if (it == index.end()) it = index.emplace(v, uf.add()).first;
    return it->second;
  };
  std::set<Var> seeds;
  for (const auto& a : atoms) {
    AtomInfo info = inspect(a);
    bool ints = !info.floors.empty();
    std::vector<Var> reals;
    for (const auto& v : info.plain) {
      if (v.sort == Sort::Int)
        ints = true;
      else
        reals.push_back(v);
    }
    for (const auto& v : info.floors) {
      if (v.sort != Sort::Real) throw std::logic_error("floor of an Int variable");
      seeds.insert(v);
      reals.push_back(v);
    }
    if (ints)
      for (const auto& v : reals) seeds.insert(v);
    for (std::size_t i = 1; i < reals.size(); ++i) uf.unite(id(reals[0]), id(reals[i]));
    if (!reals.empty()) id(reals[0]);
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (xs[i].sort == Sort::Real) uf.unite(id(xs[i]), id(ys[i]));
  if (force_split) {
    for (const auto& v : free_vars(body))
      if (v.sort == Sort::Real) seeds.insert(v);
    for (const auto* vs : {&xs, &ys})
      for (const auto& v : *vs)
        if (v.sort == Sort::Real) seeds.insert(v);
  }
  std::set<std::size_t> roots;
  for (const auto& v : seeds) roots.insert(uf.find(id(v)));
  std::set<Var> split;
  for (const auto& [v, i] : index)
    if (roots.count(uf.find(i))) split.insert(v);

  RamseySplitter splitter(names, split);
  std::vector<Formula> conj;
  for (const auto& [v, s] : splitter.parts()) conj.push_back(fractional_range(s.fractional));
  conj.push_back(splitter.run(body));

  RamseySplit out;
  std::vector<Var> nx, ny;
  std::set<Var> tuple_vars(xs.begin(), xs.end());
  tuple_vars.insert(ys.begin(), ys.end());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto ix = splitter.parts().find(xs[i]);
    auto iy = splitter.parts().find(ys[i]);
    if (ix == splitter.parts().end()) {
      nx.push_back(xs[i]);
      ny.push_back(ys[i]);
      continue;
    }
    nx.push_back(ix->second.integral);
    nx.push_back(ix->second.fractional);
    ny.push_back(iy->second.integral);
    ny.push_back(iy->second.fractional);
  }
  for (const auto& [v, s] : splitter.parts()) (tuple_vars.count(v) ? out.tuple : out.params).emplace(v, s);
  out.ramsey = Formula::exists_ramsey(std::move(nx), std::move(ny), mk_and(std::move(conj)));
  return out;
}

}  // namespace ramsey
