#include "ramsey/ops.hpp"

#include <charconv>
#include <stdexcept>

namespace ramsey {

namespace {

void collect_free(const Formula& f, std::set<Var>& bound_now, std::map<Var, int>& bound_count,
                  std::set<Var>& out) {
  auto visit_var = [&](const Var& v) {
    auto it = bound_count.find(v);
    if (it == bound_count.end() || it->second == 0) out.insert(v);
  };
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return;
    case Formula::Kind::Atom:
      for (const auto& [v, c] : f.atom().lhs().coeffs()) visit_var(v);
      return;
    case Formula::Kind::TermAtom: {
      std::vector<Var> vs;
      f.lhs().collect_vars(vs);
      f.rhs().collect_vars(vs);
      for (const auto& v : vs) visit_var(v);
      return;
    }
    case Formula::Kind::Not:
    case Formula::Kind::And:
    case Formula::Kind::Or:
      for (const auto& k : f.children()) collect_free(k, bound_now, bound_count, out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::ExistsRamsey: {
      std::vector<Var> binders = f.bound();
      if (f.kind() == Formula::Kind::ExistsRamsey)
        binders.insert(binders.end(), f.ys().begin(), f.ys().end());
      for (const auto& v : binders) ++bound_count[v];
      collect_free(f.body(), bound_now, bound_count, out);
      for (const auto& v : binders) --bound_count[v];
      return;
    }
  }
}

void collect_all(const Formula& f, std::set<Var>& out) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return;
    case Formula::Kind::Atom:
      for (const auto& [v, c] : f.atom().lhs().coeffs()) out.insert(v);
      return;
    case Formula::Kind::TermAtom: {
      std::vector<Var> vs;
      f.lhs().collect_vars(vs);
      f.rhs().collect_vars(vs);
      out.insert(vs.begin(), vs.end());
      return;
    }
    case Formula::Kind::Exists:
      out.insert(f.bound().begin(), f.bound().end());
      break;
    case Formula::Kind::ExistsRamsey:
      out.insert(f.xs().begin(), f.xs().end());
      out.insert(f.ys().begin(), f.ys().end());
      break;
    default:
      break;
  }
  for (const auto& k : f.children()) collect_all(k, out);
}

}  // namespace

std::set<Var> free_vars(const Formula& f) {
  std::set<Var> out, bound_now;
  std::map<Var, int> counts;
  collect_free(f, bound_now, counts, out);
  return out;
}

std::set<Var> all_vars(const Formula& f) {
  std::set<Var> out;
  collect_all(f, out);
  return out;
}

// ---------------------------------------------------------------- fresh names

bool is_reserved_name(std::string_view name) { return name.substr(0, FreshNames::prefix.size()) == FreshNames::prefix; }

Var FreshNames::fresh(std::string_view hint, Sort sort) {
  if (is_reserved_name(hint)) {
    hint.remove_prefix(prefix.size());
    hint = hint.substr(0, hint.find('!'));
  }
  std::string name(prefix);
  name += hint;
  name += '!';
  name += std::to_string(next_++);
  return Var{std::move(name), sort};
}

void FreshNames::reserve(const std::string& name) {
  if (!is_reserved_name(name)) return;
  auto bang = name.rfind('!');
  if (bang == std::string::npos || bang + 1 >= name.size()) return;
  std::size_t n = 0;
  const char* first = name.data() + bang + 1;
  const char* last = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(first, last, n);
  if (ec == std::errc() && ptr == last && n >= next_) next_ = n + 1;
}

void FreshNames::reserve(const Formula& f) {
  for (const auto& v : all_vars(f)) reserve(v.name);
}

// ---------------------------------------------------------------- substitution

Term substitute(const Term& t, const std::map<Var, Term>& m) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      auto it = m.find(t.var());
      return it == m.end() ? t : it->second;
    }
    case Term::Kind::Constant:
      return t;
    case Term::Kind::Sum: {
      std::vector<Term> parts;
      for (const auto& k : t.children()) parts.push_back(substitute(k, m));
      return Term::sum(std::move(parts));
    }
    case Term::Kind::Scale:
      return Term::scale(t.value(), substitute(t.children()[0], m));
    case Term::Kind::Floor:
      return Term::floor(substitute(t.children()[0], m));
  }
  return t;
}

namespace {

struct Substituter {
  FreshNames& names;

  Formula atom(const Formula& f, const std::map<Var, Term>& m) {
    const Atom& a = f.atom();
    bool touched = false;
    for (const auto& [v, c] : a.lhs().coeffs())
      if (m.count(v)) touched = true;
    if (!touched) return f;
    std::map<Var, LinTerm> lin;
    bool linear = true;
    for (const auto& [v, c] : a.lhs().coeffs()) {
      auto it = m.find(v);
      if (it == m.end()) continue;
      auto l = it->second.linear();
      if (!l) {
        linear = false;
        break;
      }
      lin.emplace(v, *l);
    }
    if (linear) return mk_atom(a.with_lhs(a.lhs().substitute(lin)));
    if (a.is_congruence()) throw std::invalid_argument("floor term substituted into a congruence");
    Term lhs = substitute(Term::from_lin(a.lhs()), m);
    Relation rel = a.kind() == AtomKind::Lt ? Relation::Lt : Relation::Eq;
    return Formula::term_atom(rel, lhs, Term::constant(Rational(0)));
  }

  Formula binder(const Formula& f, const std::map<Var, Term>& m) {
    std::vector<Var> xs = f.bound();
    std::vector<Var> ys = f.kind() == Formula::Kind::ExistsRamsey ? f.ys() : std::vector<Var>{};
    std::map<Var, Term> inner = m;
    for (const auto& v : xs) inner.erase(v);
    for (const auto& v : ys) inner.erase(v);
    if (inner.empty()) return f;
    std::set<std::string> range_names;
    for (const auto& [v, t] : inner) {
      std::vector<Var> vs;
      t.collect_vars(vs);
      for (const auto& w : vs) range_names.insert(w.name);
    }
    auto rename = [&](std::vector<Var>& vec) {
      for (auto& v : vec) {
        if (!range_names.count(v.name)) continue;
        Var nv = names.fresh(v.name, v.sort);
        inner.insert_or_assign(v, Term::variable(nv));
        v = nv;
      }
    };
    rename(xs);
    rename(ys);
    Formula body = run(f.body(), inner);
    if (f.kind() == Formula::Kind::Exists) return Formula::exists(std::move(xs), std::move(body));
    return Formula::exists_ramsey(std::move(xs), std::move(ys), std::move(body));
  }

  Formula run(const Formula& f, const std::map<Var, Term>& m) {
    switch (f.kind()) {
      case Formula::Kind::True:
      case Formula::Kind::False:
        return f;
      case Formula::Kind::Atom:
        return atom(f, m);
      case Formula::Kind::TermAtom:
        return Formula::term_atom(f.relation(), substitute(f.lhs(), m), substitute(f.rhs(), m));
      case Formula::Kind::Not:
        return mk_not(run(f.body(), m));
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        std::vector<Formula> kids;
        kids.reserve(f.children().size());
        for (const auto& k : f.children()) kids.push_back(run(k, m));
        return f.kind() == Formula::Kind::And ? mk_and(std::move(kids)) : mk_or(std::move(kids));
      }
      case Formula::Kind::Exists:
      case Formula::Kind::ExistsRamsey:
        return binder(f, m);
    }
    return f;
  }
};

void check_sorts(const std::map<Var, Term>& m) {
  for (const auto& [v, t] : m)
    if (v.sort == Sort::Int && t.sort() != Sort::Int)
      throw std::invalid_argument("sort mismatch: Int variable '" + v.name + "' replaced by a Real term");
}

}  // namespace

Formula substitute(const Formula& f, const std::map<Var, Term>& m, FreshNames& names) {
  check_sorts(m);
  if (m.empty()) return f;
  return Substituter{names}.run(f, m);
}

Formula substitute(const Formula& f, const std::map<Var, Term>& m) {
  FreshNames names(f);
  for (const auto& [v, t] : m) {
    std::vector<Var> vs;
    t.collect_vars(vs);
    for (const auto& w : vs) names.reserve(w.name);
  }
  return substitute(f, m, names);
}

Formula substitute_vars(const Formula& f, const std::map<Var, Var>& m, FreshNames& names) {
  std::map<Var, Term> tm;
  for (const auto& [a, b] : m) tm.emplace(a, Term::variable(b));
  return substitute(f, tm, names);
}

// ---------------------------------------------------------------- evaluation

bool evaluate(const Formula& f, const Assignment& a) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Atom:
      return f.atom().evaluate(a);
    case Formula::Kind::TermAtom: {
      Rational l = f.lhs().evaluate(a), r = f.rhs().evaluate(a);
      switch (f.relation()) {
        case Relation::Lt: return l < r;
        case Relation::Le: return l <= r;
        case Relation::Eq: return l == r;
        case Relation::Ne: return l != r;
        case Relation::Ge: return l >= r;
        case Relation::Gt: return l > r;
      }
      return false;
    }
    case Formula::Kind::Not:
      return !evaluate(f.body(), a);
    case Formula::Kind::And:
      for (const auto& k : f.children())
        if (!evaluate(k, a)) return false;
      return true;
    case Formula::Kind::Or:
      for (const auto& k : f.children())
        if (evaluate(k, a)) return true;
      return false;
    case Formula::Kind::Exists:
    case Formula::Kind::ExistsRamsey:
      throw std::invalid_argument("evaluate is only defined for quantifier-free formulas");
  }
  return false;
}

bool is_quantifier_free(const Formula& f) {
  if (f.kind() == Formula::Kind::Exists || f.kind() == Formula::Kind::ExistsRamsey) return false;
  for (const auto& k : f.children())
    if (!is_quantifier_free(k)) return false;
  return true;
}

bool contains_ramsey(const Formula& f) {
  if (f.kind() == Formula::Kind::ExistsRamsey) return true;
  for (const auto& k : f.children())
    if (contains_ramsey(k)) return true;
  return false;
}

bool contains_floor(const Formula& f) {
  if (f.kind() == Formula::Kind::TermAtom) return f.lhs().has_floor() || f.rhs().has_floor();
  for (const auto& k : f.children())
    if (contains_floor(k)) return true;
  return false;
}

// ---------------------------------------------------------------- prenex

namespace {

struct Hoister {
  FreshNames& names;
  std::set<std::string> used;
  std::vector<Var> vars;

  Formula run(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Not:
        if (!is_quantifier_free(f.body())) throw std::invalid_argument("quantifier under negation");
        return f;
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        std::vector<Formula> kids;
        for (const auto& k : f.children()) kids.push_back(run(k));
        return f.kind() == Formula::Kind::And ? mk_and(std::move(kids)) : mk_or(std::move(kids));
      }
      case Formula::Kind::Exists: {
        std::map<Var, Var> ren;
        for (const auto& v : f.bound()) {
          if (used.count(v.name)) {
            Var nv = names.fresh(v.name, v.sort);
            ren.emplace(v, nv);
            used.insert(nv.name);
            vars.push_back(nv);
          } else {
            used.insert(v.name);
            vars.push_back(v);
          }
        }
        Formula body = ren.empty() ? f.body() : substitute_vars(f.body(), ren, names);
        return run(body);
      }
      case Formula::Kind::ExistsRamsey:
        throw std::invalid_argument("ramsey binder not eliminated");
      default:
        return f;
    }
  }
};

}  // namespace

Prenex hoist_exists(const Formula& f, FreshNames& names) {
  Hoister h{names, {}, {}};
  for (const auto& v : free_vars(f)) h.used.insert(v.name);
  Formula m = h.run(f);
  return Prenex{std::move(h.vars), std::move(m)};
}

Formula prune_unused_binders(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Not:
      return mk_not(prune_unused_binders(f.body()));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> kids;
      for (const auto& k : f.children()) kids.push_back(prune_unused_binders(k));
      return f.kind() == Formula::Kind::And ? mk_and(std::move(kids)) : mk_or(std::move(kids));
    }
    case Formula::Kind::Exists: {
      Formula body = prune_unused_binders(f.body());
      auto fv = free_vars(body);
      std::vector<Var> keep;
      for (const auto& v : f.bound())
        if (fv.count(v)) keep.push_back(v);
      return mk_exists(std::move(keep), std::move(body));
    }
    case Formula::Kind::ExistsRamsey:
      return Formula::exists_ramsey(f.xs(), f.ys(), prune_unused_binders(f.body()));
    default:
      return f;
  }
}

// ---------------------------------------------------------------- size

namespace {

void term_length(const Term& t, std::size_t& len) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      len += 1;
      return;
    case Term::Kind::Constant:
      len += bit_length(t.value());
      return;
    case Term::Kind::Scale:
      len += bit_length(t.value());
      break;
    default:
      len += 1;
      break;
  }
  for (const auto& k : t.children()) term_length(k, len);
}

void measure_rec(const Formula& f, SizeMetrics& m) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      m.atoms += 1;
      const auto& a = f.atom();
      m.length += 1 + bit_length(a.lhs().constant());
      for (const auto& [v, c] : a.lhs().coeffs()) m.length += 1 + bit_length(c);
      if (a.is_congruence()) m.length += mpz_sizeinbase(a.modulus().get_mpz_t(), 2);
      return;
    }
    case Formula::Kind::TermAtom:
      m.atoms += 1;
      m.length += 1;
      term_length(f.lhs(), m.length);
      term_length(f.rhs(), m.length);
      return;
    case Formula::Kind::Exists:
      m.length += 1 + f.bound().size();
      break;
    case Formula::Kind::ExistsRamsey:
      m.length += 1 + 2 * f.xs().size();
      break;
    default:
      m.length += 1;
      break;
  }
  for (const auto& k : f.children()) measure_rec(k, m);
}

}  // namespace

SizeMetrics measure(const Formula& f) {
  SizeMetrics m;
  measure_rec(f, m);
  m.vars = all_vars(f).size();
  return m;
}

}  // namespace ramsey
