#include "ramsey/ast.hpp"

#include <stdexcept>

namespace ramsey {

const char* sort_name(Sort s) { return s == Sort::Int ? "Int" : "Real"; }

// ---------------------------------------------------------------- LinTerm

LinTerm LinTerm::of(const Var& v, const Rational& c) {
  LinTerm t;
  t.add(v, c);
  return t;
}

Rational LinTerm::coeff(const Var& v) const {
  auto it = coeffs_.find(v);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

bool LinTerm::all_int() const {
  for (const auto& [v, c] : coeffs_)
    if (v.sort != Sort::Int) return false;
  return true;
}

bool LinTerm::has_integer_data() const {
  if (!constant_.is_integer()) return false;
  for (const auto& [v, c] : coeffs_)
    if (!c.is_integer()) return false;
  return true;
}

BigInt LinTerm::denominator_lcm() const {
  BigInt l = constant_.denominator();
  for (const auto& [v, c] : coeffs_) l = lcm(l, c.denominator());
  return l;
}

LinTerm LinTerm::without_constant() const {
  LinTerm t = *this;
  t.constant_ = Rational(0);
  return t;
}

LinTerm& LinTerm::add(const Var& v, const Rational& c) {
  if (c.is_zero()) return *this;
  auto [it, inserted] = coeffs_.emplace(v, c);
  if (!inserted) {
    if (it->first.sort != v.sort) throw std::invalid_argument("variable '" + v.name + "' used with two sorts");
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
  return *this;
}

LinTerm& LinTerm::operator+=(const LinTerm& o) {
  for (const auto& [v, c] : o.coeffs_) add(v, c);
  constant_ += o.constant_;
  return *this;
}

LinTerm& LinTerm::operator-=(const LinTerm& o) {
  for (const auto& [v, c] : o.coeffs_) add(v, -c);
  constant_ -= o.constant_;
  return *this;
}

LinTerm& LinTerm::operator*=(const Rational& c) {
  if (c.is_zero()) {
    coeffs_.clear();
    constant_ = Rational(0);
    return *this;
  }
  for (auto& [v, k] : coeffs_) k *= c;
  constant_ *= c;
  return *this;
}

LinTerm LinTerm::substitute(const std::map<Var, LinTerm>& m) const {
  LinTerm out(constant_);
  for (const auto& [v, c] : coeffs_) {
    auto it = m.find(v);
    if (it == m.end())
      out.add(v, c);
    else
      out += it->second * c;
  }
  return out;
}

Rational LinTerm::evaluate(const Assignment& a) const {
  Rational r = constant_;
  for (const auto& [v, c] : coeffs_) {
    auto it = a.find(v);
    if (it == a.end()) throw std::out_of_range("unbound variable '" + v.name + "'");
    if (v.sort == Sort::Int && !it->second.is_integer())
      throw std::invalid_argument("non-integer value for Int variable '" + v.name + "'");
    r += c * it->second;
  }
  return r;
}

// ---------------------------------------------------------------- Term

struct Term::Node {
  Kind kind;
  Var var;
  Rational value;
  std::vector<Term> kids;
};

Term Term::variable(const Var& v) {
  return Term(std::make_shared<const Node>(Node{Kind::Variable, v, Rational(0), {}}));
}

Term Term::constant(const Rational& c) {
  return Term(std::make_shared<const Node>(Node{Kind::Constant, Var{}, c, {}}));
}

Term Term::sum(std::vector<Term> parts) {
  if (parts.size() == 1) return parts.front();
  return Term(std::make_shared<const Node>(Node{Kind::Sum, Var{}, Rational(0), std::move(parts)}));
}

Term Term::scale(const Rational& c, Term t) {
  return Term(std::make_shared<const Node>(Node{Kind::Scale, Var{}, c, {std::move(t)}}));
}

Term Term::floor(Term t) {
  return Term(std::make_shared<const Node>(Node{Kind::Floor, Var{}, Rational(0), {std::move(t)}}));
}

Term Term::from_lin(const LinTerm& t) {
  std::vector<Term> parts;
  for (const auto& [v, c] : t.coeffs())
    parts.push_back(c == Rational(1) ? variable(v) : scale(c, variable(v)));
  if (!t.constant().is_zero() || parts.empty()) parts.push_back(constant(t.constant()));
  return sum(std::move(parts));
}

Term::Kind Term::kind() const { return node_->kind; }
const Var& Term::var() const { return node_->var; }
const Rational& Term::value() const { return node_->value; }
const std::vector<Term>& Term::children() const { return node_->kids; }

std::optional<LinTerm> Term::linear() const {
  switch (node_->kind) {
    case Kind::Variable:
      return LinTerm(node_->var);
    case Kind::Constant:
      return LinTerm(node_->value);
    case Kind::Sum: {
      LinTerm acc;
      for (const auto& k : node_->kids) {
        auto l = k.linear();
        if (!l) return std::nullopt;
        acc += *l;
      }
      return acc;
    }
    case Kind::Scale: {
      auto l = node_->kids[0].linear();
      if (!l) return std::nullopt;
      return *l * node_->value;
    }
    case Kind::Floor: {
      auto l = node_->kids[0].linear();
      if (!l) return std::nullopt;
      if (l->is_constant()) return LinTerm(l->constant().floor());
      if (l->all_int() && l->has_integer_data()) return l;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool Term::has_floor() const {
  if (node_->kind == Kind::Floor) return true;
  for (const auto& k : node_->kids)
    if (k.has_floor()) return true;
  return false;
}

Sort Term::sort() const {
  switch (node_->kind) {
    case Kind::Variable:
      return node_->var.sort;
    case Kind::Constant:
      return node_->value.is_integer() ? Sort::Int : Sort::Real;
    case Kind::Sum:
      for (const auto& k : node_->kids)
        if (k.sort() == Sort::Real) return Sort::Real;
      return Sort::Int;
    case Kind::Scale:
      return node_->value.is_integer() ? node_->kids[0].sort() : Sort::Real;
    case Kind::Floor:
      return Sort::Int;
  }
  return Sort::Real;
}

Rational Term::evaluate(const Assignment& a) const {
  switch (node_->kind) {
    case Kind::Variable:
      return LinTerm(node_->var).evaluate(a);
    case Kind::Constant:
      return node_->value;
    case Kind::Sum: {
      Rational r;
      for (const auto& k : node_->kids) r += k.evaluate(a);
      return r;
    }
    case Kind::Scale:
      return node_->value * node_->kids[0].evaluate(a);
    case Kind::Floor:
      return node_->kids[0].evaluate(a).floor();
  }
  return Rational(0);
}

void Term::collect_vars(std::vector<Var>& out) const {
  if (node_->kind == Kind::Variable) out.push_back(node_->var);
  for (const auto& k : node_->kids) k.collect_vars(out);
}

// ---------------------------------------------------------------- Atom

Atom Atom::lt(LinTerm lhs) {
  Atom a;
  a.kind_ = AtomKind::Lt;
  a.lhs_ = std::move(lhs);
  return a;
}

Atom Atom::eq(LinTerm lhs) {
  Atom a;
  a.kind_ = AtomKind::Eq;
  a.lhs_ = std::move(lhs);
  return a;
}

Atom Atom::congruent(const LinTerm& t, const BigInt& modulus, const BigInt& c, bool negated) {
  if (modulus < 1) throw std::invalid_argument("modulus must be at least 1");
  if (!t.has_integer_data()) throw std::invalid_argument("congruence needs integer coefficients");
  if (!t.all_int()) throw std::invalid_argument("congruence over a Real variable");
  Atom a;
  a.kind_ = negated ? AtomKind::NotDivCong : AtomKind::DivCong;
  a.lhs_ = t.without_constant();
  a.modulus_ = modulus;
  a.residue_ = floor_mod(c - t.constant().numerator(), modulus);
  return a;
}

std::optional<bool> Atom::ground_value() const {
  if (!lhs_.is_constant()) return std::nullopt;
  const Rational& v = lhs_.constant();
  switch (kind_) {
    case AtomKind::Lt:
      return v.sign() < 0;
    case AtomKind::Eq:
      return v.is_zero();
    case AtomKind::DivCong:
      return floor_mod(v.numerator(), modulus_) == residue_;
    case AtomKind::NotDivCong:
      return floor_mod(v.numerator(), modulus_) != residue_;
  }
  return std::nullopt;
}

bool Atom::evaluate(const Assignment& a) const {
  Rational v = lhs_.evaluate(a);
  switch (kind_) {
    case AtomKind::Lt:
      return v.sign() < 0;
    case AtomKind::Eq:
      return v.is_zero();
    case AtomKind::DivCong:
    case AtomKind::NotDivCong: {
      bool holds = floor_mod(v.numerator(), modulus_) == residue_;
      return kind_ == AtomKind::DivCong ? holds : !holds;
    }
  }
  return false;
}

Atom Atom::with_lhs(LinTerm lhs) const {
  if (is_congruence()) return congruent(lhs, modulus_, residue_, kind_ == AtomKind::NotDivCong);
  Atom a = *this;
  a.lhs_ = std::move(lhs);
  return a;
}

const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::Lt: return "<";
    case Relation::Le: return "<=";
    case Relation::Eq: return "=";
    case Relation::Ne: return "distinct";
    case Relation::Ge: return ">=";
    case Relation::Gt: return ">";
  }
  return "?";
}

// ---------------------------------------------------------------- Formula

struct Formula::Node {
  Kind kind = Kind::True;
  std::optional<Atom> atom;
  Relation rel = Relation::Lt;
  std::optional<Term> lhs, rhs;
  std::vector<Formula> kids;
  std::vector<Var> vars;
  std::vector<Var> ys;
};

Formula::Formula() : Formula(top()) {}

Formula Formula::top() {
  static const auto node = std::make_shared<const Node>(Node{Kind::True});
  return Formula(node);
}

Formula Formula::bottom() {
  static const auto node = std::make_shared<const Node>(Node{Kind::False});
  return Formula(node);
}

Formula Formula::atom(Atom a) {
  Node n;
  n.kind = Kind::Atom;
  n.atom = std::move(a);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::term_atom(Relation rel, Term lhs, Term rhs) {
  Node n;
  n.kind = Kind::TermAtom;
  n.rel = rel;
  n.lhs = std::move(lhs);
  n.rhs = std::move(rhs);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::negation(Formula f) {
  Node n;
  n.kind = Kind::Not;
  n.kids.push_back(std::move(f));
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::conjunction(std::vector<Formula> fs) {
  Node n;
  n.kind = Kind::And;
  n.kids = std::move(fs);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::disjunction(std::vector<Formula> fs) {
  Node n;
  n.kind = Kind::Or;
  n.kids = std::move(fs);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::exists(std::vector<Var> vars, Formula body) {
  Node n;
  n.kind = Kind::Exists;
  n.vars = std::move(vars);
  n.kids.push_back(std::move(body));
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::exists_ramsey(std::vector<Var> xs, std::vector<Var> ys, Formula body) {
  if (xs.size() != ys.size()) throw std::invalid_argument("ramsey tuples differ in length");
  if (xs.empty()) throw std::invalid_argument("ramsey tuple of dimension 0");
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (xs[i].sort != ys[i].sort)
      throw std::invalid_argument("ramsey tuples differ in sort at position " + std::to_string(i));
  Node n;
  n.kind = Kind::ExistsRamsey;
  n.vars = std::move(xs);
  n.ys = std::move(ys);
  n.kids.push_back(std::move(body));
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const Atom& Formula::atom() const {
  if (!node_->atom) throw std::logic_error("not an atom");
  return *node_->atom;
}

Relation Formula::relation() const { return node_->rel; }

const Term& Formula::lhs() const {
  if (!node_->lhs) throw std::logic_error("not a term atom");
  return *node_->lhs;
}

const Term& Formula::rhs() const {
  if (!node_->rhs) throw std::logic_error("not a term atom");
  return *node_->rhs;
}

const std::vector<Formula>& Formula::children() const { return node_->kids; }

const Formula& Formula::body() const {
  if (node_->kids.size() != 1 ||
      (node_->kind != Kind::Not && node_->kind != Kind::Exists && node_->kind != Kind::ExistsRamsey))
    throw std::logic_error("formula has no body");
  return node_->kids.front();
}

const std::vector<Var>& Formula::bound() const { return node_->vars; }
const std::vector<Var>& Formula::xs() const { return node_->vars; }
const std::vector<Var>& Formula::ys() const { return node_->ys; }

// ---------------------------------------------------------------- builders

namespace {

Formula flatten_assoc(Formula::Kind kind, std::vector<Formula> fs) {
  const Formula::Kind unit = kind == Formula::Kind::And ? Formula::Kind::True : Formula::Kind::False;
  const Formula::Kind zero = kind == Formula::Kind::And ? Formula::Kind::False : Formula::Kind::True;
  std::vector<Formula> out;
  out.reserve(fs.size());
  std::vector<Formula> stack(fs.rbegin(), fs.rend());
  while (!stack.empty()) {
    Formula f = std::move(stack.back());
    stack.pop_back();
    if (f.kind() == unit) continue;
    if (f.kind() == zero) return f;
    if (f.kind() == kind) {
      const auto& kids = f.children();
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
      continue;
    }
    out.push_back(std::move(f));
  }
  if (out.empty()) return kind == Formula::Kind::And ? Formula::top() : Formula::bottom();
  if (out.size() == 1) return out.front();
  return kind == Formula::Kind::And ? Formula::conjunction(std::move(out))
                                    : Formula::disjunction(std::move(out));
}

}  // namespace

Formula mk_and(std::vector<Formula> fs) { return flatten_assoc(Formula::Kind::And, std::move(fs)); }
Formula mk_or(std::vector<Formula> fs) { return flatten_assoc(Formula::Kind::Or, std::move(fs)); }

Formula mk_not(Formula f) {
  if (f.is_true()) return Formula::bottom();
  if (f.is_false()) return Formula::top();
  if (f.kind() == Formula::Kind::Not) return f.body();
  return Formula::negation(std::move(f));
}

Formula mk_exists(std::vector<Var> vars, Formula body) {
  if (vars.empty() || body.is_true() || body.is_false()) return body;
  return Formula::exists(std::move(vars), std::move(body));
}

Formula mk_atom(Atom a) {
  if (auto g = a.ground_value()) return Formula::constant(*g);
  return Formula::atom(std::move(a));
}

Formula lt(const LinTerm& a, const LinTerm& b) { return mk_atom(Atom::lt(a - b)); }
Formula gt(const LinTerm& a, const LinTerm& b) { return mk_atom(Atom::lt(b - a)); }
Formula eq(const LinTerm& a, const LinTerm& b) { return mk_atom(Atom::eq(a - b)); }
Formula ne(const LinTerm& a, const LinTerm& b) { return mk_or({lt(a, b), lt(b, a)}); }
Formula le_int(const LinTerm& a, const LinTerm& b) { return lt(a, b + LinTerm(1)); }
Formula le_real(const LinTerm& a, const LinTerm& b) { return mk_or({lt(a, b), eq(a, b)}); }

Formula le(const LinTerm& a, const LinTerm& b) {
  return Formula::term_atom(Relation::Le, Term::from_lin(a), Term::from_lin(b));
}

Formula ge(const LinTerm& a, const LinTerm& b) {
  return Formula::term_atom(Relation::Ge, Term::from_lin(a), Term::from_lin(b));
}

}  // namespace ramsey
