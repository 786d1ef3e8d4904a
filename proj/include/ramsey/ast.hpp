#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/rational.hpp"

namespace ramsey {

enum class Sort { Int, Real };

const char* sort_name(Sort s);

struct Var {
  std::string name;
  Sort sort = Sort::Int;

  auto operator<=>(const Var&) const = default;
  bool operator==(const Var&) const = default;
};

using Assignment = std::map<Var, Rational>;

// Sum of rational multiples of variables plus a constant. Zero coefficients are never stored.
class LinTerm {
 public:
  LinTerm() = default;
  LinTerm(Rational c) : constant_(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  LinTerm(long c) : constant_(c) {}                 // NOLINT(google-explicit-constructor)
  LinTerm(const Var& v) { coeffs_.emplace(v, Rational(1)); }  // NOLINT(google-explicit-constructor)

  static LinTerm of(const Var& v, const Rational& c);

  const std::map<Var, Rational>& coeffs() const { return coeffs_; }
  const Rational& constant() const { return constant_; }
  Rational coeff(const Var& v) const;
  bool is_constant() const { return coeffs_.empty(); }
  bool all_int() const;
  bool has_integer_data() const;

  // Positive factor that makes every coefficient and the constant integral.
  BigInt denominator_lcm() const;

  LinTerm without_constant() const;
  LinTerm substitute(const std::map<Var, LinTerm>& m) const;
  Rational evaluate(const Assignment& a) const;

  LinTerm& operator+=(const LinTerm& o);
  LinTerm& operator-=(const LinTerm& o);
  LinTerm& operator*=(const Rational& c);
  LinTerm& add(const Var& v, const Rational& c);

  friend LinTerm operator+(LinTerm a, const LinTerm& b) { return a += b; }
  friend LinTerm operator-(LinTerm a, const LinTerm& b) { return a -= b; }
  friend LinTerm operator*(LinTerm a, const Rational& c) { return a *= c; }
  friend LinTerm operator*(const Rational& c, LinTerm a) { return a *= c; }
  LinTerm operator-() const { return *this * Rational(-1); }

  bool operator==(const LinTerm&) const = default;
  auto operator<=>(const LinTerm&) const = default;

 private:
  std::map<Var, Rational> coeffs_;
  Rational constant_;
};

// Arithmetic term that may contain floor. Immutable and cheaply copyable.
class Term {
 public:
  enum class Kind { Variable, Constant, Sum, Scale, Floor };

  static Term variable(const Var& v);
  static Term constant(const Rational& c);
  static Term sum(std::vector<Term> parts);
  static Term scale(const Rational& c, Term t);
  static Term floor(Term t);
  static Term from_lin(const LinTerm& t);

  Kind kind() const;
  const Var& var() const;
  const Rational& value() const;  // Constant, or factor of Scale
  const std::vector<Term>& children() const;

  // Linear form; nullopt when a floor over a non-constant argument remains.
  std::optional<LinTerm> linear() const;
  bool has_floor() const;
  // Int when every value is guaranteed integral.
  Sort sort() const;
  Rational evaluate(const Assignment& a) const;
  void collect_vars(std::vector<Var>& out) const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

enum class AtomKind { Lt, Eq, DivCong, NotDivCong };

// Lt: lhs < 0.  Eq: lhs = 0.  DivCong: lhs ≡ residue (mod modulus).  NotDivCong: negation.
class Atom {
 public:
  static Atom lt(LinTerm lhs);
  static Atom eq(LinTerm lhs);
  // t ≡ c (mod e), normalized so that the stored lhs has no constant and 0 ≤ residue < e.
  static Atom congruent(const LinTerm& t, const BigInt& modulus, const BigInt& c, bool negated = false);

  AtomKind kind() const { return kind_; }
  const LinTerm& lhs() const { return lhs_; }
  const BigInt& modulus() const { return modulus_; }
  const BigInt& residue() const { return residue_; }
  bool is_congruence() const { return kind_ == AtomKind::DivCong || kind_ == AtomKind::NotDivCong; }
  // Value of the atom when lhs is constant.
  std::optional<bool> ground_value() const;
  bool evaluate(const Assignment& a) const;
  Atom with_lhs(LinTerm lhs) const;

  bool operator==(const Atom&) const = default;

 private:
  AtomKind kind_ = AtomKind::Lt;
  LinTerm lhs_;
  BigInt modulus_ = 1;
  BigInt residue_ = 0;
};

enum class Relation { Lt, Le, Eq, Ne, Ge, Gt };

const char* relation_symbol(Relation r);

class Formula {
 public:
  enum class Kind { True, False, Atom, TermAtom, Not, And, Or, Exists, ExistsRamsey };

  Formula();  // true

  static Formula top();
  static Formula bottom();
  static Formula constant(bool b) { return b ? top() : bottom(); }
  static Formula atom(Atom a);
  static Formula term_atom(Relation rel, Term lhs, Term rhs);
  static Formula negation(Formula f);
  static Formula conjunction(std::vector<Formula> fs);
  static Formula disjunction(std::vector<Formula> fs);
  static Formula exists(std::vector<Var> vars, Formula body);
  static Formula exists_ramsey(std::vector<Var> xs, std::vector<Var> ys, Formula body);

  Kind kind() const;
  bool is_true() const { return kind() == Kind::True; }
  bool is_false() const { return kind() == Kind::False; }
  const Atom& atom() const;
  Relation relation() const;
  const Term& lhs() const;
  const Term& rhs() const;
  const std::vector<Formula>& children() const;
  const Formula& body() const;                 // Not, Exists, ExistsRamsey
  const std::vector<Var>& bound() const;       // Exists
  const std::vector<Var>& xs() const;          // ExistsRamsey
  const std::vector<Var>& ys() const;          // ExistsRamsey

  const void* identity() const { return node_.get(); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Builders with flattening and constant folding.
Formula mk_and(std::vector<Formula> fs);
Formula mk_or(std::vector<Formula> fs);
Formula mk_not(Formula f);
Formula mk_exists(std::vector<Var> vars, Formula body);
Formula mk_atom(Atom a);  // folds ground atoms

// Atom shorthands over linear terms.
Formula lt(const LinTerm& a, const LinTerm& b);  // a < b
Formula gt(const LinTerm& a, const LinTerm& b);  // a > b
Formula eq(const LinTerm& a, const LinTerm& b);  // a = b
Formula ne(const LinTerm& a, const LinTerm& b);  // a < b ∨ b < a
Formula le_int(const LinTerm& a, const LinTerm& b);   // a < b + 1
Formula le_real(const LinTerm& a, const LinTerm& b);  // a < b ∨ a = b
Formula le(const LinTerm& a, const LinTerm& b);       // term-level a ≤ b, desugared later
Formula ge(const LinTerm& a, const LinTerm& b);

}  // namespace ramsey
