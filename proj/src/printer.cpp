#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "ramsey/frontend.hpp"
#include "ramsey/ops.hpp"

namespace ramsey {

namespace {

bool simple_symbol(const std::string& s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) continue;
    if (std::string_view("~!@$%^&*_-+=<>.?/").find(c) == std::string_view::npos) return false;
  }
  static const char* reserved[] = {"let", "exists", "forall", "par", "_", "!", "as", "NUMERAL", "DECIMAL", "STRING",
                                   "true", "false"};
  for (const char* r : reserved)
    if (s == r) return false;
  return true;
}

std::string integer_text(const BigInt& n) {
  if (n < 0) return "(- " + BigInt(-n).get_str() + ")";
  return n.get_str();
}

std::string number(const Rational& r, bool real) {
  if (!real) {
    if (!r.is_integer()) throw std::logic_error("non-integer constant in an Int context");
    return integer_text(r.numerator());
  }
  auto decimal = [](const BigInt& n) { return n.get_str() + ".0"; };
  BigInt num = r.numerator();
  bool neg = num < 0;
  if (neg) num = -num;
  std::string body = r.is_integer() ? decimal(num) : "(/ " + decimal(num) + " " + decimal(r.denominator()) + ")";
  return neg ? "(- " + body + ")" : body;
}

std::string var_text(const Var& v, bool real) {
  std::string s = quote_symbol(v.name);
  if (real && v.sort == Sort::Int) return "(to_real " + s + ")";
  return s;
}

std::string monomial(const Var& v, const Rational& c, bool real) {
  if (c == Rational(1)) return var_text(v, real);
  if (c == Rational(-1)) return "(- " + var_text(v, real) + ")";
  return "(* " + number(c, real) + " " + var_text(v, real) + ")";
}

std::string sum_text(const std::vector<std::string>& parts, bool real) {
  if (parts.empty()) return real ? "0.0" : "0";
  if (parts.size() == 1) return parts.front();
  std::string s = "(+";
  for (const auto& p : parts) s += " " + p;
  return s + ")";
}

std::string lin_text(const LinTerm& t, bool real) {
  std::vector<std::string> parts;
  for (const auto& [v, c] : t.coeffs()) parts.push_back(monomial(v, c, real));
  if (!t.constant().is_zero()) parts.push_back(number(t.constant(), real));
  return sum_text(parts, real);
}

bool term_is_real(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return t.var().sort == Sort::Real;
    case Term::Kind::Constant:
      return !t.value().is_integer();
    case Term::Kind::Scale:
      if (!t.value().is_integer()) return true;
      break;
    case Term::Kind::Floor:
      return false;
    default:
      break;
  }
  for (const auto& k : t.children())
    if (term_is_real(k)) return true;
  return false;
}

std::string term_text(const Term& t, bool real) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return var_text(t.var(), real);
    case Term::Kind::Constant:
      return number(t.value(), real);
    case Term::Kind::Sum: {
      std::vector<std::string> parts;
      for (const auto& k : t.children()) parts.push_back(term_text(k, real));
      return sum_text(parts, real);
    }
    case Term::Kind::Scale: {
      if (t.value() == Rational(-1)) return "(- " + term_text(t.children()[0], real) + ")";
      return "(* " + number(t.value(), real) + " " + term_text(t.children()[0], real) + ")";
    }
    case Term::Kind::Floor: {
      std::string inner = "(to_int " + term_text(t.children()[0], true) + ")";
      return real ? "(to_real " + inner + ")" : inner;
    }
  }
  return "?";
}

void atom_text(const Atom& a, std::string& out) {
  LinTerm lhs = a.lhs();
  if (a.is_congruence()) {
    std::string s = "(= (mod " + lin_text(lhs, false) + " " + a.modulus().get_str() + ") " + a.residue().get_str() + ")";
    out += a.kind() == AtomKind::DivCong ? s : "(not " + s + ")";
    return;
  }
  bool real = !lhs.all_int();
  if (!real && !lhs.has_integer_data()) lhs *= Rational(lhs.denominator_lcm());
  // Positive monomials on the left, negative ones and the constant on the right.
  LinTerm left, right(-lhs.constant());
  for (const auto& [v, c] : lhs.coeffs()) {
    if (c.sign() > 0)
      left.add(v, c);
    else
      right.add(v, -c);
  }
  const char* op = a.kind() == AtomKind::Lt ? "<" : "=";
  out += "(";
  out += op;
  out += " ";
  out += lin_text(left, real);
  out += " ";
  out += lin_text(right, real);
  out += ")";
}

void formula_text(const Formula& f, std::string& out, bool allow_ramsey) {
  switch (f.kind()) {
    case Formula::Kind::True:
      out += "true";
      return;
    case Formula::Kind::False:
      out += "false";
      return;
    case Formula::Kind::Atom:
      atom_text(f.atom(), out);
      return;
    case Formula::Kind::TermAtom: {
      std::vector<Var> vs;
      f.lhs().collect_vars(vs);
      f.rhs().collect_vars(vs);
      bool real = std::any_of(vs.begin(), vs.end(), [](const Var& v) { return v.sort == Sort::Real; }) ||
                  term_is_real(f.lhs()) || term_is_real(f.rhs());
      out += "(";
      out += relation_symbol(f.relation());
      out += " ";
      out += term_text(f.lhs(), real);
      out += " ";
      out += term_text(f.rhs(), real);
      out += ")";
      return;
    }
    case Formula::Kind::Not:
      out += "(not ";
      formula_text(f.body(), out, allow_ramsey);
      out += ")";
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      if (f.children().empty()) {
        out += f.kind() == Formula::Kind::And ? "true" : "false";
        return;
      }
      out += f.kind() == Formula::Kind::And ? "(and" : "(or";
      for (const auto& k : f.children()) {
        out += " ";
        formula_text(k, out, allow_ramsey);
      }
      out += ")";
      return;
    case Formula::Kind::Exists: {
      out += "(exists (";
      bool first = true;
      for (const auto& v : f.bound()) {
        if (!first) out += " ";
        first = false;
        out += "(" + quote_symbol(v.name) + " " + sort_name(v.sort) + ")";
      }
      out += ") ";
      formula_text(f.body(), out, allow_ramsey);
      out += ")";
      return;
    }
    case Formula::Kind::ExistsRamsey: {
      if (!allow_ramsey) throw std::invalid_argument("ramsey binder not eliminated");
      auto list = [&](const std::vector<Var>& vs) {
        out += "(";
        bool first = true;
        for (const auto& v : vs) {
          if (!first) out += " ";
          first = false;
          out += "(" + quote_symbol(v.name) + " " + sort_name(v.sort) + ")";
        }
        out += ")";
      };
      out += "(exists-ramsey ";
      list(f.xs());
      out += " ";
      list(f.ys());
      out += " ";
      formula_text(f.body(), out, allow_ramsey);
      out += ")";
      return;
    }
  }
}

void scan_logic(const Formula& f, bool& ints, bool& reals, bool& floors, bool& quant) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (const auto& [v, c] : f.atom().lhs().coeffs()) (v.sort == Sort::Int ? ints : reals) = true;
      return;
    case Formula::Kind::TermAtom: {
      std::vector<Var> vs;
      f.lhs().collect_vars(vs);
      f.rhs().collect_vars(vs);
      for (const auto& v : vs) (v.sort == Sort::Int ? ints : reals) = true;
      if (f.lhs().has_floor() || f.rhs().has_floor()) floors = true;
      return;
    }
    case Formula::Kind::Exists:
    case Formula::Kind::ExistsRamsey:
      quant = true;
      for (const auto& v : f.bound()) (v.sort == Sort::Int ? ints : reals) = true;
      break;
    default:
      break;
  }
  for (const auto& k : f.children()) scan_logic(k, ints, reals, floors, quant);
}

std::string script_text(const Script& s, bool allow_ramsey, const std::string& logic) {
  std::string out;
  out += "(set-logic " + logic + ")\n";
  if (allow_ramsey)
    for (const auto& [k, v] : s.info) out += "(set-info :" + k + " " + quote_symbol(v) + ")\n";
  std::vector<Var> decls = s.declarations;
  for (const auto& v : ordered_free_vars(s.goal, s.declarations))
    if (std::find(decls.begin(), decls.end(), v) == decls.end()) decls.push_back(v);
  for (const auto& v : decls) out += "(declare-const " + quote_symbol(v.name) + " " + sort_name(v.sort) + ")\n";
  out += "(assert ";
  formula_text(s.goal, out, allow_ramsey);
  out += ")\n(check-sat)\n";
  return out;
}

}  // namespace

std::string quote_symbol(const std::string& name) {
  if (simple_symbol(name)) return name;
  if (name.find('|') != std::string::npos || name.find('\\') != std::string::npos)
    throw std::invalid_argument("symbol cannot be quoted: " + name);
  return "|" + name + "|";
}

std::string infer_logic(const Formula& f) {
  bool ints = false, reals = false, floors = false, quant = false;
  scan_logic(f, ints, reals, floors, quant);
  std::string arith;
  if (floors || (ints && reals))
    arith = "LIRA";
  else if (reals)
    arith = "LRA";
  else
    arith = "LIA";
  return (quant ? "" : "QF_") + arith;
}

std::string to_smtlib(const Formula& f) {
  std::string out;
  formula_text(f, out, true);
  return out;
}

std::string to_smtlib(const Term& t) {
  std::vector<Var> vs;
  t.collect_vars(vs);
  bool real = term_is_real(t) || std::any_of(vs.begin(), vs.end(), [](const Var& v) { return v.sort == Sort::Real; });
  return term_text(t, real);
}

std::string print_smtlib2(const Script& s) { return script_text(s, false, infer_logic(s.goal)); }

std::string print_rsmt2(const Script& s) {
  std::string logic = s.logic.empty() ? infer_logic(s.goal) : s.logic;
  return script_text(s, true, logic);
}

std::vector<Var> ordered_free_vars(const Formula& f, const std::vector<Var>& preferred) {
  auto fv = free_vars(f);
  std::vector<Var> out;
  for (const auto& v : preferred)
    if (fv.erase(v)) out.push_back(v);
  out.insert(out.end(), fv.begin(), fv.end());
  return out;
}

}  // namespace ramsey
