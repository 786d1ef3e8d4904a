#include <optional>
#include <set>
#include <variant>

#include "ramsey/frontend.hpp"
#include "ramsey/ops.hpp"

namespace ramsey {

namespace {

[[noreturn]] void fail(const SExpr& at, const std::string& msg) { throw ParseError(at.line, at.column, msg); }

using LetValue = std::variant<Term, Formula>;

class FormulaParser {
 public:
  explicit FormulaParser(const std::vector<Var>& decls) {
    scopes_.emplace_back();
    for (const auto& v : decls) scopes_.back()[v.name] = v;
  }

  int ramsey_count() const { return ramsey_count_; }

  Formula formula(const SExpr& e, bool positive = true) {
    if (e.kind == SExpr::Kind::Symbol) {
      if (e.text == "true") return Formula::top();
      if (e.text == "false") return Formula::bottom();
      if (auto lv = lookup_let(e.text)) {
        if (auto* f = std::get_if<Formula>(lv)) return *f;
        fail(e, "'" + e.text + "' is not a formula");
      }
      if (lookup_var(e.text)) fail(e, "sort error: '" + e.text + "' is not Boolean");
      fail(e, "unknown symbol '" + e.text + "'");
    }
    if (!e.is_list() || e.items.empty()) fail(e, "expected a formula");
    const SExpr& head = e.items[0];
    if (head.is_list()) {
      if (head.items.size() == 3 && head.items[0].is_symbol("_") && head.items[1].is_symbol("divisible"))
        return divisible(e);
      fail(head, "unsupported indexed operator");
    }
    if (head.kind != SExpr::Kind::Symbol) fail(head, "expected an operator");
    const std::string& op = head.text;
    auto args = [&]() { return std::vector<SExpr>(e.items.begin() + 1, e.items.end()); };
    if (op == "not") {
      arity(e, 1);
      return mk_not(formula(e.items[1], !positive));
    }
    if (op == "and" || op == "or") {
      std::vector<Formula> kids;
      for (const auto& a : args()) kids.push_back(formula(a, positive));
      return op == "and" ? Formula::conjunction(std::move(kids)) : Formula::disjunction(std::move(kids));
    }
    if (op == "=>") {
      if (e.items.size() < 3) fail(e, "'=>' needs at least two arguments");
      Formula acc = formula(e.items.back(), positive);
      for (std::size_t i = e.items.size() - 2; i >= 1; --i)
        acc = Formula::disjunction({mk_not(formula(e.items[i], !positive)), acc});
      return acc;
    }
    if (op == "xor") {
      arity(e, 2);
      check_quantifier_free(e.items[1]);
      check_quantifier_free(e.items[2]);
      Formula a = formula(e.items[1]), b = formula(e.items[2]);
      return Formula::disjunction({Formula::conjunction({a, mk_not(b)}), Formula::conjunction({mk_not(a), b})});
    }
    if (op == "<" || op == "<=" || op == ">" || op == ">=") return comparison(e, op);
    if (op == "=") {
      if (e.items.size() < 3) fail(e, "'=' needs at least two arguments");
      if (is_boolean(e.items[1])) return iff_chain(e);
      return equality(e);
    }
    if (op == "distinct") {
      if (e.items.size() < 3) fail(e, "'distinct' needs at least two arguments");
      std::vector<Term> ts;
      for (const auto& a : args()) ts.push_back(term(a));
      std::vector<Formula> kids;
      for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i + 1; j < ts.size(); ++j) kids.push_back(make_rel(Relation::Ne, ts[i], ts[j], e));
      return kids.size() == 1 ? kids.front() : Formula::conjunction(std::move(kids));
    }
    if (op == "exists") return exists(e, positive);
    if (op == "forall") fail(e, "universal quantifiers are not supported");
    if (op == "exists-ramsey") return ramsey(e, positive);
    if (op == "let") return let_form<Formula>(e, [&](const SExpr& b) { return formula(b, positive); });
    if (op == "!") {
      if (e.items.size() < 2) fail(e, "annotation without body");
      return formula(e.items[1], positive);
    }
    if (op == "ite") fail(e, "'ite' is not supported");
    fail(head, "unknown operator '" + op + "'");
  }

  Term term(const SExpr& e) {
    switch (e.kind) {
      case SExpr::Kind::Numeral:
      case SExpr::Kind::Decimal:
        return Term::constant(Rational::parse(e.text));
      case SExpr::Kind::Symbol: {
        if (auto lv = lookup_let(e.text)) {
          if (auto* t = std::get_if<Term>(lv)) return *t;
          fail(e, "sort error: '" + e.text + "' is Boolean");
        }
        if (auto v = lookup_var(e.text)) return Term::variable(*v);
        if (e.text == "true" || e.text == "false") fail(e, "sort error: Boolean constant used as a term");
        fail(e, "unknown symbol '" + e.text + "'");
      }
      case SExpr::Kind::String:
      case SExpr::Kind::Keyword:
        fail(e, "expected a term");
      case SExpr::Kind::List:
        break;
    }
    if (e.items.empty()) fail(e, "empty term");
    const SExpr& head = e.items[0];
    if (head.kind != SExpr::Kind::Symbol) fail(head, "expected an operator");
    const std::string& op = head.text;
    if (op == "+") {
      if (e.items.size() < 2) fail(e, "'+' needs arguments");
      std::vector<Term> parts;
      for (std::size_t i = 1; i < e.items.size(); ++i) parts.push_back(term(e.items[i]));
      return Term::sum(std::move(parts));
    }
    if (op == "-") {
      if (e.items.size() < 2) fail(e, "'-' needs arguments");
      Term first = term(e.items[1]);
      if (e.items.size() == 2) return negate(first);
      std::vector<Term> parts{first};
      for (std::size_t i = 2; i < e.items.size(); ++i) parts.push_back(negate(term(e.items[i])));
      return Term::sum(std::move(parts));
    }
    if (op == "*") {
      if (e.items.size() < 3) fail(e, "'*' needs at least two arguments");
      Rational factor(1);
      std::optional<Term> var_part;
      for (std::size_t i = 1; i < e.items.size(); ++i) {
        Term t = term(e.items[i]);
        auto l = t.linear();
        if (l && l->is_constant()) {
          factor *= l->constant();
        } else if (!var_part) {
          var_part = t;
        } else {
          fail(e, "nonlinear multiplication");
        }
      }
      if (!var_part) return Term::constant(factor);
      return Term::scale(factor, *var_part);
    }
    if (op == "/") {
      if (e.items.size() < 3) fail(e, "'/' needs at least two arguments");
      Term num = term(e.items[1]);
      Rational divisor(1);
      for (std::size_t i = 2; i < e.items.size(); ++i) {
        auto l = term(e.items[i]).linear();
        if (!l || !l->is_constant()) fail(e.items[i], "division by a non-constant");
        if (l->constant().is_zero()) fail(e.items[i], "division by zero");
        divisor *= l->constant();
      }
      auto nl = num.linear();
      if (nl && nl->is_constant()) return Term::constant(nl->constant() / divisor);
      return Term::scale(divisor.inverse(), num);
    }
    if (op == "to_real") {
      arity(e, 1);
      return term(e.items[1]);
    }
    if (op == "to_int") {
      arity(e, 1);
      return Term::floor(term(e.items[1]));
    }
    if (op == "mod") fail(e, "'mod' is only supported as (= (mod t e) c)");
    if (op == "let") return let_form<Term>(e, [&](const SExpr& b) { return term(b); });
    if (op == "ite") fail(e, "'ite' is not supported");
    fail(head, "unknown function '" + op + "'");
  }

 private:
  std::vector<std::map<std::string, Var>> scopes_;
  std::vector<std::map<std::string, LetValue>> lets_;
  int ramsey_depth_ = 0;
  int ramsey_count_ = 0;

  static void arity(const SExpr& e, std::size_t n) {
    if (e.items.size() != n + 1)
      fail(e, "'" + e.items[0].text + "' expects " + std::to_string(n) + " argument(s)");
  }

  static Term negate(const Term& t) {
    auto l = t.linear();
    if (l && l->is_constant()) return Term::constant(-l->constant());
    return Term::scale(Rational(-1), t);
  }

  std::optional<Var> lookup_var(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return f->second;
    }
    return std::nullopt;
  }

  const LetValue* lookup_let(const std::string& name) const {
    // A binder introduced after a let shadows it; scopes and lets are searched together
    // by keeping let frames ordered relative to binder frames through push order.
    for (auto it = lets_.rbegin(); it != lets_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }

  bool is_boolean(const SExpr& e) const {
    if (e.kind == SExpr::Kind::Symbol) {
      if (e.text == "true" || e.text == "false") return true;
      if (auto lv = lookup_let(e.text)) return std::holds_alternative<Formula>(*lv);
      return false;
    }
    if (!e.is_list() || e.items.empty()) return false;
    const SExpr& h = e.items[0];
    if (h.is_list()) return h.items.size() == 3 && h.items[0].is_symbol("_") && h.items[1].is_symbol("divisible");
    static const std::set<std::string> ops = {"not", "and", "or", "=>", "xor", "<", "<=", ">", ">=", "=",
                                              "distinct", "exists", "forall", "exists-ramsey", "!"};
    if (h.kind != SExpr::Kind::Symbol) return false;
    if (h.text == "let") return e.items.size() == 3 && is_boolean(e.items[2]);
    return ops.count(h.text) > 0;
  }

  static void check_quantifier_free(const SExpr& e) {
    if (!e.is_list()) return;
    if (!e.items.empty() && (e.items[0].is_symbol("exists") || e.items[0].is_symbol("exists-ramsey")))
      fail(e, "quantifier in a position with both polarities");
    for (const auto& i : e.items) check_quantifier_free(i);
  }

  Formula make_rel(Relation rel, const Term& a, const Term& b, const SExpr& at) {
    (void)at;
    return Formula::term_atom(rel, a, b);
  }

  Formula comparison(const SExpr& e, const std::string& op) {
    if (e.items.size() < 3) fail(e, "'" + op + "' needs at least two arguments");
    Relation rel = op == "<" ? Relation::Lt : op == "<=" ? Relation::Le : op == ">" ? Relation::Gt : Relation::Ge;
    std::vector<Term> ts;
    for (std::size_t i = 1; i < e.items.size(); ++i) ts.push_back(term(e.items[i]));
    std::vector<Formula> kids;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) kids.push_back(make_rel(rel, ts[i], ts[i + 1], e));
    return kids.size() == 1 ? kids.front() : Formula::conjunction(std::move(kids));
  }

  std::optional<std::pair<Term, BigInt>> mod_pattern(const SExpr& e) {
    if (!e.is_list() || e.items.size() != 3 || !e.items[0].is_symbol("mod")) return std::nullopt;
    Term t = term(e.items[1]);
    auto l = t.linear();
    if (!l || !l->all_int() || !l->has_integer_data()) fail(e.items[1], "sort error: 'mod' needs an Int term");
    auto m = term(e.items[2]).linear();
    if (!m || !m->is_constant() || !m->constant().is_integer() || m->constant().sign() <= 0)
      fail(e.items[2], "'mod' needs a positive integer constant modulus");
    return std::make_pair(t, m->constant().numerator());
  }

  Formula equality(const SExpr& e) {
    if (e.items.size() == 3) {
      for (int side = 0; side < 2; ++side) {
        const SExpr& a = e.items[1 + side];
        const SExpr& b = e.items[2 - side];
        if (auto mp = mod_pattern(a)) {
          auto c = term(b).linear();
          if (!c || !c->is_constant() || !c->constant().is_integer())
            fail(b, "'mod' comparison needs an integer constant");
          return Formula::atom(Atom::congruent(*mp->first.linear(), mp->second, c->constant().numerator()));
        }
      }
    }
    std::vector<Term> ts;
    for (std::size_t i = 1; i < e.items.size(); ++i) ts.push_back(term(e.items[i]));
    std::vector<Formula> kids;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) kids.push_back(make_rel(Relation::Eq, ts[i], ts[i + 1], e));
    return kids.size() == 1 ? kids.front() : Formula::conjunction(std::move(kids));
  }

  Formula iff_chain(const SExpr& e) {
    std::vector<Formula> fs;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      check_quantifier_free(e.items[i]);
      fs.push_back(formula(e.items[i]));
    }
    std::vector<Formula> kids;
    for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
      kids.push_back(Formula::disjunction({mk_not(fs[i]), fs[i + 1]}));
      kids.push_back(Formula::disjunction({mk_not(fs[i + 1]), fs[i]}));
    }
    return Formula::conjunction(std::move(kids));
  }

  Formula divisible(const SExpr& e) {
    arity(e, 1);
    const SExpr& idx = e.items[0].items[2];
    if (idx.kind != SExpr::Kind::Numeral) fail(idx, "divisibility index must be a numeral");
    BigInt m(idx.text);
    if (m < 1) fail(idx, "divisibility index must be positive");
    auto l = term(e.items[1]).linear();
    if (!l || !l->all_int() || !l->has_integer_data()) fail(e.items[1], "sort error: divisibility needs an Int term");
    return Formula::atom(Atom::congruent(*l, m, 0));
  }

  std::vector<Var> binder_list(const SExpr& list) {
    if (!list.is_list()) fail(list, "expected a list of sorted variables");
    std::vector<Var> out;
    std::set<std::string> seen;
    for (const auto& b : list.items) {
      if (!b.is_list() || b.items.size() != 2 || b.items[0].kind != SExpr::Kind::Symbol)
        fail(b, "expected (name Sort)");
      if (!seen.insert(b.items[0].text).second) fail(b, "duplicate bound variable '" + b.items[0].text + "'");
      out.push_back(Var{b.items[0].text, parse_sort(b.items[1])});
    }
    return out;
  }

  template <typename T, typename F>
  T with_scope(const std::vector<Var>& vars, F&& body) {
    std::map<std::string, Var> frame;
    for (const auto& v : vars) frame[v.name] = v;
    scopes_.push_back(std::move(frame));
    // Bound variables shadow let-bound names of the same spelling.
    std::map<std::string, LetValue> shadow;
    for (const auto& v : vars) shadow.emplace(v.name, Term::variable(v));
    lets_.push_back(std::move(shadow));
    try {
      T r = body();
      scopes_.pop_back();
      lets_.pop_back();
      return r;
    } catch (...) {
      scopes_.pop_back();
      lets_.pop_back();
      throw;
    }
  }

  Formula exists(const SExpr& e, bool positive) {
    if (e.items.size() != 3) fail(e, "'exists' expects a binder list and a body");
    if (!positive) fail(e, "existential quantifier in negative position is not supported");
    auto vars = binder_list(e.items[1]);
    if (vars.empty()) fail(e.items[1], "empty binder list");
    Formula body = with_scope<Formula>(vars, [&] { return formula(e.items[2], positive); });
    return Formula::exists(std::move(vars), std::move(body));
  }

  Formula ramsey(const SExpr& e, bool positive) {
    if (e.items.size() != 4) fail(e, "'exists-ramsey' expects two binder lists and a body");
    if (ramsey_depth_ > 0) fail(e, "nested ramsey binder");
    if (!positive) fail(e, "ramsey binder in negative position");
    auto xs = binder_list(e.items[1]);
    auto ys = binder_list(e.items[2]);
    if (xs.empty()) fail(e.items[1], "ramsey tuple of dimension 0");
    if (xs.size() != ys.size()) fail(e, "ramsey vector length mismatch");
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i].sort != ys[i].sort) fail(e.items[2].items[i], "ramsey vector type mismatch at position " + std::to_string(i + 1));
      for (const auto& y : ys)
        if (y.name == xs[i].name) fail(e, "variable '" + y.name + "' bound twice by the ramsey binder");
    }
    ++ramsey_count_;
    ++ramsey_depth_;
    std::vector<Var> all = xs;
    all.insert(all.end(), ys.begin(), ys.end());
    Formula body = [&] {
      try {
        Formula b = with_scope<Formula>(all, [&] { return formula(e.items[3], positive); });
        --ramsey_depth_;
        return b;
      } catch (...) {
        --ramsey_depth_;
        throw;
      }
    }();
    return Formula::exists_ramsey(std::move(xs), std::move(ys), std::move(body));
  }

  template <typename T, typename F>
  T let_form(const SExpr& e, F&& body) {
    if (e.items.size() != 3 || !e.items[1].is_list()) fail(e, "malformed let");
    std::map<std::string, LetValue> frame;
    for (const auto& b : e.items[1].items) {
      if (!b.is_list() || b.items.size() != 2 || b.items[0].kind != SExpr::Kind::Symbol) fail(b, "malformed let binding");
      LetValue v = is_boolean(b.items[1]) ? LetValue(formula(b.items[1])) : LetValue(term(b.items[1]));
      if (!frame.emplace(b.items[0].text, std::move(v)).second) fail(b, "duplicate let binding");
    }
    lets_.push_back(std::move(frame));
    try {
      T r = body(e.items[2]);
      lets_.pop_back();
      return r;
    } catch (...) {
      lets_.pop_back();
      throw;
    }
  }

 public:
  static Sort parse_sort(const SExpr& s) {
    if (s.is_symbol("Int")) return Sort::Int;
    if (s.is_symbol("Real")) return Sort::Real;
    fail(s, "unsupported sort");
  }
};

}  // namespace

Script parse_script(std::string_view text, std::string source) {
  auto exprs = read_sexprs(text);
  Script s;
  s.source = std::move(source);
  std::vector<Formula> asserts;
  std::set<std::string> declared;
  int ramsey_total = 0;
  for (const auto& cmd : exprs) {
    if (!cmd.is_list() || cmd.items.empty() || cmd.items[0].kind != SExpr::Kind::Symbol)
      fail(cmd, "expected a command");
    const std::string& name = cmd.items[0].text;
    if (name == "set-logic") {
      if (cmd.items.size() != 2 || cmd.items[1].kind != SExpr::Kind::Symbol) fail(cmd, "malformed set-logic");
      s.logic = cmd.items[1].text;
    } else if (name == "set-info") {
      if (cmd.items.size() < 2 || cmd.items[1].kind != SExpr::Kind::Keyword) fail(cmd, "malformed set-info");
      s.info[cmd.items[1].text] = cmd.items.size() > 2 ? cmd.items[2].text : "";
    } else if (name == "set-option" || name == "check-sat" || name == "get-model" || name == "exit" ||
               name == "get-value" || name == "get-info") {
      continue;
    } else if (name == "declare-const" || name == "declare-fun") {
      const bool fun = name == "declare-fun";
      if (cmd.items.size() != (fun ? 4u : 3u) || cmd.items[1].kind != SExpr::Kind::Symbol)
        fail(cmd, "malformed " + name);
      if (fun && (!cmd.items[2].is_list() || !cmd.items[2].items.empty()))
        fail(cmd.items[2], "functions with arguments are not supported");
      const SExpr& sort = cmd.items[fun ? 3 : 2];
      if (!declared.insert(cmd.items[1].text).second) fail(cmd, "'" + cmd.items[1].text + "' declared twice");
      s.declarations.push_back(Var{cmd.items[1].text, FormulaParser::parse_sort(sort)});
    } else if (name == "assert") {
      if (cmd.items.size() != 2) fail(cmd, "assert expects one formula");
      FormulaParser p(s.declarations);
      asserts.push_back(p.formula(cmd.items[1]));
      ramsey_total += p.ramsey_count();
      if (ramsey_total > 1) fail(cmd, "more than one ramsey binder per goal");
    } else if (name == "push" || name == "pop") {
      fail(cmd, "incremental commands are not supported");
    } else {
      fail(cmd, "unsupported command '" + name + "'");
    }
  }
  if (asserts.empty())
    s.goal = Formula::top();
  else if (asserts.size() == 1)
    s.goal = asserts.front();
  else
    s.goal = Formula::conjunction(std::move(asserts));
  return s;
}

Formula parse_formula(std::string_view text, const std::vector<Var>& decls) {
  auto exprs = read_sexprs(text);
  if (exprs.size() != 1) throw ParseError(1, 1, "expected exactly one formula");
  FormulaParser p(decls);
  return p.formula(exprs.front());
}

}  // namespace ramsey
