#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ramsey/ast.hpp"

namespace ramsey {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& msg);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return msg_; }

 private:
  int line_, column_;
  std::string msg_;
};

struct SExpr {
  enum class Kind { Symbol, Numeral, Decimal, String, Keyword, List };
  Kind kind = Kind::List;
  std::string text;
  std::vector<SExpr> items;
  int line = 0;
  int column = 0;

  bool is_symbol(std::string_view s) const { return kind == Kind::Symbol && text == s; }
  bool is_list() const { return kind == Kind::List; }
};

std::vector<SExpr> read_sexprs(std::string_view text);

struct Script {
  std::string logic;
  std::vector<Var> declarations;  // in declaration order
  Formula goal;
  std::string source = "<input>";
  std::map<std::string, std::string> info;  // set-info keywords without the colon
};

Script parse_script(std::string_view text, std::string source = "<input>");
// Parses one formula under the given declarations.
Formula parse_formula(std::string_view text, const std::vector<Var>& decls);

// Logic name matching the content of f, e.g. QF_LIA or LIRA.
std::string infer_logic(const Formula& f);

std::string to_smtlib(const Formula& f);
std::string to_smtlib(const Term& t);
std::string quote_symbol(const std::string& name);

// Standard SMT-LIB2; rejects residual Ramsey binders.
std::string print_smtlib2(const Script& s);
// The extended dialect, Ramsey binder allowed.
std::string print_rsmt2(const Script& s);

// Free variables of f in a stable order: declarations first, then the rest by name.
std::vector<Var> ordered_free_vars(const Formula& f, const std::vector<Var>& preferred = {});

}  // namespace ramsey
