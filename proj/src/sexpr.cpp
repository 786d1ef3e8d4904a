#include <cctype>

#include "ramsey/frontend.hpp"

namespace ramsey {

ParseError::ParseError(int line, int column, const std::string& msg)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column),
      msg_(msg) {}

namespace {

constexpr std::size_t kMaxDepth = 1024;

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> all() {
    std::vector<SExpr> out;
    skip_space();
    while (pos_ < text_.size()) {
      out.push_back(read(0));
      skip_space();
    }
    return out;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == ';') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  static bool symbol_char(char c) {
    if (std::isalnum(static_cast<unsigned char>(c))) return true;
    switch (c) {
      case '~': case '!': case '@': case '$': case '%': case '^': case '&': case '*':
      case '_': case '-': case '+': case '=': case '<': case '>': case '.': case '?':
      case '/':
        return true;
      default:
        return static_cast<unsigned char>(c) >= 0x80;
    }
  }

  SExpr read(std::size_t depth) {
    if (depth > kMaxDepth) throw ParseError(line_, col_, "nesting too deep");
    skip_space();
    if (pos_ >= text_.size()) throw ParseError(line_, col_, "unexpected end of input");
    SExpr e;
    e.line = line_;
    e.column = col_;
    char c = peek();
    if (c == '(') {
      advance();
      e.kind = SExpr::Kind::List;
      for (;;) {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError(e.line, e.column, "unclosed parenthesis");
        if (peek() == ')') {
          advance();
          break;
        }
        e.items.push_back(read(depth + 1));
      }
      return e;
    }
    if (c == ')') throw ParseError(line_, col_, "unexpected ')'");
    if (c == '"') {
      advance();
      e.kind = SExpr::Kind::String;
      for (;;) {
        if (pos_ >= text_.size()) throw ParseError(e.line, e.column, "unterminated string");
        char d = peek();
        advance();
        if (d == '"') {
          if (pos_ < text_.size() && peek() == '"') {
            e.text += '"';
            advance();
            continue;
          }
          break;
        }
        e.text += d;
      }
      return e;
    }
    if (c == '|') {
      advance();
      e.kind = SExpr::Kind::Symbol;
      for (;;) {
        if (pos_ >= text_.size()) throw ParseError(e.line, e.column, "unterminated quoted symbol");
        char d = peek();
        advance();
        if (d == '|') break;
        if (d == '\\') throw ParseError(line_, col_, "backslash in quoted symbol");
        e.text += d;
      }
      return e;
    }
    if (c == ':') {
      advance();
      e.kind = SExpr::Kind::Keyword;
      while (pos_ < text_.size() && symbol_char(peek())) {
        e.text += peek();
        advance();
      }
      if (e.text.empty()) throw ParseError(e.line, e.column, "empty keyword");
      return e;
    }
    if (!symbol_char(c)) throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
    while (pos_ < text_.size() && symbol_char(peek())) {
      e.text += peek();
      advance();
    }
    bool all_digits = true, one_dot = false, ok_decimal = true;
    for (char d : e.text) {
      if (d == '.') {
        if (one_dot) ok_decimal = false;
        one_dot = true;
      } else if (!std::isdigit(static_cast<unsigned char>(d))) {
        all_digits = false;
        ok_decimal = false;
      }
    }
    if (all_digits && !one_dot) {
      e.kind = SExpr::Kind::Numeral;
    } else if (ok_decimal && one_dot && e.text.front() != '.' && e.text.back() != '.') {
      e.kind = SExpr::Kind::Decimal;
    } else {
      if (std::isdigit(static_cast<unsigned char>(e.text.front())))
        throw ParseError(e.line, e.column, "malformed numeral '" + e.text + "'");
      e.kind = SExpr::Kind::Symbol;
    }
    return e;
  }
};

}  // namespace

std::vector<SExpr> read_sexprs(std::string_view text) { return Reader(text).all(); }

}  // namespace ramsey
