#include "algebroid/expr_parse.hpp"

#include <cctype>

#include "algebroid/errors.hpp"

namespace algebroid {

namespace {

class Parser {
 public:
  Parser(const VarContext& ctx, std::string_view text, int line_offset)
      : ctx_(ctx), text_(text), line_(line_offset) {}

  Poly run() {
    Poly p = expr();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg, line_, col_ + 1);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 0;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      advance();
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Poly expr() {
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Poly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = factor();
    while (eat('*')) acc *= factor();
    return acc;
  }

  Poly factor() {
    Poly b = base();
    if (eat('^')) {
      unsigned long e = uint_literal("exponent");
      if (e > 64) fail("exponent too large");
      return b.pow(static_cast<unsigned>(e));
    }
    return b;
  }

  Poly base() {
    char c = peek();
    if (c == '(') {
      eat('(');
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return rational_literal();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return variable();
    if (c == '\0') fail("unexpected end of expression");
    fail(std::string("unexpected character '") + c + "'");
  }

  unsigned long uint_literal(const char* what) {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail(std::string("expected ") + what);
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits += text_[pos_];
      advance();
    }
    return std::stoul(digits);
  }

  Poly rational_literal() {
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits += text_[pos_];
      advance();
    }
    Rat value{mpz_class(digits)};
    if (eat('/')) {
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected denominator digits");
      std::string den;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        den += text_[pos_];
        advance();
      }
      mpz_class d(den);
      if (d == 0) fail("zero denominator in literal");
      value /= Rat(d);
    }
    return Poly(ctx_, value);
  }

  Poly variable() {
    std::string name;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        name += c;
        advance();
      } else {
        break;
      }
    }
    int idx = ctx_.index_of(name);
    if (idx < 0) fail("unknown variable '" + name + "'");
    return Poly::variable(ctx_, idx);
  }

  const VarContext& ctx_;
  std::string_view text_;
  size_t pos_ = 0;
  int line_;
  int col_ = 0;
};

}  // namespace

Poly parse_poly(const VarContext& ctx, std::string_view text, int line_offset) {
  return Parser(ctx, text, line_offset).run();
}

}  // namespace algebroid
