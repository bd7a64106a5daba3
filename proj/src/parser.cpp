#include "webgeom/parser.hpp"

#include <algorithm>
#include <cctype>

#include "webgeom/errors.hpp"

namespace webgeom {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>* allowed) : s_(text), allowed_(allowed) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ < s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }

  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  mpz_class integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  Expr expr() {
    Expr e = term();
    while (true) {
      if (accept('+'))
        e = e + term();
      else if (accept('-'))
        e = e - term();
      else
        return e;
    }
  }

  Expr term() {
    Expr e = factor();
    while (true) {
      if (accept('*')) {
        e = e * factor();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Expr d = factor();
        if (d.is_zero()) fail_at("division by zero", at);
        e = e / d;
      } else {
        return e;
      }
    }
  }

  Expr factor() {
    if (accept('-')) return -factor();
    Expr b = base();
    if (accept('^')) {
      std::size_t at = pos_;
      mpz_class n = integer();
      if (!n.fits_sint_p()) fail_at("exponent too large", at);
      int e = static_cast<int>(n.get_si());
      if (b.is_zero() && e == 0) return Expr(1);
      return pow(b, e);
    }
    return b;
  }

  Expr base() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      // integer '/' integer binds as a single rational literal
      std::size_t save = pos_;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        std::size_t slash = pos_;
        ++pos_;
        skip_ws();
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          mpz_class den = integer();
          if (den == 0) fail_at("division by zero", slash);
          mpq_class q(num, den);
          q.canonicalize();
          return Expr(q);
        }
      }
      pos_ = save;
      return Expr(mpq_class(num));
    }
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "sqrt" || name == "ln" || name == "atan") {
        expect('(');
        Expr a = expr();
        expect(')');
        if (name == "sqrt") return sqrt(a);
        if (name == "ln") return ln(a);
        return atan(a);
      }
      if (allowed_ && std::find(allowed_->begin(), allowed_->end(), name) == allowed_->end())
        fail_at("unknown variable '" + name + "'", start);
      return Expr::variable(name);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const std::vector<std::string>* allowed_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view text, const std::vector<std::string>* allowed) {
  Parser p(text, allowed);
  return p.parse();
}

}  // namespace webgeom
