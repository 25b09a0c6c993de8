#include "schwarz/expr.hpp"

#include <cctype>

namespace schwarz {

namespace {

class Parser {
 public:
  Parser(std::string_view s, const Bindings& vars) : s_(s), vars_(vars) {}

  RatFunc run() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc r = term();
    for (;;) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }

  RatFunc term() {
    RatFunc r = unary();
    for (;;) {
      if (eat('*')) {
        r *= unary();
      } else if (eat('/')) {
        size_t at = pos_;
        RatFunc d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        r /= d;
      } else {
        return r;
      }
    }
  }

  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  RatFunc power() {
    RatFunc base = primary();
    if (!eat('^')) return base;
    skip();
    size_t at = pos_;
    bool neg = eat('-');
    if (!neg) eat('+');
    skip();
    if (eat('(')) {
      bool neg2 = eat('-');
      long e = integer();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return raise(base, (neg != neg2) ? -e : e, at);
    }
    long e = integer();
    return raise(base, neg ? -e : e, at);
  }

  RatFunc raise(const RatFunc& b, long e, size_t at) {
    if (e < 0 && b.is_zero()) throw ParseError("negative power of zero", at);
    return b.pow(e);
  }

  long integer() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected an integer exponent", start);
    if (pos_ - start > 6) throw ParseError("exponent too large", start);
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  RatFunc primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatFunc(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      auto it = vars_.find(name);
      if (it == vars_.end()) throw ParseError("unknown name '" + std::string(name) + "'", start);
      skip();
      if (pos_ < s_.size() && s_[pos_] == '(') throw ParseError("function calls are not supported", pos_);
      return it->second;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view s_;
  const Bindings& vars_;
  size_t pos_ = 0;
};

}  // namespace

RatFunc parse_expression(std::string_view text, const Bindings& vars) {
  if (vars.find("x") == vars.end()) {
    Bindings with_x = vars;
    with_x.emplace("x", RatFunc::x());
    return Parser(text, with_x).run();
  }
  return Parser(text, vars).run();
}

RatFunc parse_expression(std::string_view text) { return parse_expression(text, Bindings{}); }

Rational parse_constant(std::string_view text, const Bindings& vars) {
  RatFunc r = parse_expression(text, vars);
  if (!r.is_constant()) throw ParseError("expected a constant, got " + r.str(), 0);
  return r.constant_value();
}

}  // namespace schwarz
