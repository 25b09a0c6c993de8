#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "schwarz/ratfunc.hpp"

namespace schwarz {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, size_t position)
      : std::invalid_argument("column " + std::to_string(position + 1) + ": " + what), position_(position) {}
  size_t position() const { return position_; }

 private:
  size_t position_;
};

using Bindings = std::map<std::string, RatFunc, std::less<>>;

// Rational expressions: integer literals, names bound in `vars` (x is the
// variable unless rebound), + - * / and ^ with an integer exponent,
// parentheses. "a/b*x" parses as (a/b)*x.
RatFunc parse_expression(std::string_view text, const Bindings& vars);
RatFunc parse_expression(std::string_view text);  // only x
// Constant expression; throws ParseError if the value depends on x.
Rational parse_constant(std::string_view text, const Bindings& vars = {});

}  // namespace schwarz
