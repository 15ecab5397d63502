#ifndef SOLIDSUM_EXPRESSION_HPP
#define SOLIDSUM_EXPRESSION_HPP

#include <string_view>

namespace solidsum {

/**
 * Evaluates a coordinate written as a decimal, "a/b", "sqrt(k)" or any
 * combination with + - * / and parentheses, e.g. "-sqrt(3)/2".
 * Throws ParseError.
 */
double parse_real_expression(std::string_view text);

}  // namespace solidsum

#endif
