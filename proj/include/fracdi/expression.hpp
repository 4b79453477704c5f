#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fracdi/function.hpp"

namespace fracdi {

enum class ExprKind { Number, Var, Add, Sub, Mul, Div, Pow, Neg, Exp };

struct ExprNode;
using Expression = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprKind kind;
    cplx number{0.0};           // Number only
    std::vector<Expression> args;  // 0, 1 or 2 children
};

/// Recursive descent over
///   expr := term (('+'|'-') term)*     term := factor (('*'|'/') factor)*
///   factor := base ('^' factor)?       base := number | x | exp(expr) | (expr) | -base
/// Throws SyntaxError with the byte offset and the expected token set.
Expression parse_expression(const std::string& text);

/// Fully parenthesized form; parse(print(e)) reproduces e.
std::string print_expression(const Expression& e);

cplx evaluate(const Expression& e, cplx x);

bool structurally_equal(const Expression& a, const Expression& b);

RealFunction from_expression(const std::string& text);

}  // namespace fracdi
