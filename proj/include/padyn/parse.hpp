#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>

#include "padyn/padic.hpp"
#include "padyn/poly.hpp"
#include "padyn/quad.hpp"

namespace padyn {

/// Parsed arithmetic expression. Grammar (implicit multiplication allowed):
///
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := power (['*'|'/'] power)*
///   power  := atom ['^' ['-'] integer]
///   atom   := integer | name | 'sqrt' '(' ['-'] integer ['/' integer] ')' | '(' expr ')'
///
/// Names: x / X (the variable), c (symbolic parameter), i (sqrt(-1)),
/// pi (uniformizer), t (unramified generator).
struct Expr {
    enum class Kind { Number, Var, Param, Sqrt, Imag, Pi, Gen, Add, Sub, Mul, Div, Neg, Pow };
    Kind kind = Kind::Number;
    mpq_class number;  // Number; radicand for Sqrt
    long exponent = 0;
    std::shared_ptr<const Expr> lhs, rhs;
};
using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr parse_expression(const std::string& text);

/// Quadratic-field polynomial in x. A symbolic `c` is replaced by `c_value`
/// when given and rejected otherwise.
Poly<QuadElement> parse_quad_poly(const std::string& text, const std::optional<QuadElement>& c_value = {});

/// Polynomial in x whose coefficients are rational polynomials in c.
using SymbolicPoly = Poly<Poly<mpq_class>>;
SymbolicPoly parse_symbolic_poly(const std::string& text);

/// A constant of Q or Q(sqrt(D)), e.g. "-71/48", "(1+sqrt(5))/2", "2i".
QuadElement parse_quad(const std::string& text);

/// An element of F, either in the printed digit form
/// "d0 + d1*pi + ... (mod pi^N)" or as an expression in integers,
/// rationals, sqrt(D), i, pi and t.
PadicElement parse_padic(const FieldDescriptor& F, const std::string& text);

/// sqrt(q) as an element of Q(sqrt(D)) with D squarefree: s*sqrt(D).
QuadElement quad_sqrt_of_rational(const mpq_class& q);

}  // namespace padyn
