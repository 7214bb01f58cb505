#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lsym/curves.hpp"

namespace lsym {

/// Expression tree for units in x and series in t.
struct Expr {
    enum class Kind { number, x, t, neg, add, sub, mul, div, pow, exp };

    Kind kind = Kind::number;
    /// number: nonnegative literal value, times i when imaginary.
    mpq_class value = 0;
    bool imaginary = false;
    /// pow: integer exponent.
    long exponent = 0;
    std::vector<Expr> args;

    static Expr number(const mpq_class& v, bool imaginary = false);
    static Expr var_x();
    static Expr var_t();
    static Expr unary(Kind k, Expr a);
    static Expr binary(Kind k, Expr a, Expr b);
    static Expr power(Expr base, long n);

    bool operator==(const Expr& o) const;
};

/// Parse failure with the byte offset and the tokens that would have been accepted.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what);
    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

constexpr std::size_t kMaxExprBytes = 64 * 1024;

/// expr := sum; sum := product (('+'|'-') product)*; product := unary (('*'|'/') unary)*;
/// unary := '-' unary | term; term := factor ('^' ['-'] int)?;
/// factor := number | number 'i' | 'i' | 'x' | 't' | 'exp' '(' expr ')' | '(' expr ')'.
/// Numbers are integers or decimals and are read exactly.
Expr parse_expr(std::string_view text);

/// Canonical text with minimal parentheses; parse_expr(print_expr(e)) == e.
std::string print_expr(const Expr& e);

bool mentions(const Expr& e, Expr::Kind var);

/// Value at a complex point, substituting z for both x and t.
cplx eval_expr(const Expr& e, cplx z);

/// Normal form c prod (x - a)^m exp(q) over the field; polynomials must split over Q.
AnalyticUnit to_unit(const Expr& e, const Field& field);

/// Laurent series in t over the field; quotients and exponentials are expanded on the window.
LaurentSeries to_series(const Expr& e, const Field& field, long window);

/// A constant expression (no variables, no exp) as a field element.
Scalar to_scalar(const Expr& e, const Field& field);

/// "inf" or a constant expression.
PointOnLine parse_point(std::string_view text, const Field& field);

}  // namespace lsym
