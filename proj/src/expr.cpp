#include "lsym/expr.hpp"

#include <algorithm>
#include <cctype>

namespace lsym {

namespace {

using K = Expr::Kind;
using QPoly = std::vector<mpq_class>;

constexpr int kMaxDepth = 200;

// ---- parser ----

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Expr parse() {
        if (s_.size() > kMaxExprBytes) throw ParseError(kMaxExprBytes, {}, "expression exceeds 64 KiB");
        Expr e = sum(0);
        skip();
        if (pos_ != s_.size()) error({"+", "-", "*", "/", "^", "end of input"});
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    [[noreturn]] void error(std::vector<std::string> expected) {
        std::string got = pos_ < s_.size() ? "'" + std::string(1, s_[pos_]) + "'" : "end of input";
        std::string msg = "unexpected " + got + " at offset " + std::to_string(pos_) + "; expected one of:";
        for (const auto& e : expected) msg += " " + e;
        throw ParseError(pos_, std::move(expected), msg);
    }
    void guard(int depth) {
        if (depth > kMaxDepth) throw ParseError(pos_, {}, "expression nested too deeply");
    }

    Expr sum(int depth) {
        guard(depth);
        Expr e = product(depth + 1);
        while (true) {
            char c = peek();
            if (c != '+' && c != '-') return e;
            ++pos_;
            e = Expr::binary(c == '+' ? K::add : K::sub, std::move(e), product(depth + 1));
        }
    }

    Expr product(int depth) {
        guard(depth);
        Expr e = unary(depth + 1);
        while (true) {
            char c = peek();
            if (c != '*' && c != '/') return e;
            ++pos_;
            e = Expr::binary(c == '*' ? K::mul : K::div, std::move(e), unary(depth + 1));
        }
    }

    Expr unary(int depth) {
        guard(depth);
        if (eat('-')) return Expr::unary(K::neg, unary(depth + 1));
        return term(depth + 1);
    }

    Expr term(int depth) {
        Expr base = factor(depth);
        if (!eat('^')) return base;
        bool negative = eat('-');
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) error({"integer exponent"});
        if (pos_ - start > 9) {
            pos_ = start;
            throw ParseError(start, {"integer exponent"}, "exponent too large at offset " + std::to_string(start));
        }
        long n = std::stol(std::string(s_.substr(start, pos_ - start)));
        return Expr::power(std::move(base), negative ? -n : n);
    }

    Expr factor(int depth) {
        guard(depth);
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            ++pos_;
            Expr e = sum(depth + 1);
            if (!eat(')')) error({")", "+", "-", "*", "/", "^"});
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string_view word = s_.substr(start, pos_ - start);
            if (word == "x") return Expr::var_x();
            if (word == "t") return Expr::var_t();
            if (word == "i") return Expr::number(1, true);
            if (word == "exp") {
                if (!eat('(')) error({"("});
                Expr arg = sum(depth + 1);
                if (!eat(')')) error({")", "+", "-", "*", "/", "^"});
                return Expr::unary(K::exp, std::move(arg));
            }
            pos_ = start;
        }
        error({"number", "x", "t", "i", "exp", "(", "-"});
    }

    Expr number() {
        std::size_t start = pos_;
        std::string digits;
        long scale = 0;
        bool dot = false;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                digits += c;
                if (dot) ++scale;
            } else if (c == '.' && !dot) {
                dot = true;
            } else {
                break;
            }
            ++pos_;
        }
        if (digits.empty()) {
            pos_ = start;
            error({"digit"});
        }
        mpq_class v(mpz_class(digits, 10), ipow(10, scale));
        v.canonicalize();
        bool imag = pos_ < s_.size() && s_[pos_] == 'i' &&
                    !(pos_ + 1 < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_ + 1])));
        if (imag) ++pos_;
        return Expr::number(v, imag);
    }
};

// ---- printer ----

std::string decimal(const mpq_class& v) {
    mpz_class den = v.get_den();
    long twos = 0, fives = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++twos;
    }
    while (den % 5 == 0) {
        den /= 5;
        ++fives;
    }
    if (den != 1) fail(ErrorKind::InvalidArgument, "number literal must be a finite decimal");
    long k = std::max(twos, fives);
    mpz_class scaled = mpz_class(v * mpq_class(ipow(10, k)));
    std::string s = scaled.get_str();
    if (k == 0) return s;
    if (static_cast<long>(s.size()) <= k) s.insert(0, static_cast<std::size_t>(k + 1 - static_cast<long>(s.size())), '0');
    s.insert(s.size() - static_cast<std::size_t>(k), ".");
    return s;
}

// binding strength: sum 1, product 2, unary 3, power 4, atom 5
int level(const Expr& e) {
    switch (e.kind) {
        case K::add:
        case K::sub: return 1;
        case K::mul:
        case K::div: return 2;
        case K::neg: return 3;
        case K::pow: return 4;
        default: return 5;
    }
}

std::string print_at(const Expr& e, int need) {
    std::string s;
    switch (e.kind) {
        case K::number: s = decimal(e.value) + (e.imaginary ? "i" : ""); break;
        case K::x: s = "x"; break;
        case K::t: s = "t"; break;
        case K::neg: s = "-" + print_at(e.args[0], 3); break;
        case K::add: s = print_at(e.args[0], 1) + "+" + print_at(e.args[1], 2); break;
        case K::sub: s = print_at(e.args[0], 1) + "-" + print_at(e.args[1], 2); break;
        case K::mul: s = print_at(e.args[0], 2) + "*" + print_at(e.args[1], 3); break;
        case K::div: s = print_at(e.args[0], 2) + "/" + print_at(e.args[1], 3); break;
        case K::pow: s = print_at(e.args[0], 5) + "^" + std::to_string(e.exponent); break;
        case K::exp: s = "exp(" + print_at(e.args[0], 0) + ")"; break;
    }
    return level(e) < need ? "(" + s + ")" : s;
}

// ---- exact rational functions ----

QPoly trim(QPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

QPoly pmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return trim(r);
}

QPoly padd(const QPoly& a, const QPoly& b, int sign = 1) {
    QPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += sign * b[i];
    return trim(r);
}

// remainder of a by b (b nonzero)
QPoly prem(QPoly a, const QPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class f = a.back() / b.back();
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        a.pop_back();
        a = trim(a);
    }
    return a;
}

QPoly pdiv(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) return {};
    QPoly q(a.size() - b.size() + 1, 0);
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class f = a.back() / b.back();
        std::size_t off = a.size() - b.size();
        q[off] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        a.pop_back();
        a = trim(a);
    }
    return trim(q);
}

QPoly pgcd(QPoly a, QPoly b) {
    while (!b.empty()) {
        QPoly r = prem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

struct RatFn {
    QPoly num{1}, den{1};
};

RatFn reduce(RatFn r) {
    if (r.num.empty()) return {QPoly{}, QPoly{1}};
    QPoly g = pgcd(r.num, r.den);
    if (g.size() > 1) {
        r.num = pdiv(r.num, g);
        r.den = pdiv(r.den, g);
    }
    mpq_class lead = r.den.back();
    for (auto& c : r.num) c /= lead;
    for (auto& c : r.den) c /= lead;
    return r;
}

// k * num/den * exp(qn/qd): k carries imaginary constants
struct UnitVal {
    Scalar k;
    RatFn rat;
    RatFn q{QPoly{}, QPoly{1}};
};

bool is_one(const Scalar& s) { return s == Scalar::one(s.field()); }

[[noreturn]] void unsupported(const std::string& what) { fail(ErrorKind::InvalidArgument, what); }

UnitVal unit_val(const Expr& e, const Field& F) {
    switch (e.kind) {
        case K::number:
            if (e.imaginary) {
                if (F.kind != Field::Kind::complex) fail(ErrorKind::FieldMismatch, "imaginary literal needs the complex field");
                return {Scalar::complex(cplx(0.0, e.value.get_d())), {}, {QPoly{}, QPoly{1}}};
            }
            return {Scalar::one(F), {QPoly{e.value}, QPoly{1}}, {QPoly{}, QPoly{1}}};
        case K::x: return {Scalar::one(F), {QPoly{0, 1}, QPoly{1}}, {QPoly{}, QPoly{1}}};
        case K::t: unsupported("units are written in x; t is the series variable");
        case K::neg: {
            UnitVal a = unit_val(e.args[0], F);
            for (auto& c : a.rat.num) c = -c;
            return a;
        }
        case K::add:
        case K::sub: {
            UnitVal a = unit_val(e.args[0], F), b = unit_val(e.args[1], F);
            if (!a.q.num.empty() || !b.q.num.empty()) unsupported("sums of exponential factors are not units of the supported form");
            if (!is_one(a.k) || !is_one(b.k)) unsupported("imaginary constants may only multiply the whole unit");
            int sign = e.kind == K::add ? 1 : -1;
            RatFn r{padd(pmul(a.rat.num, b.rat.den), pmul(b.rat.num, a.rat.den), sign), pmul(a.rat.den, b.rat.den)};
            return {a.k, reduce(r), a.q};
        }
        case K::mul:
        case K::div: {
            UnitVal a = unit_val(e.args[0], F), b = unit_val(e.args[1], F);
            bool div = e.kind == K::div;
            if (div && b.rat.num.empty()) fail(ErrorKind::DivideByZero, "division by zero");
            RatFn r = div ? RatFn{pmul(a.rat.num, b.rat.den), pmul(a.rat.den, b.rat.num)}
                          : RatFn{pmul(a.rat.num, b.rat.num), pmul(a.rat.den, b.rat.den)};
            RatFn q{padd(pmul(a.q.num, b.q.den), pmul(b.q.num, a.q.den), div ? -1 : 1), pmul(a.q.den, b.q.den)};
            return {div ? a.k / b.k : a.k * b.k, reduce(r), reduce(q)};
        }
        case K::pow: {
            UnitVal a = unit_val(e.args[0], F);
            long n = e.exponent;
            if (n < 0 && a.rat.num.empty()) fail(ErrorKind::DivideByZero, "negative power of zero");
            RatFn base = n >= 0 ? a.rat : RatFn{a.rat.den, a.rat.num};
            RatFn r;
            for (long i = 0; i < std::labs(n); ++i) r = {pmul(r.num, base.num), pmul(r.den, base.den)};
            RatFn q = a.q;
            for (auto& c : q.num) c *= n;
            return {pow(a.k, n), reduce(r), reduce(q)};
        }
        case K::exp: {
            UnitVal a = unit_val(e.args[0], F);
            if (!a.q.num.empty() || !is_one(a.k)) unsupported("exp takes a rational function of x");
            return {Scalar::one(F), {}, a.rat};
        }
    }
    unsupported("bad expression");
}

}  // namespace

Expr Expr::number(const mpq_class& v, bool imaginary) {
    Expr e;
    e.value = v;
    e.imaginary = imaginary;
    return e;
}

Expr Expr::var_x() {
    Expr e;
    e.kind = K::x;
    return e;
}

Expr Expr::var_t() {
    Expr e;
    e.kind = K::t;
    return e;
}

Expr Expr::unary(Kind k, Expr a) {
    Expr e;
    e.kind = k;
    e.args.push_back(std::move(a));
    return e;
}

Expr Expr::binary(Kind k, Expr a, Expr b) {
    Expr e;
    e.kind = k;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
}

Expr Expr::power(Expr base, long n) {
    Expr e = unary(K::pow, std::move(base));
    e.exponent = n;
    return e;
}

bool Expr::operator==(const Expr& o) const {
    return kind == o.kind && value == o.value && imaginary == o.imaginary && exponent == o.exponent && args == o.args;
}

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
    : Error(ErrorKind::ParseError, what), offset_(offset), expected_(std::move(expected)) {}

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string print_expr(const Expr& e) { return print_at(e, 0); }

bool mentions(const Expr& e, Expr::Kind var) {
    if (e.kind == var) return true;
    return std::any_of(e.args.begin(), e.args.end(), [&](const Expr& a) { return mentions(a, var); });
}

cplx eval_expr(const Expr& e, cplx z) {
    switch (e.kind) {
        case K::number: return e.imaginary ? cplx(0.0, e.value.get_d()) : cplx(e.value.get_d());
        case K::x:
        case K::t: return z;
        case K::neg: return -eval_expr(e.args[0], z);
        case K::add: return eval_expr(e.args[0], z) + eval_expr(e.args[1], z);
        case K::sub: return eval_expr(e.args[0], z) - eval_expr(e.args[1], z);
        case K::mul: return eval_expr(e.args[0], z) * eval_expr(e.args[1], z);
        case K::div: return eval_expr(e.args[0], z) / eval_expr(e.args[1], z);
        case K::pow: return std::pow(eval_expr(e.args[0], z), static_cast<double>(e.exponent));
        case K::exp: return std::exp(eval_expr(e.args[0], z));
    }
    return 0.0;
}

AnalyticUnit to_unit(const Expr& e, const Field& field) {
    UnitVal v = unit_val(e, field);
    if (v.rat.num.empty()) fail(ErrorKind::InvalidArgument, "the zero function is not a unit");
    AnalyticUnit u;
    u.constant = v.k * Scalar::from_rational(field, v.rat.num.back() / v.rat.den.back());
    for (const auto& [r, m] : rational_roots(v.rat.num)) u.factors.push_back({Scalar::from_rational(field, r), m});
    for (const auto& [r, m] : rational_roots(v.rat.den)) u.factors.push_back({Scalar::from_rational(field, r), -m});
    std::sort(u.factors.begin(), u.factors.end(),
              [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
    if (!v.q.num.empty()) {
        u.exp_num = v.q.num;
        u.exp_den = v.q.den;
    }
    u.validate();
    return u;
}

LaurentSeries to_series(const Expr& e, const Field& F, long window) {
    SeriesOpts o;
    o.window = window;
    switch (e.kind) {
        case K::number:
        case K::x:
            if (e.kind == K::x) unsupported("series are written in t; x is the unit variable");
            return LaurentSeries::constant(to_scalar(e, F));
        case K::t: return LaurentSeries::monomial(Scalar::one(F), 1);
        case K::neg: return series_neg(to_series(e.args[0], F, window));
        case K::add: return series_add(to_series(e.args[0], F, window), to_series(e.args[1], F, window));
        case K::sub: return series_sub(to_series(e.args[0], F, window), to_series(e.args[1], F, window));
        case K::mul: return series_mul(to_series(e.args[0], F, window), to_series(e.args[1], F, window));
        case K::div: {
            LaurentSeries b = to_series(e.args[1], F, window);
            if (b.is_zero()) fail(ErrorKind::DivideByZero, "division by zero");
            return series_mul(to_series(e.args[0], F, window), series_inverse(b, o));
        }
        case K::pow: {
            LaurentSeries base = to_series(e.args[0], F, window);
            if (e.exponent < 0) {
                if (base.is_zero()) fail(ErrorKind::DivideByZero, "negative power of zero");
                base = series_inverse(base, o);
            }
            LaurentSeries r = LaurentSeries::constant(Scalar::one(F));
            for (long i = 0; i < std::labs(e.exponent); ++i) r = series_mul(r, base);
            return r;
        }
        case K::exp: return series_exp(to_series(e.args[0], F, window), o);
    }
    unsupported("bad expression");
}

Scalar to_scalar(const Expr& e, const Field& field) {
    if (mentions(e, K::x) || mentions(e, K::t) || mentions(e, K::exp))
        fail(ErrorKind::InvalidArgument, "expected a constant, got '" + print_expr(e) + "'");
    UnitVal v = unit_val(e, field);
    if (v.rat.num.empty()) return Scalar::zero(field);
    return v.k * Scalar::from_rational(field, v.rat.num[0] / v.rat.den[0]);
}

PointOnLine parse_point(std::string_view text, const Field& field) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s == "inf" || s == "infinity") return PointOnLine::infinity();
    return PointOnLine::finite(to_scalar(parse_expr(text), field));
}

}  // namespace lsym
