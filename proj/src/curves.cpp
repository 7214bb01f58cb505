#include "lsym/curves.hpp"

#include <algorithm>
#include <cmath>

namespace lsym {

namespace {

using K = Field::Kind;
using QPoly = std::vector<mpq_class>;

QPoly trimmed(QPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

long degree(const QPoly& p) { return static_cast<long>(trimmed(p).size()) - 1; }

QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return trimmed(r);
}

QPoly poly_add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return trimmed(r);
}

// p(x + a) by repeated synthetic division.
template <class T>
std::vector<T> taylor_shift(std::vector<T> p, const T& a) {
    const std::size_t n = p.size();
    for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t j = n - 1; j > k; --j) p[j - 1] += a * p[j];
    return p;
}

// Exact division by (x - r); returns false if r is not a root.
bool divide_root(QPoly& p, const mpq_class& r) {
    const std::size_t n = p.size();
    if (n < 2) return false;
    QPoly q(n - 1, 0);
    mpq_class carry = 0;
    for (std::size_t j = n - 1; j >= 1; --j) {
        carry = p[j] + carry * r;
        q[j - 1] = carry;
    }
    if (p[0] + carry * r != 0) return false;
    p = q;
    return true;
}

std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    if (n > mpz_class("4611686018427387904"))
        fail(ErrorKind::NotSplit, "coefficients too large for rational root search");
    std::vector<mpz_class> d;
    for (mpz_class i = 1; i * i <= n; ++i)
        if (n % i == 0) {
            d.push_back(i);
            if (i * i != n) d.push_back(n / i);
        }
    return d;
}

Scalar lift(const Field& F, const mpq_class& q) { return Scalar::from_rational(F, q); }

LaurentSeries to_field(const LaurentSeries& s, const Field& F) {
    std::vector<Scalar> cs;
    for (const auto& c : s.coeffs()) cs.push_back(lift(F, c.as_rational()));
    return LaurentSeries(F, s.lo(), cs, s.lo_exact(), s.hi_exact());
}

LaurentSeries to_complex_series(const LaurentSeries& s) {
    if (s.field().kind == K::complex) return s;
    std::vector<Scalar> cs;
    for (const auto& c : s.coeffs()) cs.push_back(Scalar::complex(c.to_complex()));
    return LaurentSeries(Field::complex(), s.lo(), cs, s.lo_exact(), s.hi_exact());
}

// (1 + d t)^m: a polynomial for m >= 0, a binomial series on the window otherwise.
LaurentSeries binomial_series(const Scalar& d, long m, long W) {
    const Field& F = d.field();
    long top = m >= 0 ? m : W;
    std::vector<Scalar> cs;
    mpq_class binom = 1;
    Scalar dk = Scalar::one(F);
    for (long k = 0; k <= top; ++k) {
        cs.push_back(lift(F, binom) * dk);
        binom = binom * mpq_class(m - k) / mpq_class(k + 1);
        dk = dk * d;
    }
    return LaurentSeries(F, 0, cs, true, m >= 0);
}

std::optional<mpq_class> matching_pole(const AnalyticUnit& u, const Scalar& a) {
    for (const auto& [r, k] : rational_roots(u.exp_den))
        if (lift(u.field(), r) == a) return r;
    return std::nullopt;
}

LaurentSeries rational_quotient(const QPoly& num, const QPoly& den, long shift, long W) {
    const Field Q = Field::rational();
    SeriesOpts o;
    o.window = W;
    auto n = LaurentSeries::from_rationals(Q, 0, num.empty() ? QPoly{0} : num);
    auto d = LaurentSeries::from_rationals(Q, 0, den);
    return series_mul(n, series_inverse(d, o)).shift(shift);
}

// Laurent expansion of the exponent q at s, in the local parameter.
LaurentSeries exponent_expansion(const AnalyticUnit& u, const PointOnLine& s, long W) {
    const Field& F = u.field();
    QPoly N = trimmed(u.exp_num), D = trimmed(u.exp_den);
    if (s.infinite) {
        // q(1/t) = t^{dD - dN} rev(N)(t) / rev(D)(t)
        QPoly rn(N.rbegin(), N.rend()), rd(D.rbegin(), D.rend());
        return to_field(rational_quotient(rn, rd, degree(D) - degree(N), W), F);
    }
    if (auto r = matching_pole(u, s.a)) {
        QPoly n2 = taylor_shift(N, *r), d2 = taylor_shift(D, *r);
        long k = 0;
        while (k < static_cast<long>(d2.size()) && d2[static_cast<std::size_t>(k)] == 0) ++k;
        QPoly dr(d2.begin() + k, d2.end());
        return to_field(rational_quotient(n2, dr, -k, W), F);
    }
    if (F.kind == K::complex && s.a.field().kind == K::complex) {
        std::vector<Scalar> n2, d2;
        for (const auto& c : N) n2.push_back(lift(F, c));
        for (const auto& c : D) d2.push_back(lift(F, c));
        n2 = taylor_shift(n2, s.a);
        d2 = taylor_shift(d2, s.a);
        SeriesOpts o;
        o.window = W;
        LaurentSeries num = n2.empty() ? LaurentSeries::zero(F) : LaurentSeries(F, 0, n2, true, true);
        return series_mul(num, series_inverse(LaurentSeries(F, 0, d2, true, true), o));
    }
    fail(ErrorKind::FieldMismatch, "exponential factors need the complex field");
}

cplx eval_q(const QPoly& p, cplx x) {
    cplx r = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + it->get_d();
    return r;
}

QPoly poly_derivative(const QPoly& p) {
    QPoly r;
    for (std::size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * static_cast<long>(i));
    return r;
}

long order_at(const AnalyticUnit& u, const PointOnLine& s) {
    long n = 0;
    for (const auto& [r, m] : u.factors) {
        if (s.infinite) n -= m;
        else if (r == s.a) n += m;
    }
    return n;
}

}  // namespace

std::string PointOnLine::to_string() const { return infinite ? "inf" : a.to_string(); }

bool AnalyticUnit::has_exp() const { return !trimmed(exp_num).empty(); }

void AnalyticUnit::validate() const {
    if (constant.is_zero()) fail(ErrorKind::InvalidArgument, "unit constant must be nonzero");
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (!(factors[i].first.field() == field())) fail(ErrorKind::FieldMismatch, "factor root in another field");
        if (factors[i].second == 0) fail(ErrorKind::InvalidArgument, "factor multiplicity must be nonzero");
        for (std::size_t j = 0; j < i; ++j)
            if (factors[i].first == factors[j].first)
                fail(ErrorKind::InvalidArgument, "repeated root " + factors[i].first.to_string());
    }
    if (trimmed(exp_den).empty()) fail(ErrorKind::InvalidArgument, "exponent denominator is zero");
    if (has_exp()) {
        if (field().kind != K::complex)
            fail(ErrorKind::FieldMismatch, "exponential factors are only supported over the complex field");
        rational_roots(exp_den);
    }
}

AnalyticUnit AnalyticUnit::constant_unit(const Scalar& c) { return {c, {}, {}, {1}}; }

AnalyticUnit AnalyticUnit::linear(const Scalar& a) { return {Scalar::one(a.field()), {{a, 1}}, {}, {1}}; }

AnalyticUnit AnalyticUnit::mul(const AnalyticUnit& a, const AnalyticUnit& b) {
    if (!(a.field() == b.field())) fail(ErrorKind::FieldMismatch, "units over different fields");
    AnalyticUnit r;
    r.constant = a.constant * b.constant;
    r.factors = a.factors;
    for (const auto& [root, m] : b.factors) {
        auto it = std::find_if(r.factors.begin(), r.factors.end(), [&](const auto& f) { return f.first == root; });
        if (it == r.factors.end()) r.factors.push_back({root, m});
        else it->second += m;
    }
    std::erase_if(r.factors, [](const auto& f) { return f.second == 0; });
    if (!a.has_exp()) {
        r.exp_num = b.exp_num;
        r.exp_den = b.exp_den;
    } else if (!b.has_exp()) {
        r.exp_num = a.exp_num;
        r.exp_den = a.exp_den;
    } else if (trimmed(a.exp_den) == trimmed(b.exp_den)) {
        r.exp_num = poly_add(a.exp_num, b.exp_num);
        r.exp_den = trimmed(a.exp_den);
    } else {
        r.exp_num = poly_add(poly_mul(a.exp_num, b.exp_den), poly_mul(b.exp_num, a.exp_den));
        r.exp_den = poly_mul(a.exp_den, b.exp_den);
    }
    if (r.exp_num.empty()) r.exp_den = {1};
    return r;
}

AnalyticUnit AnalyticUnit::inverse(const AnalyticUnit& a) {
    AnalyticUnit r = a;
    r.constant = lsym::inverse(a.constant);
    for (auto& f : r.factors) f.second = -f.second;
    for (auto& c : r.exp_num) c = -c;
    return r;
}

std::vector<std::pair<mpq_class, long>> rational_roots(const std::vector<mpq_class>& poly) {
    QPoly p = trimmed(poly);
    if (p.empty()) fail(ErrorKind::InvalidArgument, "the zero polynomial has no root factorization");
    std::vector<std::pair<mpq_class, long>> roots;
    long zeros = 0;
    while (p.size() > 1 && p[0] == 0) {
        p.erase(p.begin());
        ++zeros;
    }
    if (zeros > 0) roots.push_back({0, zeros});
    if (p.size() > 1) {
        mpz_class den = 1;
        for (const auto& c : p) den = lcm(den, mpz_class(c.get_den()));
        std::vector<mpz_class> ints;
        for (const auto& c : p) ints.push_back(mpz_class(c * den));
        for (const auto& num : divisors(ints.front()))
            for (const auto& dd : divisors(ints.back()))
                for (int sgn : {1, -1}) {
                    mpq_class r(num * sgn, dd);
                    r.canonicalize();
                    if (std::any_of(roots.begin(), roots.end(), [&](const auto& x) { return x.first == r; })) continue;
                    long m = 0;
                    while (divide_root(p, r)) ++m;
                    if (m > 0) roots.push_back({r, m});
                }
    }
    if (p.size() > 1)
        fail(ErrorKind::NotSplit, "polynomial has a factor of degree " + std::to_string(p.size() - 1) +
                                      " without rational roots");
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return roots;
}

AnalyticUnit translate(const AnalyticUnit& u, const mpq_class& a) {
    AnalyticUnit r = u;
    Scalar sa = lift(u.field(), a);
    for (auto& f : r.factors) f.first = f.first - sa;
    if (u.has_exp()) {
        r.exp_num = trimmed(taylor_shift(trimmed(u.exp_num), a));
        r.exp_den = trimmed(taylor_shift(trimmed(u.exp_den), a));
    }
    return r;
}

BirkhoffFactorization local_factorization(const AnalyticUnit& u, const PointOnLine& s, long W) {
    u.validate();
    const Field& F = u.field();
    BirkhoffFactorization r{u.constant, 0, LaurentSeries::constant(Scalar::one(F)),
                            LaurentSeries::constant(Scalar::one(F))};
    bool seen = false;
    for (const auto& [root, m] : u.factors) {
        if (s.infinite) {
            // (1/t - root)^m = t^{-m} (1 - root t)^m
            r.n -= m;
            if (!root.is_zero()) r.g = series_mul(r.g, binomial_series(-root, m, W));
        } else if (root == s.a) {
            if (seen) fail(ErrorKind::RootAtExpansionPoint, "two factors vanish at " + s.to_string());
            seen = true;
            r.n += m;
        } else {
            Scalar d = s.a - root;
            r.c = r.c * pow(d, m);
            r.g = series_mul(r.g, binomial_series(inverse(d), m, W));
        }
    }
    if (u.has_exp()) {
        LaurentSeries q = exponent_expansion(u, s, W);
        SplitPair sp = plus_minus_split(q);
        SeriesOpts o;
        o.window = W;
        if (q.known(0) && !q.coeff(0).is_zero()) r.c = r.c * scalar_exp(q.coeff(0));
        LaurentSeries plus = sp.plus;
        if (!plus.is_zero() && plus.lo() <= 0) {
            std::vector<Scalar> cs = plus.coeffs();
            cs[static_cast<std::size_t>(-plus.lo())] = Scalar::zero(F);
            plus = LaurentSeries(F, plus.lo(), cs, true, plus.hi_exact());
        }
        r.g = series_mul(r.g, series_exp(plus, o));
        r.h = series_exp(sp.minus, o);
    }
    return r;
}

LaurentSeries local_expansion(const AnalyticUnit& u, const PointOnLine& s, long window) {
    if (window < 1) fail(ErrorKind::InvalidArgument, "window must be >= 1");
    return recompose(local_factorization(u, s, window), window);
}

ContourFn local_contour_fn(const AnalyticUnit& u, const PointOnLine& s) {
    u.validate();
    if (u.field().kind != K::complex) fail(ErrorKind::FieldMismatch, "contour evaluation needs the complex field");
    cplx c = u.constant.to_complex();
    std::vector<std::pair<cplx, long>> fs;
    for (const auto& [r, m] : u.factors) fs.push_back({r.to_complex(), m});
    QPoly N = trimmed(u.exp_num), D = trimmed(u.exp_den);
    QPoly dN = poly_derivative(N), dD = poly_derivative(D);
    bool inf = s.infinite;
    cplx a = inf ? cplx(0.0) : s.a.to_complex();
    auto x_of = [=](cplx t) { return inf ? 1.0 / t : a + t; };
    auto value = [=](cplx t) {
        cplx x = x_of(t), v = c;
        for (const auto& [r, m] : fs) v *= std::pow(x - r, static_cast<double>(m));
        if (!N.empty()) v *= std::exp(eval_q(N, x) / eval_q(D, x));
        return v;
    };
    auto derivative = [=](cplx t) {
        cplx x = x_of(t);
        cplx dlog = 0.0;
        for (const auto& [r, m] : fs) dlog += static_cast<double>(m) / (x - r);
        if (!N.empty()) {
            cplx d = eval_q(D, x);
            dlog += (eval_q(dN, x) * d - eval_q(N, x) * eval_q(dD, x)) / (d * d);
        }
        cplx dxdt = inf ? -1.0 / (t * t) : cplx(1.0);
        return value(t) * dlog * dxdt;
    };
    return {value, derivative};
}

std::vector<PointOnLine> support(const AnalyticUnit& f, const AnalyticUnit& g) {
    std::vector<Scalar> pts;
    auto add = [&](const Scalar& a) {
        if (std::none_of(pts.begin(), pts.end(), [&](const Scalar& b) { return a == b; })) pts.push_back(a);
    };
    for (const auto* u : {&f, &g}) {
        for (const auto& fac : u->factors) add(fac.first);
        if (u->has_exp())
            for (const auto& [r, k] : rational_roots(u->exp_den)) add(lift(u->field(), r));
    }
    std::sort(pts.begin(), pts.end(), canonical_less);
    std::vector<PointOnLine> out;
    for (const auto& a : pts) out.push_back(PointOnLine::finite(a));
    out.push_back(PointOnLine::infinity());
    return out;
}

double local_radius(const std::vector<PointOnLine>& points, const PointOnLine& s) {
    double best = INFINITY;
    if (s.infinite) {
        double far = 0.0;
        for (const auto& p : points)
            if (!p.infinite) far = std::max(far, std::abs(p.a.to_complex()));
        // close to the nearest finite point keeps exponential factors within double range
        return far > 0.0 ? 0.8 / far : 1.0;
    }
    for (const auto& p : points)
        if (!p.infinite && !(p.a == s.a)) best = std::min(best, std::abs(p.a.to_complex() - s.a.to_complex()));
    return std::isfinite(best) ? 0.5 * best : 1.0;
}

SymbolMethod parse_symbol_method(const std::string& name) {
    if (name == "tame") return SymbolMethod::tame;
    if (name == "plus") return SymbolMethod::plus;
    if (name == "minus") return SymbolMethod::minus;
    if (name == "contour") return SymbolMethod::contour;
    if (name == "oracle") return SymbolMethod::oracle;
    fail(ErrorKind::InvalidArgument, "unknown symbol method '" + name + "'");
}

const char* symbol_method_name(SymbolMethod m) {
    switch (m) {
        case SymbolMethod::tame: return "tame";
        case SymbolMethod::plus: return "plus";
        case SymbolMethod::minus: return "minus";
        case SymbolMethod::contour: return "contour";
        case SymbolMethod::oracle: return "oracle";
    }
    return "?";
}

SymbolValue local_symbol(const AnalyticUnit& f, const AnalyticUnit& g, const PointOnLine& s, SymbolMethod method,
                         const LocalOpts& opts) {
    if (!(f.field() == g.field())) fail(ErrorKind::FieldMismatch, "units over different fields");
    auto radius = [&] { return opts.radius > 0.0 ? opts.radius : local_radius(support(f, g), s); };
    switch (method) {
        case SymbolMethod::tame:
            return tame_symbol(local_expansion(f, s, opts.window), local_expansion(g, s, opts.window));
        case SymbolMethod::plus:
            return plus_symbol(local_factorization(f, s, opts.window), local_factorization(g, s, opts.window),
                               opts.graded_sign);
        case SymbolMethod::minus:
            return minus_symbol(local_factorization(f, s, opts.window), local_factorization(g, s, opts.window),
                                opts.graded_sign);
        case SymbolMethod::contour: {
            ContourOpts co;
            co.rho = radius();
            co.samples = opts.samples;
            return deligne_symbol(local_contour_fn(f, s), local_contour_fn(g, s), co);
        }
        case SymbolMethod::oracle: {
            if (f.field().kind == K::padic) fail(ErrorKind::FieldMismatch, "the window oracle works over Q or C");
            // t -> r t moves every other support point outside the unit circle; the symbol is unchanged
            double r = radius();
            OracleOpts o = opts.oracle;
            o.graded = opts.graded_sign;
            long W = std::max(opts.window, o.window + o.certificate_step);
            return oracle_commutator(to_complex_series(local_expansion(f, s, W)).rescale(r),
                                     to_complex_series(local_expansion(g, s, W)).rescale(r), o);
        }
    }
    fail(ErrorKind::InvalidArgument, "unknown symbol method");
}

Scalar ReciprocityReport::recompute_product() const {
    Scalar p = product.is_zero() ? product : Scalar::one(product.field());
    for (const auto& pt : points)
        if (pt.symbol) p = p * pt.symbol->value;
    return p;
}

ReciprocityReport verify_reciprocity(const AnalyticUnit& f, const AnalyticUnit& g, SymbolMethod method,
                                     const ReciprocityOpts& opts) {
    if (!(f.field() == g.field())) fail(ErrorKind::FieldMismatch, "units over different fields");
    f.validate();
    g.validate();
    ReciprocityReport rep;
    rep.method = method;
    const bool numeric = method == SymbolMethod::contour || method == SymbolMethod::oracle;
    const Field F = numeric ? Field::complex() : f.field();
    rep.product = Scalar::one(F);
    bool ok = true;
    double rel = 0.0;
    for (const auto& s : support(f, g)) {
        PointSymbol ps;
        ps.point = s;
        ps.vf = order_at(f, s);
        ps.vg = order_at(g, s);
        try {
            ps.symbol = local_symbol(f, g, s, method, opts.local);
            if (numeric) ps.symbol->value = Scalar::complex(ps.symbol->value.to_complex());
            rep.product = rep.product * ps.symbol->value;
            rel += ps.symbol->err / abs_at(ps.symbol->value);
        } catch (const Error& e) {
            ps.error = std::string(error_name(e.kind())) + ": " + e.what();
            ok = false;
        }
        rep.points.push_back(std::move(ps));
    }
    rep.err = rel * abs_at(rep.product);
    Scalar one = Scalar::one(F);
    switch (F.kind) {
        case K::rational: rep.pass = ok && rep.product == one; break;
        case K::padic: rep.pass = ok && approx_equal(rep.product, one); break;
        case K::complex: rep.pass = ok && std::abs(rep.product.to_complex() - 1.0) <= opts.tol; break;
    }
    return rep;
}

}  // namespace lsym
