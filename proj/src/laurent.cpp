#include "lsym/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace lsym {

namespace {

using K = Field::Kind;

void check_cap(long e) {
    if (e > kWindowCap || e < -kWindowCap)
        fail(ErrorKind::InvalidArgument, "exponent " + std::to_string(e) + " exceeds the window cap");
}

void require_same(const LaurentSeries& a, const LaurentSeries& b) {
    if (!(a.field() == b.field()))
        fail(ErrorKind::FieldMismatch, "series over " + a.field().name() + " and " + b.field().name());
}

// Raw convolution of windows onto [L, U]; contributions outside the windows are dropped.
std::vector<Scalar> convolve(const Field& f, const std::vector<Scalar>& a, long alo, const std::vector<Scalar>& b,
                             long blo, long L, long U) {
    long ahi = alo + static_cast<long>(a.size()) - 1;
    long bhi = blo + static_cast<long>(b.size()) - 1;
    if (f.kind == K::complex) {
        // plain doubles: the generic path spends most of its time in variant dispatch
        std::vector<cplx> ac(a.size()), bc(b.size());
        for (std::size_t i = 0; i < a.size(); ++i) ac[i] = a[i].to_complex();
        for (std::size_t i = 0; i < b.size(); ++i) bc[i] = b[i].to_complex();
        std::vector<Scalar> out;
        out.reserve(static_cast<std::size_t>(U - L + 1));
        for (long k = L; k <= U; ++k) {
            long i0 = std::max(alo, k - bhi), i1 = std::min(ahi, k - blo);
            cplx acc = 0.0;
            for (long i = i0; i <= i1; ++i) acc += ac[i - alo] * bc[k - i - blo];
            out.push_back(Scalar::complex(acc));
        }
        return out;
    }
    std::vector<Scalar> out(static_cast<std::size_t>(U - L + 1), Scalar::zero(f));
    for (long k = L; k <= U; ++k) {
        long i0 = std::max(alo, k - bhi);
        long i1 = std::min(ahi, k - blo);
        if (i0 > i1) continue;
        Scalar acc = a[i0 - alo] * b[k - i0 - blo];
        for (long i = i0 + 1; i <= i1; ++i) acc += a[i - alo] * b[k - i - blo];
        out[k - L] = acc;
    }
    return out;
}

double inc_norm(const Field& f, const std::vector<Scalar>& v, long lo, double rho) {
    double n = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double a = abs_at(v[i]) * std::pow(rho, static_cast<double>(lo + static_cast<long>(i)));
        n = f.kind == K::padic ? std::max(n, a) : n + a;
    }
    return n;
}

double padic_floor(const Field& f) { return std::pow(static_cast<double>(f.p), -static_cast<double>(f.M)); }

enum class Direction { up, down, two_sided };

// Sum_{k>=0} w(k) s^k on [L, U]. One-sided directions terminate once the powers leave
// the window; the two-sided case stops on the increment norm.
std::vector<Scalar> power_sum(const LaurentSeries& s, long L, long U, Direction dir,
                              const std::function<Scalar(long)>& weight, const SeriesOpts& opts) {
    const Field& f = s.field();
    std::vector<Scalar> sum(static_cast<std::size_t>(U - L + 1), Scalar::zero(f));
    if (L <= 0 && U >= 0) sum[-L] = weight(0);
    if (s.is_zero()) return sum;
    std::vector<Scalar> power{Scalar::one(f)};
    long plo = 0;
    double tol = f.kind == K::padic ? padic_floor(f) : opts.tol;
    for (long k = 1;; ++k) {
        if (dir == Direction::up && k * s.lo() > U) break;
        if (dir == Direction::down && k * s.hi() < L) break;
        if (k > 2000) fail(ErrorKind::ConvergenceGuardFailed, "series did not converge within 2000 terms");
        power = convolve(f, power, plo, s.coeffs(), s.lo(), L, U);
        plo = L;
        Scalar w = weight(k);
        std::vector<Scalar> inc(power.size(), Scalar::zero(f));
        for (std::size_t i = 0; i < power.size(); ++i) {
            inc[i] = power[i] * w;
            sum[i] += inc[i];
        }
        if (dir == Direction::two_sided && inc_norm(f, inc, L, opts.rho) < tol) break;
    }
    return sum;
}

// Normalized u = 1 + s: returns s with an exactly zero constant term.
LaurentSeries principal_part_of_unit(const LaurentSeries& u, double tol) {
    Scalar c0 = u.coeff(0);
    Scalar one = Scalar::one(u.field());
    bool ok = u.field().kind == K::complex ? std::abs(c0.to_complex() - 1.0) <= 1e-12 + tol
                                           : approx_equal(c0, one);
    if (!ok) fail(ErrorKind::NotNormalized, "constant term is " + c0.to_string() + ", expected 1");
    std::vector<Scalar> cs = u.coeffs();
    if (0 >= u.lo() && 0 <= u.hi()) cs[-u.lo()] = Scalar::zero(u.field());
    return LaurentSeries(u.field(), u.lo(), std::move(cs), u.lo_exact(), u.hi_exact());
}

Direction classify(const LaurentSeries& s) {
    if (s.lo_exact() && s.lo() >= 1) return Direction::up;
    if (s.hi_exact() && s.hi() <= -1) return Direction::down;
    return Direction::two_sided;
}

struct Window {
    long L, U;
    bool lo_exact, hi_exact;
};

Window output_window(const LaurentSeries& s, Direction dir, long W, bool include_zero) {
    if (W < 1) fail(ErrorKind::InvalidArgument, "window must be >= 1");
    switch (dir) {
        case Direction::up: {
            long U = s.hi_exact() ? W : std::min(W, s.hi());
            return {include_zero ? 0 : 1, U, true, false};
        }
        case Direction::down: {
            long L = s.lo_exact() ? -W : std::max(-W, s.lo());
            return {L, include_zero ? 0 : -1, false, true};
        }
        case Direction::two_sided: {
            long L = std::max(-W, s.lo_exact() ? -W : s.lo());
            long U = std::min(W, s.hi_exact() ? W : s.hi());
            if (L > 0 || U < 0) fail(ErrorKind::EmptyReliableWindow, "two-sided window misses exponent 0");
            return {L, U, false, false};
        }
    }
    return {0, 0, false, false};
}

double contraction_norm(const LaurentSeries& s, double rho) {
    return s.field().kind == K::padic ? rho_norm(s, rho).value : weighted_l1_norm(s, rho);
}

}  // namespace

LaurentSeries::LaurentSeries(const Field& f, long lo, std::vector<Scalar> coeffs, bool lo_exact, bool hi_exact)
    : field_(f), lo_(lo), lo_exact_(lo_exact), hi_exact_(hi_exact) {
    for (const auto& c : coeffs)
        if (!(c.field() == f)) fail(ErrorKind::FieldMismatch, "coefficient field differs from series field");
    if (coeffs.empty()) {
        if (!(lo_exact && hi_exact)) fail(ErrorKind::EmptyReliableWindow, "empty window with an unknown tail");
        lo_ = 0;
        return;
    }
    long orig_hi = lo + static_cast<long>(coeffs.size()) - 1;
    std::size_t first = 0, last = coeffs.size();
    if (lo_exact)
        while (first < last && coeffs[first].is_zero()) ++first;
    if (hi_exact)
        while (last > first && coeffs[last - 1].is_zero()) --last;
    if (first == last) {
        if (lo_exact && hi_exact) {
            lo_ = 0;
            return;
        }
        // Every coefficient was zero next to an unknown tail: keep one known zero.
        long e = lo_exact ? orig_hi : lo;
        lo_ = e;
        coeffs_ = {Scalar::zero(f)};
        lo_exact_ = false;
        hi_exact_ = false;
        check_cap(e);
        return;
    }
    lo_ = lo + static_cast<long>(first);
    coeffs_.assign(std::make_move_iterator(coeffs.begin() + static_cast<long>(first)),
                   std::make_move_iterator(coeffs.begin() + static_cast<long>(last)));
    check_cap(lo_);
    check_cap(hi());
}

LaurentSeries LaurentSeries::zero(const Field& f) { return LaurentSeries(f, 0, {}, true, true); }

LaurentSeries LaurentSeries::monomial(const Scalar& c, long n) { return LaurentSeries(c.field(), n, {c}, true, true); }

LaurentSeries LaurentSeries::from_rationals(const Field& f, long lo, const std::vector<mpq_class>& coeffs,
                                            bool lo_exact, bool hi_exact) {
    std::vector<Scalar> cs;
    cs.reserve(coeffs.size());
    for (const auto& q : coeffs) cs.push_back(Scalar::from_rational(f, q));
    return LaurentSeries(f, lo, std::move(cs), lo_exact, hi_exact);
}

Scalar LaurentSeries::coeff(long e) const {
    if (is_zero()) return Scalar::zero(field_);
    if (e >= lo_ && e <= hi()) return coeffs_[static_cast<std::size_t>(e - lo_)];
    if ((e < lo_ && lo_exact_) || (e > hi() && hi_exact_)) return Scalar::zero(field_);
    fail(ErrorKind::ExponentOutsideWindow, "exponent " + std::to_string(e) + " lies in an unknown tail");
}

Scalar LaurentSeries::coeff_or_zero(long e) const {
    if (is_zero() || e < lo_ || e > hi()) return Scalar::zero(field_);
    return coeffs_[static_cast<std::size_t>(e - lo_)];
}

LaurentSeries LaurentSeries::truncate(long L, long U) const {
    if (L > U) fail(ErrorKind::InvalidArgument, "truncation window is empty");
    if (is_zero()) return *this;
    long L2 = std::max(L, lo_), U2 = std::min(U, hi());
    if (L2 > U2) {
        if ((L > hi() && hi_exact_) || (U < lo_ && lo_exact_))
            return LaurentSeries(field_, L, std::vector<Scalar>(static_cast<std::size_t>(U - L + 1), Scalar::zero(field_)),
                                 false, false);
        fail(ErrorKind::EmptyReliableWindow, "truncation window misses the known coefficients");
    }
    std::vector<Scalar> cs(coeffs_.begin() + (L2 - lo_), coeffs_.begin() + (U2 - lo_ + 1));
    return LaurentSeries(field_, L2, std::move(cs), lo_exact_ && L <= lo_, hi_exact_ && U >= hi());
}

LaurentSeries LaurentSeries::shift(long k) const {
    if (is_zero()) return *this;
    return LaurentSeries(field_, lo_ + k, coeffs_, lo_exact_, hi_exact_);
}

LaurentSeries LaurentSeries::scale(const Scalar& c) const {
    if (!(c.field() == field_)) fail(ErrorKind::FieldMismatch, "scale by a scalar of another field");
    if (c.is_zero()) return zero(field_);
    std::vector<Scalar> cs = coeffs_;
    for (auto& x : cs) x *= c;
    return LaurentSeries(field_, lo_, std::move(cs), lo_exact_, hi_exact_);
}

LaurentSeries LaurentSeries::derivative() const {
    if (is_zero()) return *this;
    std::vector<Scalar> cs;
    cs.reserve(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        cs.push_back(coeffs_[i] * Scalar::from_int(field_, lo_ + static_cast<long>(i)));
    bool lo_ex = lo_exact_, hi_ex = hi_exact_;
    // A constant term becomes zero; keep the window nonempty.
    if (coeffs_.size() == 1 && lo_ == 0) return zero(field_);
    return LaurentSeries(field_, lo_ - 1, std::move(cs), lo_ex, hi_ex);
}

LaurentSeries LaurentSeries::rescale(double r) const {
    if (field_.kind != K::complex) fail(ErrorKind::FieldMismatch, "rescale needs the complex field");
    if (is_zero()) return *this;
    std::vector<Scalar> cs = coeffs_;
    for (std::size_t i = 0; i < cs.size(); ++i)
        cs[i] = Scalar::complex(cs[i].to_complex() * std::pow(r, static_cast<double>(lo_ + static_cast<long>(i))));
    return LaurentSeries(field_, lo_, std::move(cs), lo_exact_, hi_exact_);
}

cplx LaurentSeries::eval(cplx t) const {
    if (is_zero()) return 0.0;
    cplx pos = 0.0, neg = 0.0;
    for (long e = hi(); e >= std::max(lo_, 0L); --e) pos = pos * t + coeffs_[e - lo_].to_complex();
    if (lo_ > 0) pos *= std::pow(t, static_cast<double>(lo_));
    if (lo_ < 0) {
        cplx inv = 1.0 / t;
        long top = std::min(hi(), -1L);
        for (long e = lo_; e <= top; ++e) neg = neg * inv + coeffs_[e - lo_].to_complex();
        neg *= std::pow(inv, static_cast<double>(-top));
    }
    return pos + neg;
}

cplx LaurentSeries::eval_derivative(cplx t) const { return derivative().eval(t); }

LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b) {
    require_same(a, b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long KL = std::max(a.known_lo(), b.known_lo());
    long KU = std::min(a.known_hi(), b.known_hi());
    long L = std::max(KL, std::min(a.lo(), b.lo()));
    long U = std::min(KU, std::max(a.hi(), b.hi()));
    if (L > U) fail(ErrorKind::EmptyReliableWindow, "sum has no reliable coefficients");
    std::vector<Scalar> cs;
    cs.reserve(static_cast<std::size_t>(U - L + 1));
    for (long e = L; e <= U; ++e) cs.push_back(a.coeff(e) + b.coeff(e));
    return LaurentSeries(a.field(), L, std::move(cs), a.lo_exact() && b.lo_exact(), a.hi_exact() && b.hi_exact());
}

LaurentSeries series_neg(const LaurentSeries& a) { return a.scale(-Scalar::one(a.field())); }

LaurentSeries series_sub(const LaurentSeries& a, const LaurentSeries& b) { return series_add(a, series_neg(b)); }

LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b) {
    require_same(a, b);
    if (a.is_zero() || b.is_zero()) return LaurentSeries::zero(a.field());
    long L = LONG_MIN, U = LONG_MAX;
    if (a.lo_exact() && b.lo_exact()) L = a.lo() + b.lo();
    if (!a.lo_exact()) {
        if (!b.hi_exact()) fail(ErrorKind::EmptyReliableWindow, "product of opposite unknown tails");
        L = std::max(L, a.lo() + b.hi());
    }
    if (!b.lo_exact()) {
        if (!a.hi_exact()) fail(ErrorKind::EmptyReliableWindow, "product of opposite unknown tails");
        L = std::max(L, b.lo() + a.hi());
    }
    if (a.hi_exact() && b.hi_exact()) U = a.hi() + b.hi();
    if (!a.hi_exact()) U = std::min(U, a.hi() + b.lo());
    if (!b.hi_exact()) U = std::min(U, b.hi() + a.lo());
    if (L > U) fail(ErrorKind::EmptyReliableWindow, "product has no reliable coefficients");
    check_cap(L);
    check_cap(U);
    auto cs = convolve(a.field(), a.coeffs(), a.lo(), b.coeffs(), b.lo(), L, U);
    return LaurentSeries(a.field(), L, std::move(cs), a.lo_exact() && b.lo_exact(), a.hi_exact() && b.hi_exact());
}

LaurentSeries series_mul_window(const LaurentSeries& a, const LaurentSeries& b, long L, long U) {
    require_same(a, b);
    if (a.is_zero() || b.is_zero()) return LaurentSeries::zero(a.field());
    if (L > U) fail(ErrorKind::InvalidArgument, "empty product window");
    check_cap(L);
    check_cap(U);
    auto cs = convolve(a.field(), a.coeffs(), a.lo(), b.coeffs(), b.lo(), L, U);
    bool lo_ex = a.lo_exact() && b.lo_exact() && L <= a.lo() + b.lo();
    bool hi_ex = a.hi_exact() && b.hi_exact() && U >= a.hi() + b.hi();
    return LaurentSeries(a.field(), L, std::move(cs), lo_ex, hi_ex);
}

LaurentSeries series_inverse(const LaurentSeries& u, const SeriesOpts& opts) {
    const Field& f = u.field();
    if (u.is_zero()) fail(ErrorKind::NotInvertibleOnWindow, "zero is not invertible");
    if (u.is_monomial()) return LaurentSeries::monomial(inverse(u.coeffs()[0]), -u.lo());

    Direction dir;
    if (u.lo_exact() && !u.hi_exact()) dir = Direction::up;
    else if (u.hi_exact() && !u.lo_exact()) dir = Direction::down;
    else if (u.lo_exact() && u.hi_exact()) {
        if (u.lo() >= 0 || f.kind == K::rational) dir = Direction::up;
        else dir = u.hi() <= 0 ? Direction::down : Direction::two_sided;
    } else dir = Direction::two_sided;

    long n;
    if (dir == Direction::up) n = u.lo();
    else if (dir == Direction::down) n = u.hi();
    else {
        if (f.kind == K::rational)
            fail(ErrorKind::NotInvertibleOnWindow, "two-sided inverse over the rationals is not exact");
        n = rho_norm(u, opts.rho).argmax;
    }
    Scalar c = u.coeff(n);
    if (c.is_zero()) fail(ErrorKind::NotInvertibleOnWindow, "leading coefficient vanishes");
    LaurentSeries s = principal_part_of_unit(u.shift(-n).scale(inverse(c)), opts.tol);
    if (dir == Direction::two_sided) {
        double norm = contraction_norm(s, opts.rho);
        if (norm > opts.theta)
            fail(ErrorKind::ContractionBoundViolated,
                 "contraction norm " + std::to_string(norm) + " exceeds " + std::to_string(opts.theta));
    }
    Window w = output_window(s, dir, opts.window, true);
    auto cs = power_sum(s, w.L, w.U, dir,
                        [&](long k) { return Scalar::from_int(f, k % 2 == 0 ? 1 : -1); }, opts);
    LaurentSeries v(f, w.L, std::move(cs), w.lo_exact, w.hi_exact);
    return v.shift(-n).scale(inverse(c));
}

LaurentSeries series_log(const LaurentSeries& u, const SeriesOpts& opts) {
    const Field& f = u.field();
    LaurentSeries s = principal_part_of_unit(u, opts.tol);
    if (s.is_zero()) return LaurentSeries::zero(f);
    Direction dir = classify(s);
    if (dir == Direction::two_sided) {
        if (f.kind == K::rational) fail(ErrorKind::ConvergenceGuardFailed, "two-sided log over the rationals");
        double norm = contraction_norm(s, opts.rho);
        double bound = f.kind == K::padic ? 1.0 : opts.theta;
        if (!(norm < bound || (f.kind != K::padic && norm <= bound)))
            fail(ErrorKind::ConvergenceGuardFailed, "log guard: norm " + std::to_string(norm));
    }
    Window w = output_window(s, dir, opts.window, dir == Direction::two_sided);
    auto cs = power_sum(s, w.L, w.U, dir,
                        [&](long k) {
                            if (k == 0) return Scalar::zero(f);
                            return Scalar::from_rational(f, mpq_class(k % 2 == 1 ? 1 : -1, k));
                        },
                        opts);
    return LaurentSeries(f, w.L, std::move(cs), w.lo_exact, w.hi_exact);
}

LaurentSeries series_exp(const LaurentSeries& s, const SeriesOpts& opts) {
    const Field& f = s.field();
    if (s.is_zero()) return LaurentSeries::constant(Scalar::one(f));
    Scalar c0 = s.coeff(0);
    if (!c0.is_zero()) {
        // exp(c0 + s') = exp(c0) exp(s') when the scalar exponential exists.
        if (f.kind == K::rational) fail(ErrorKind::NotNormalized, "exp needs a zero constant term");
        std::vector<Scalar> cs = s.coeffs();
        cs[-s.lo()] = Scalar::zero(f);
        LaurentSeries rest(f, s.lo(), std::move(cs), s.lo_exact(), s.hi_exact());
        return series_exp(rest, opts).scale(scalar_exp(c0));
    }
    LaurentSeries t = s;
    Direction dir = classify(t);
    if (dir == Direction::two_sided) {
        if (f.kind == K::rational) fail(ErrorKind::ConvergenceGuardFailed, "two-sided exp over the rationals");
        double norm = contraction_norm(t, opts.rho);
        double bound = f.kind == K::padic ? std::pow(static_cast<double>(f.p), -1.0 / static_cast<double>(f.p - 1))
                                          : opts.theta;
        if (!(norm < bound || (f.kind != K::padic && norm <= bound)))
            fail(ErrorKind::ConvergenceGuardFailed, "exp guard: norm " + std::to_string(norm));
    }
    Window w = output_window(t, dir, opts.window, true);
    mpz_class fact = 1;
    auto cs = power_sum(t, w.L, w.U, dir,
                        [&](long k) {
                            if (k > 0) fact *= k;
                            return Scalar::from_rational(f, mpq_class(mpz_class(1), fact));
                        },
                        opts);
    return LaurentSeries(f, w.L, std::move(cs), w.lo_exact, w.hi_exact);
}

Scalar residue(const LaurentSeries& f) {
    if (!f.known(-1)) fail(ErrorKind::ExponentOutsideWindow, "exponent -1 is outside the reliable window");
    return f.coeff(-1);
}

Scalar residue_pairing(const LaurentSeries& a, const LaurentSeries& b) {
    require_same(a, b);
    if (!a.is_zero() && !(a.lo_exact() && a.lo() >= 0))
        fail(ErrorKind::SupportViolation, "first argument must be supported in exponents >= 0");
    if (!b.is_zero() && !(b.hi_exact() && b.hi() <= -1))
        fail(ErrorKind::SupportViolation, "second argument must be supported in exponents <= -1");
    if (a.is_zero() || b.is_zero()) return Scalar::zero(a.field());
    long top;
    if (a.hi_exact() && b.lo_exact()) top = std::min(a.hi(), -b.lo() - 1);
    else if (a.hi_exact()) top = a.hi();
    else if (b.lo_exact()) top = -b.lo() - 1;
    else fail(ErrorKind::EmptyReliableWindow, "pairing of two unknown tails");
    Scalar acc = Scalar::zero(a.field());
    for (long i = 0; i <= top; ++i) {
        if (!a.known(i) || !b.known(-i - 1))
            fail(ErrorKind::EmptyReliableWindow, "pairing needs coefficients outside the reliable window");
        acc += a.coeff(i) * b.coeff(-i - 1);
    }
    return acc;
}

NormValue rho_norm(const LaurentSeries& f, double rho) {
    NormValue r;
    if (f.is_zero()) return r;
    double best = -1.0;
    for (long e = f.lo(); e <= f.hi(); ++e) {
        double v = abs_at(f.coeffs()[e - f.lo()]) * std::pow(rho, static_cast<double>(e));
        if (v > best) {
            best = v;
            r.argmax = e;
        }
    }
    r.value = best;
    r.attained_inside = (r.argmax > f.lo() || f.lo_exact()) && (r.argmax < f.hi() || f.hi_exact());
    return r;
}

ExactNormValue rho_norm_exact(const LaurentSeries& f, const mpq_class& rho) {
    ExactNormValue r;
    if (f.is_zero()) return r;
    if (rho <= 0) fail(ErrorKind::InvalidArgument, "rho must be positive");
    bool first = true;
    for (long e = f.lo(); e <= f.hi(); ++e) {
        mpq_class rp = 1;
        mpq_class base = e >= 0 ? rho : mpq_class(1) / rho;
        for (long k = 0; k < std::labs(e); ++k) rp *= base;
        mpq_class v = abs_exact(f.coeffs()[e - f.lo()]) * rp;
        if (first || v > r.value) {
            r.value = v;
            r.argmax = e;
            first = false;
        }
    }
    r.attained_inside = (r.argmax > f.lo() || f.lo_exact()) && (r.argmax < f.hi() || f.hi_exact());
    return r;
}

double weighted_l1_norm(const LaurentSeries& f, double rho) {
    double s = 0.0;
    for (long e = f.lo(); !f.is_zero() && e <= f.hi(); ++e)
        s += abs_at(f.coeffs()[e - f.lo()]) * std::pow(rho, static_cast<double>(e));
    return s;
}

SplitPair plus_minus_split(const LaurentSeries& f) {
    SplitPair r{LaurentSeries::zero(f.field()), LaurentSeries::zero(f.field())};
    if (f.is_zero()) return r;
    if (f.hi() >= 0) {
        long L = std::max(f.lo(), 0L);
        std::vector<Scalar> cs(f.coeffs().begin() + (L - f.lo()), f.coeffs().end());
        r.plus = LaurentSeries(f.field(), L, std::move(cs), f.lo_exact() || f.lo() <= 0, f.hi_exact());
    } else if (!f.hi_exact()) {
        fail(ErrorKind::EmptyReliableWindow, "nonnegative part lies entirely in an unknown tail");
    }
    if (f.lo() <= -1) {
        long U = std::min(f.hi(), -1L);
        std::vector<Scalar> cs(f.coeffs().begin(), f.coeffs().begin() + (U - f.lo() + 1));
        r.minus = LaurentSeries(f.field(), f.lo(), std::move(cs), f.lo_exact(), f.hi_exact() || f.hi() >= -1);
    } else if (!f.lo_exact()) {
        fail(ErrorKind::EmptyReliableWindow, "negative part lies entirely in an unknown tail");
    }
    return r;
}

double max_coeff_diff(const LaurentSeries& a, const LaurentSeries& b, long L, long U) {
    require_same(a, b);
    double m = 0.0;
    for (long e = L; e <= U; ++e) m = std::max(m, abs_at(a.coeff(e) - b.coeff(e)));
    return m;
}

}  // namespace lsym
