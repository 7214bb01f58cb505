#include "lsym/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace lsym {

namespace {

using K = Field::Kind;

cplx pairwise_sum(const std::vector<cplx>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        cplx s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

long unique_argmax(const LaurentSeries& f, const mpq_class& rho) {
    if (f.is_zero()) fail(ErrorKind::AmbiguousDominantIndex, "zero series has no dominant index");
    mpq_class best = -1;
    long arg = 0;
    int count = 0;
    for (long e = f.lo(); e <= f.hi(); ++e) {
        mpq_class v = abs_exact(f.coeffs()[e - f.lo()]);
        mpq_class base = e >= 0 ? rho : mpq_class(1) / rho;
        for (long k = 0; k < std::labs(e); ++k) v *= base;
        if (v > best) {
            best = v;
            arg = e;
            count = 1;
        } else if (v == best) {
            ++count;
        }
    }
    if (count > 1)
        fail(ErrorKind::AmbiguousDominantIndex, "tie for the dominant term at rho = " + rho.get_str());
    return arg;
}

BirkhoffFactorization upward(const LaurentSeries& f) {
    long n = f.lo();
    Scalar c = f.coeff(n);
    return {c, n, f.shift(-n).scale(inverse(c)), LaurentSeries::constant(Scalar::one(f.field()))};
}

BirkhoffFactorization downward(const LaurentSeries& f) {
    long n = f.hi();
    Scalar c = f.coeff(n);
    return {c, n, LaurentSeries::constant(Scalar::one(f.field())), f.shift(-n).scale(inverse(c))};
}

// Complex units far from 1: branch-tracked log of f t^-n on |t| = rho, then its
// Fourier coefficients. Needs only that f is analytic and nonvanishing on the circle.
BirkhoffFactorization spectral_split(const LaurentSeries& f, long n, const FactorOpts& opts, double norm) {
    const Field& F = f.field();
    const long W = opts.window;
    long K = std::max<long>(opts.samples, 8 * W);
    std::vector<cplx> ell(static_cast<std::size_t>(K));
    double prev = 0.0;
    for (long j = 0; j < K; ++j) {
        double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(K);
        cplx t = std::polar(opts.rho, th);
        cplx v = f.eval(t) * std::pow(t, static_cast<double>(-n));
        if (v == cplx(0.0)) fail(ErrorKind::ZeroOnContour, "unit vanishes on the working circle");
        double a = std::arg(v);
        if (j > 0) {
            double d = std::remainder(a - prev, 2.0 * std::numbers::pi);
            if (std::abs(d) >= std::numbers::pi / 2)
                fail(ErrorKind::BranchTrackingFailed, "argument jump too large; raise the sample count");
            a = prev + d;
        }
        prev = a;
        ell[static_cast<std::size_t>(j)] = cplx(std::log(std::abs(v)), a);
    }
    auto fourier = [&](long k) {
        std::vector<cplx> terms(static_cast<std::size_t>(K));
        for (long j = 0; j < K; ++j)
            terms[static_cast<std::size_t>(j)] =
                ell[static_cast<std::size_t>(j)] *
                std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((k * j) % K) / static_cast<double>(K));
        return pairwise_sum(terms, 0, terms.size()) / static_cast<double>(K) * std::pow(opts.rho, -static_cast<double>(k));
    };
    // decay check: the coefficients near the window edge must be negligible
    double peak = 0.0, edge = 0.0;
    std::vector<Scalar> plus, minus;
    for (long k = 1; k <= W; ++k) {
        cplx a = fourier(k), b = fourier(-k);
        double ma = std::abs(a) * std::pow(opts.rho, k), mb = std::abs(b) * std::pow(opts.rho, -k);
        peak = std::max({peak, ma, mb});
        if (k > W - 4) edge = std::max({edge, ma, mb});
        plus.push_back(Scalar::complex(a));
        minus.insert(minus.begin(), Scalar::complex(b));
    }
    if (edge > 1e-10 * std::max(peak, 1.0))
        fail(ErrorKind::NotPrincipalUnit, "|u - 1| = " + std::to_string(norm) +
                                              " and log f does not decay inside the window");
    SeriesOpts so;
    so.window = W;
    so.theta = opts.theta;
    so.tol = opts.tol;
    so.rho = opts.rho;
    BirkhoffFactorization r;
    r.n = n;
    r.c = Scalar::complex(std::exp(fourier(0)));
    r.g = series_exp(LaurentSeries(F, 1, plus, true, false), so);
    r.h = series_exp(LaurentSeries(F, -W, minus, false, true), so);
    return r;
}

BirkhoffFactorization two_sided(const LaurentSeries& f, const FactorOpts& opts) {
    const Field& F = f.field();
    long n;
    double work_rho = opts.rho;
    if (F.kind == K::complex) {
        n = winding_number_contour(f, opts.rho, opts.samples).winding;
    } else if (F.kind == K::padic) {
        mpq_class r1 = opts.rho1 == 0 ? default_inner_radius(F.p) : opts.rho1;
        mpq_class r2 = opts.rho2 == 0 ? default_outer_radius(F.p) : opts.rho2;
        n = dominant_index(f, r1, r2);
        work_rho = r2.get_d();
    } else {
        fail(ErrorKind::NotMeromorphic, "two-sided factorization needs a complex or p-adic field");
    }
    if (!f.known(n) || f.coeff(n).is_zero())
        fail(ErrorKind::NotPrincipalUnit, "coefficient at the index " + std::to_string(n) + " is not available");
    Scalar c0 = f.coeff(n);
    LaurentSeries u = f.shift(-n).scale(inverse(c0));
    std::vector<Scalar> cs = u.coeffs();
    if (u.lo() <= 0 && u.hi() >= 0) cs[-u.lo()] = Scalar::zero(F);
    LaurentSeries s(F, u.lo(), cs, u.lo_exact(), u.hi_exact());
    double norm = F.kind == K::padic ? rho_norm(s, work_rho).value : weighted_l1_norm(s, work_rho);
    if (norm > opts.theta && F.kind == K::complex) return spectral_split(f, n, opts, norm);
    if (norm > opts.theta)
        fail(ErrorKind::NotPrincipalUnit, "|u - 1| = " + std::to_string(norm) + " exceeds the bound " +
                                              std::to_string(opts.theta) + " at radius " + std::to_string(work_rho));
    SeriesOpts so;
    so.window = opts.window;
    so.theta = opts.theta;
    so.tol = opts.tol;
    so.rho = work_rho;
    // the window polynomial stands for the unit; its tails are neglected
    LaurentSeries l = series_log(LaurentSeries(F, u.lo(), u.coeffs(), true, true), so);
    Scalar l0 = l.known(0) ? l.coeff(0) : Scalar::zero(F);
    SplitPair sp = plus_minus_split(l);
    LaurentSeries lplus = sp.plus;
    if (!lplus.is_zero() && lplus.lo() <= 0) {
        std::vector<Scalar> pc = lplus.coeffs();
        pc[-lplus.lo()] = Scalar::zero(F);
        lplus = LaurentSeries(F, lplus.lo(), pc, true, lplus.hi_exact());
    }
    BirkhoffFactorization r;
    r.c = l0.is_zero() ? c0 : c0 * scalar_exp(l0);
    r.n = n;
    r.g = series_exp(lplus, so);
    r.h = series_exp(sp.minus, so);
    return r;
}

// Polynomial in t, 1/t: pick n analytically, then stay exact when u is one-sided.
BirkhoffFactorization exact_both(const LaurentSeries& f, const FactorOpts& opts) {
    long n;
    if (f.field().kind == K::complex) {
        try {
            n = winding_number_contour(f, opts.rho, opts.samples).winding;
        } catch (const Error& e) {
            // a root on the circle: the formal one-sided split is still well defined
            if (e.kind() != ErrorKind::ZeroOnContour) throw;
            return upward(f);
        }
    } else {
        const long p = f.field().p;
        n = dominant_index(f, opts.rho1 == 0 ? default_inner_radius(p) : opts.rho1,
                           opts.rho2 == 0 ? default_outer_radius(p) : opts.rho2);
    }
    if (n == f.lo()) return upward(f);
    if (n == f.hi()) return downward(f);
    return two_sided(f, opts);
}

}  // namespace

ContourFn ContourFn::from_series(const LaurentSeries& f) {
    LaurentSeries d = f.derivative();
    return {[f](cplx t) { return f.eval(t); }, [d](cplx t) { return d.eval(t); }};
}

WindingResult winding_number_contour(const ContourFn& f, double rho, long K) {
    if (K < 64) fail(ErrorKind::InvalidArgument, "winding number needs at least 64 samples");
    if (!(rho > 0)) fail(ErrorKind::InvalidArgument, "radius must be positive");
    std::vector<cplx> terms(static_cast<std::size_t>(K));
    double vmin = INFINITY, vmax = 0.0;
    for (long k = 0; k < K; ++k) {
        cplx t = std::polar(rho, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(K));
        cplx v = f.value(t);
        double a = std::abs(v);
        vmin = std::min(vmin, a);
        vmax = std::max(vmax, a);
        terms[static_cast<std::size_t>(k)] = a == 0.0 ? cplx(0.0) : f.derivative(t) / v * t;
    }
    if (!(vmin > 1e-12 * vmax) || !std::isfinite(vmax))
        fail(ErrorKind::ZeroOnContour, "function (nearly) vanishes on |t| = " + std::to_string(rho));
    cplx raw = pairwise_sum(terms, 0, terms.size()) / static_cast<double>(K);
    WindingResult r;
    r.winding = std::lround(raw.real());
    r.residual = std::abs(raw - cplx(static_cast<double>(r.winding), 0.0));
    if (!(r.residual < 0.1))
        fail(ErrorKind::ResidualTooLarge,
             "winding residual " + std::to_string(r.residual) + "; raise the sample count or move the radius");
    return r;
}

WindingResult winding_number_contour(const LaurentSeries& f, double rho, long K) {
    if (f.field().kind == K::padic) fail(ErrorKind::FieldMismatch, "winding number needs a complex series");
    return winding_number_contour(ContourFn::from_series(f), rho, K);
}

long dominant_index(const LaurentSeries& f, const mpq_class& rho1, const mpq_class& rho2) {
    if (f.field().kind != K::padic) fail(ErrorKind::FieldMismatch, "dominant index needs a p-adic series");
    if (!(rho1 > 0 && rho1 < rho2)) fail(ErrorKind::InvalidArgument, "need 0 < rho1 < rho2");
    long a = unique_argmax(f, rho1);
    long b = unique_argmax(f, rho2);
    if (a != b)
        fail(ErrorKind::IndexMismatch,
             "dominant index " + std::to_string(a) + " at rho1 but " + std::to_string(b) + " at rho2");
    return a;
}

mpq_class default_inner_radius(long p) {
    mpq_class r(2 * p + 1, 4 * p);
    r.canonicalize();
    return r;
}

mpq_class default_outer_radius(long p) {
    mpq_class r(2 * p - 1, 2 * p);
    r.canonicalize();
    return r;
}

BirkhoffFactorization birkhoff_factor(const LaurentSeries& f, const FactorOpts& opts) {
    if (f.is_zero()) fail(ErrorKind::NotPrincipalUnit, "zero is not a unit");
    const Field& F = f.field();
    using A = FactorOpts::Algorithm;
    if (f.is_monomial()) return upward(f);
    switch (opts.algorithm) {
        case A::one_sided:
            if (f.lo_exact()) return upward(f);
            if (f.hi_exact()) return downward(f);
            fail(ErrorKind::NotMeromorphic, "one-sided factorization needs an exact edge");
        case A::two_sided: return two_sided(f, opts);
        case A::automatic:
            if (f.lo_exact() && (!f.hi_exact() || F.kind == K::rational)) return upward(f);
            if (f.hi_exact() && !f.lo_exact()) return downward(f);
            if (F.kind == K::rational) fail(ErrorKind::NotMeromorphic, "rational series without an exact edge");
            if (f.lo_exact() && f.hi_exact()) return exact_both(f, opts);
            return two_sided(f, opts);
    }
    return upward(f);
}

LaurentSeries recompose(const BirkhoffFactorization& fact, long window) {
    const LaurentSeries& g = fact.g;
    const LaurentSeries& h = fact.h;
    LaurentSeries gh;
    try {
        gh = series_mul(g, h);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::EmptyReliableWindow) throw;
        long L = std::max(h.lo() + (h.lo_exact() ? g.lo() : 0), -window);
        long U = std::min(g.hi() + (g.hi_exact() ? h.hi() : 0), window);
        gh = series_mul_window(g, h, L, U);
    }
    return gh.shift(fact.n).scale(fact.c);
}

}  // namespace lsym
