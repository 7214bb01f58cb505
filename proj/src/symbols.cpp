#include "lsym/symbols.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

namespace lsym {

namespace {

using K = Field::Kind;
constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Error attached to a value produced by `ops` exact-in-principle operations.
double rounding_err(const Scalar& v, long ops) {
    switch (v.field().kind) {
        case K::rational: return 0.0;
        case K::complex: return 4.0 * kEps * static_cast<double>(ops + 1) * std::abs(v.to_complex());
        case K::padic: {
            const auto& pv = v.as_padic();
            if (pv.prec >= PAdicValue::kInfinite) return 0.0;
            return abs_at(v) * std::pow(static_cast<double>(v.field().p), -static_cast<double>(pv.prec));
        }
    }
    return 0.0;
}

Scalar sign_power(const Field& f, long e) { return Scalar::from_int(f, e % 2 == 0 ? 1 : -1); }

struct Quadrature {
    cplx value;
    double scale = 0.0;  // magnitude of the summed terms, for the rounding floor
};

// The contour integral written on periodic pieces: f = t^a F, g = t^b G with
// F, G of winding zero and LF, LG their continuous logs.
std::optional<Quadrature> contour_integral(const ContourFn& f, const ContourFn& g, double rho, long K, long a,
                                           long b) {
    std::vector<cplx> LF(static_cast<std::size_t>(K)), LG(LF.size()), dLG(LF.size());
    double pf = 0.0, pg = 0.0;
    for (long j = 0; j < K; ++j) {
        double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(K);
        cplx t = std::polar(rho, th);
        cplx fv = f.value(t), gv = g.value(t), gd = g.derivative(t);
        if (fv == cplx(0.0) || gv == cplx(0.0)) fail(ErrorKind::ZeroOnContour, "symbol argument vanishes on the contour");
        cplx F = fv * std::pow(t, static_cast<double>(-a));
        cplx G = gv * std::pow(t, static_cast<double>(-b));
        double af = std::arg(F), ag = std::arg(G);
        if (j > 0) {
            double df = std::remainder(af - pf, 2.0 * kPi), dg = std::remainder(ag - pg, 2.0 * kPi);
            if (std::abs(df) >= kPi / 2 || std::abs(dg) >= kPi / 2) return std::nullopt;
            af = pf + df;
            ag = pg + dg;
        }
        pf = af;
        pg = ag;
        auto i = static_cast<std::size_t>(j);
        LF[i] = cplx(std::log(std::abs(F)), af);
        LG[i] = cplx(std::log(std::abs(G)), ag);
        dLG[i] = cplx(0.0, 1.0) * (t * gd / gv - static_cast<double>(b));
    }
    const cplx I1(0.0, 1.0);
    const double h = 2.0 * kPi / static_cast<double>(K);
    cplx sLG = 0.0, sLF = 0.0, sProd = 0.0;
    double mag = 0.0;
    for (std::size_t i = 0; i < LF.size(); ++i) {
        sLG += LG[i];
        sLF += LF[i];
        sProd += LF[i] * dLG[i];
        mag += std::abs(LG[i]) + std::abs(LF[i]) + std::abs(LF[i] * dLG[i]);
    }
    const double A = static_cast<double>(a), B = static_cast<double>(b);
    cplx I = 2.0 * kPi * I1 * A * B * std::log(rho) - 2.0 * kPi * kPi * A * B +
             I1 * A * (2.0 * kPi * LG[0] - h * sLG) + I1 * B * h * sLF + h * sProd;
    // the closed terms round too
    double closed = 2.0 * kPi * std::abs(A * B) * (std::abs(std::log(rho)) + kPi) + 2.0 * kPi * std::abs(A) * std::abs(LG[0]);
    return Quadrature{I, h * mag + closed};
}

}  // namespace

const char* method_name(SymbolValue::Method m) {
    switch (m) {
        case SymbolValue::Method::closed_form: return "closed_form";
        case SymbolValue::Method::commutator: return "commutator";
        case SymbolValue::Method::contour: return "contour";
        case SymbolValue::Method::oracle: return "oracle";
    }
    return "?";
}

SymbolValue tame_symbol(const LaurentSeries& f, const LaurentSeries& g) {
    if (!(f.field() == g.field())) fail(ErrorKind::FieldMismatch, "symbol arguments over different fields");
    for (const auto* s : {&f, &g})
        if (s->is_zero() || !s->lo_exact())
            fail(ErrorKind::NotMeromorphic, "tame symbol needs an exact lower edge and a nonzero series");
    long m = f.lo(), n = g.lo();
    Scalar a = f.coeff(m), b = g.coeff(n);
    Scalar v = sign_power(f.field(), m * n) * pow(b, m) / pow(a, n);
    return {v, SymbolValue::Method::closed_form, rounding_err(v, std::labs(m) + std::labs(n))};
}

SymbolValue plus_symbol(const BirkhoffFactorization& f, const BirkhoffFactorization& g, bool graded_sign) {
    if (!(f.c.field() == g.c.field())) fail(ErrorKind::FieldMismatch, "symbol arguments over different fields");
    Scalar v = pow(f.c, -g.n) * pow(g.c, f.n);
    if (graded_sign) v = v * sign_power(v.field(), f.n * g.n);
    return {v, SymbolValue::Method::commutator, rounding_err(v, std::labs(f.n) + std::labs(g.n))};
}

SymbolValue plus_symbol(const LaurentSeries& f, const LaurentSeries& g, const SymbolOpts& opts) {
    return plus_symbol(birkhoff_factor(f, opts.factor), birkhoff_factor(g, opts.factor), opts.graded_sign);
}

SymbolValue minus_symbol(const BirkhoffFactorization& f, const BirkhoffFactorization& g, bool graded_sign) {
    return symbol_inv(plus_symbol(f, g, graded_sign));
}

SymbolValue minus_symbol(const LaurentSeries& f, const LaurentSeries& g, const SymbolOpts& opts) {
    return symbol_inv(plus_symbol(f, g, opts));
}

SymbolValue deligne_symbol(const ContourFn& f, const ContourFn& g, const ContourOpts& opts) {
    if (opts.samples < 64) fail(ErrorKind::InvalidArgument, "contour symbol needs at least 64 samples");
    long a = winding_number_contour(f, opts.rho, opts.samples).winding;
    long b = winding_number_contour(g, opts.rho, opts.samples).winding;
    cplx g0 = g.value(cplx(opts.rho, 0.0));
    auto finish = [&](const Quadrature& q) {
        return std::exp(-q.value / (2.0 * kPi * cplx(0.0, 1.0))) * std::pow(g0, static_cast<int>(a));
    };
    long K = opts.samples;
    std::optional<Quadrature> coarse;
    while (!(coarse = contour_integral(f, g, opts.rho, K, a, b))) {
        K *= 2;
        if (K > opts.max_samples)
            fail(ErrorKind::BranchTrackingFailed, "argument jump too large at the maximum sample count");
    }
    auto fine = contour_integral(f, g, opts.rho, 2 * K, a, b);
    if (!fine) fail(ErrorKind::BranchTrackingFailed, "argument tracking lost on refinement");
    cplx s1 = finish(*coarse), s2 = finish(*fine);
    double pow_scale = std::abs(static_cast<double>(a)) * (std::abs(std::log(std::abs(g0))) + kPi);
    double floor = 64.0 * kEps * std::abs(s2) * (1.0 + fine->scale / (2.0 * kPi) + pow_scale);
    return {Scalar::complex(s2), SymbolValue::Method::contour, std::abs(s2 - s1) + floor};
}

SymbolValue deligne_symbol(const LaurentSeries& f, const LaurentSeries& g, const ContourOpts& opts) {
    if (f.field().kind != K::complex || g.field().kind != K::complex)
        fail(ErrorKind::FieldMismatch, "the contour symbol needs complex series");
    return deligne_symbol(ContourFn::from_series(f), ContourFn::from_series(g), opts);
}

SymbolValue symbol_mul(const SymbolValue& a, const SymbolValue& b) {
    if (!(a.value.field() == b.value.field())) fail(ErrorKind::FieldMismatch, "symbols over different fields");
    Scalar v = a.value * b.value;
    double rel = a.err / abs_at(a.value) + b.err / abs_at(b.value);
    auto m = a.method == b.method ? a.method : SymbolValue::Method::oracle;
    if (a.method != b.method && (a.method == SymbolValue::Method::contour || b.method == SymbolValue::Method::contour))
        m = SymbolValue::Method::contour;
    return {v, m, rel * abs_at(v) + rounding_err(v, 1)};
}

SymbolValue symbol_inv(const SymbolValue& a) {
    Scalar v = inverse(a.value);
    return {v, a.method, a.err / (abs_at(a.value) * abs_at(a.value)) + rounding_err(v, 1)};
}

}  // namespace lsym
