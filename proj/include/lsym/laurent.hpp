#pragma once

#include <climits>
#include <vector>

#include "lsym/scalar.hpp"

namespace lsym {

/// Exponents beyond this magnitude are rejected.
constexpr long kWindowCap = 1000000;

/// Truncated two-sided Laurent series sum_{e=lo}^{hi} c_e t^e.
///
/// lo_exact means every coefficient below lo is exactly zero, hi_exact the same
/// above hi. A side that is not exact is an unknown tail, so the coefficient
/// at an exponent is known when it lies in the window or beyond an exact edge.
class LaurentSeries {
public:
    /// The canonical zero over the rationals.
    LaurentSeries() = default;
    LaurentSeries(const Field& f, long lo, std::vector<Scalar> coeffs, bool lo_exact, bool hi_exact);

    static LaurentSeries zero(const Field& f);
    static LaurentSeries monomial(const Scalar& c, long n);
    static LaurentSeries constant(const Scalar& c) { return monomial(c, 0); }
    static LaurentSeries from_rationals(const Field& f, long lo, const std::vector<mpq_class>& coeffs,
                                        bool lo_exact = true, bool hi_exact = true);

    const Field& field() const { return field_; }
    long lo() const { return lo_; }
    long hi() const { return lo_ + static_cast<long>(coeffs_.size()) - 1; }
    std::size_t size() const { return coeffs_.size(); }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    bool lo_exact() const { return lo_exact_; }
    bool hi_exact() const { return hi_exact_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monomial() const { return lo_exact_ && hi_exact_ && coeffs_.size() == 1; }

    /// Lowest / highest exponent whose coefficient is known (LONG_MIN / LONG_MAX when unbounded).
    long known_lo() const { return lo_exact_ ? LONG_MIN : lo_; }
    long known_hi() const { return hi_exact_ ? LONG_MAX : hi(); }
    bool known(long e) const { return e >= known_lo() && e <= known_hi(); }

    /// Coefficient at e; zero beyond an exact edge, ExponentOutsideWindow in an unknown tail.
    Scalar coeff(long e) const;
    /// Coefficient at e treating unknown tails as zero.
    Scalar coeff_or_zero(long e) const;

    /// Restriction to exponents [L, U]; sides that cut nonzero data become inexact.
    LaurentSeries truncate(long L, long U) const;
    /// Multiplication by t^k.
    LaurentSeries shift(long k) const;
    LaurentSeries scale(const Scalar& c) const;
    /// Formal derivative d/dt.
    LaurentSeries derivative() const;
    /// f(r t) for a real r > 0 (complex and rational fields).
    LaurentSeries rescale(double r) const;

    /// Evaluates the window polynomial at t (complex or rational fields).
    cplx eval(cplx t) const;
    cplx eval_derivative(cplx t) const;

    bool operator==(const LaurentSeries&) const = default;

private:
    Field field_ = Field::rational();
    long lo_ = 0;
    std::vector<Scalar> coeffs_;
    bool lo_exact_ = true;
    bool hi_exact_ = true;
};

/// Common options for series constructions.
struct SeriesOpts {
    /// Number of terms produced beyond the leading exponent on an exact side.
    long window = 64;
    /// Contraction bound for two-sided log / exp / inverse.
    double theta = 0.5;
    /// Increment tolerance; p-adic series use p^{-M} instead.
    double tol = 1e-14;
    /// Radius at which two-sided contraction is measured.
    double rho = 1.0;
};

LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries series_sub(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries series_neg(const LaurentSeries& a);
/// Cauchy product restricted to the reliable window.
LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b);
/// Cauchy product on [L, U] treating unknown tails as zero (used for two-sided
/// analytic series whose tails are negligible). Flags are set conservatively.
LaurentSeries series_mul_window(const LaurentSeries& a, const LaurentSeries& b, long L, long U);

LaurentSeries series_inverse(const LaurentSeries& u, const SeriesOpts& opts = {});
LaurentSeries series_log(const LaurentSeries& u, const SeriesOpts& opts = {});
LaurentSeries series_exp(const LaurentSeries& s, const SeriesOpts& opts = {});

/// Coefficient at t^{-1}.
Scalar residue(const LaurentSeries& f);
/// <sum a_i t^i, sum b_i t^{-i-1}> = sum a_i b_i.
Scalar residue_pairing(const LaurentSeries& a, const LaurentSeries& b);

struct NormValue {
    double value = 0.0;
    /// True when the maximizing index is not on an inexact window edge.
    bool attained_inside = true;
    long argmax = 0;
};

struct ExactNormValue {
    mpq_class value = 0;
    bool attained_inside = true;
    long argmax = 0;
};

/// sup_i |a_i| rho^i over the window.
NormValue rho_norm(const LaurentSeries& f, double rho);
/// Exact sup_i |a_i| rho^i for rational and p-adic fields.
ExactNormValue rho_norm_exact(const LaurentSeries& f, const mpq_class& rho);
/// sum_i |a_i| rho^i: the submultiplicative norm used for archimedean contraction checks.
double weighted_l1_norm(const LaurentSeries& f, double rho);

struct SplitPair {
    LaurentSeries plus;   // exponents >= 0
    LaurentSeries minus;  // exponents < 0
};

SplitPair plus_minus_split(const LaurentSeries& f);

/// Largest |a_i - b_i| over the common known window (complex/rational), or the
/// smallest valuation of a_i - b_i turned into p^{-v} (p-adic).
double max_coeff_diff(const LaurentSeries& a, const LaurentSeries& b, long L, long U);

}  // namespace lsym
