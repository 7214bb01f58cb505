#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "lsym/error.hpp"

namespace lsym {

using cplx = std::complex<double>;

/// Coefficient field: exact rationals, complex doubles, or Q_p with M significant digits.
struct Field {
    enum class Kind { rational, complex, padic };

    Kind kind = Kind::rational;
    long p = 0;
    int M = 0;

    static Field rational() { return {}; }
    static Field complex() { return {Kind::complex, 0, 0}; }
    static Field padic(long p, int M);

    bool is_exact() const { return kind != Kind::complex; }
    bool operator==(const Field&) const = default;

    /// "rational", "complex" or "padic:p:M".
    std::string name() const;
    static Field parse(const std::string& text);
};

bool is_prime(long n);

/// p-adic payload: x = p^val * unit, unit known mod p^prec.
/// Zero has val = kInfinite and prec holding its absolute precision (kInfinite if exact).
struct PAdicValue {
    static constexpr long kInfinite = INT64_MAX / 4;
    long val = kInfinite;
    mpz_class unit = 0;
    long prec = kInfinite;
};

/// Immutable tagged field element.
class Scalar {
public:
    Scalar() : field_(Field::rational()), data_(mpq_class(0)) {}

    static Scalar rational(const mpq_class& q);
    static Scalar complex(cplx z);
    static Scalar padic_raw(const Field& f, PAdicValue v);

    /// Embeds a rational into any field (p-adic via padic_lift).
    static Scalar from_rational(const Field& f, const mpq_class& q);
    static Scalar from_int(const Field& f, long n) { return from_rational(f, mpq_class(n)); }
    static Scalar zero(const Field& f) { return from_int(f, 0); }
    static Scalar one(const Field& f) { return from_int(f, 1); }

    const Field& field() const { return field_; }
    bool is_zero() const;
    /// True when the value is known exactly (rationals, exact p-adic zero).
    bool is_exact_zero() const;

    const mpq_class& as_rational() const;
    /// Complex value; rationals are converted, p-adics are rejected.
    cplx to_complex() const;
    const PAdicValue& as_padic() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

    /// Exact structural equality (complex compared bitwise).
    friend bool operator==(const Scalar& a, const Scalar& b);

    std::string to_string() const;

private:
    Field field_;
    std::variant<mpq_class, cplx, PAdicValue> data_;
};

/// |x|: modulus, rational absolute value, or p^{-v_p(x)}.
double abs_at(const Scalar& x);
/// Exact |x| for rational and p-adic values.
mpq_class abs_exact(const Scalar& x);
/// p-adic valuation (kInfinite for zero); rational valuation needs a prime.
long valuation(const Scalar& x);

Scalar pow(const Scalar& x, long n);
Scalar inverse(const Scalar& x);

/// Equality up to tolerance: exact for rationals, |a-b| <= tol for complex,
/// agreement to the tracked precision for p-adics.
bool approx_equal(const Scalar& a, const Scalar& b, double tol = 1e-10);

/// Embeds q into Q_p with M significant digits. Throws DivisionByP when
/// allow_negative_valuation is false and p divides the reduced denominator.
Scalar padic_lift(const mpq_class& q, long p, int M, bool allow_negative_valuation = true);

/// Rational r/s with |r|, |s| <= sqrt(p^N / 2) congruent to x, if one exists.
std::optional<mpq_class> rational_reconstruction(const Scalar& x);

/// exp of a scalar: complex exp, or the p-adic series when v(x) > 1/(p-1).
Scalar scalar_exp(const Scalar& x);
/// Principal complex log.
Scalar scalar_log(const Scalar& x);

/// Deterministic total order used to sort support points.
bool canonical_less(const Scalar& a, const Scalar& b);

mpz_class ipow(long p, long e);

}  // namespace lsym
