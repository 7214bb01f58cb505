#include "lsym/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace lsym {

namespace {

using K = Field::Kind;
constexpr long kInf = PAdicValue::kInfinite;

long vp(mpz_class& n, long p) {
    long v = 0;
    mpz_class q, r;
    while (n != 0) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(p));
        if (r != 0) break;
        n = q;
        ++v;
    }
    return v;
}

mpz_class mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        fail(ErrorKind::DivisionByP, "unit is not invertible modulo p^N");
    return r;
}

void require_same(const Scalar& a, const Scalar& b) {
    if (!(a.field() == b.field()))
        fail(ErrorKind::FieldMismatch, "field mismatch: " + a.field().name() + " vs " + b.field().name());
}

long cap(const Field& f, long prec) { return std::min<long>(prec, f.M); }

// Absolute precision of a p-adic value.
long abs_prec(const PAdicValue& x) { return x.val == kInf ? x.prec : x.val + x.prec; }

PAdicValue padic_zero(long absolute) {
    PAdicValue z;
    z.prec = absolute;
    return z;
}

PAdicValue padic_add(const Field& f, const PAdicValue& a, const PAdicValue& b) {
    if (a.val == kInf && a.prec == kInf) return b;
    if (b.val == kInf && b.prec == kInf) return a;
    long A = std::min(abs_prec(a), abs_prec(b));
    long vmin = std::min(a.val, b.val);
    if (vmin >= A) return padic_zero(A);
    mpz_class modulus = ipow(f.p, A - vmin);
    mpz_class s = 0;
    if (a.val != kInf) s += a.unit * ipow(f.p, a.val - vmin);
    if (b.val != kInf) s += b.unit * ipow(f.p, b.val - vmin);
    s = mod(s, modulus);
    if (s == 0) return padic_zero(A);
    long w = vp(s, f.p);
    PAdicValue r;
    r.val = vmin + w;
    r.prec = cap(f, A - r.val);
    r.unit = mod(s, ipow(f.p, r.prec));
    return r;
}

PAdicValue padic_mul(const Field& f, const PAdicValue& a, const PAdicValue& b) {
    if (a.val == kInf || b.val == kInf) {
        if ((a.val == kInf && a.prec == kInf) || (b.val == kInf && b.prec == kInf)) return PAdicValue{};
        long A;
        if (a.val == kInf && b.val == kInf) A = a.prec + b.prec;
        else if (a.val == kInf) A = a.prec + b.val;
        else A = b.prec + a.val;
        return padic_zero(A);
    }
    PAdicValue r;
    r.val = a.val + b.val;
    r.prec = cap(f, std::min(a.prec, b.prec));
    r.unit = mod(a.unit * b.unit, ipow(f.p, r.prec));
    return r;
}

PAdicValue padic_div(const Field& f, const PAdicValue& a, const PAdicValue& b) {
    if (b.val == kInf) {
        if (b.prec == kInf) fail(ErrorKind::DivideByZero, "p-adic division by zero");
        fail(ErrorKind::PrecisionExhausted, "p-adic divisor has no significant digits");
    }
    if (a.val == kInf) {
        if (a.prec == kInf) return PAdicValue{};
        return padic_zero(a.prec - b.val);
    }
    PAdicValue r;
    r.val = a.val - b.val;
    r.prec = cap(f, std::min(a.prec, b.prec));
    mpz_class m = ipow(f.p, r.prec);
    r.unit = mod(a.unit * inv_mod(b.unit, m), m);
    return r;
}

}  // namespace

mpz_class ipow(long p, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field Field::padic(long p, int M) {
    if (!is_prime(p)) fail(ErrorKind::InvalidArgument, "p-adic field needs a prime, got " + std::to_string(p));
    if (M < 1) fail(ErrorKind::InvalidArgument, "p-adic precision must be >= 1");
    return {Kind::padic, p, M};
}

std::string Field::name() const {
    switch (kind) {
        case Kind::rational: return "rational";
        case Kind::complex: return "complex";
        case Kind::padic: return "padic:" + std::to_string(p) + ":" + std::to_string(M);
    }
    return "?";
}

Field Field::parse(const std::string& text) {
    if (text == "rational") return rational();
    if (text == "complex") return complex();
    if (text.rfind("padic:", 0) == 0) {
        auto rest = text.substr(6);
        auto colon = rest.find(':');
        if (colon == std::string::npos) fail(ErrorKind::InvalidArgument, "expected padic:<p>:<M>");
        try {
            return padic(std::stol(rest.substr(0, colon)), std::stoi(rest.substr(colon + 1)));
        } catch (const std::logic_error&) {
            fail(ErrorKind::InvalidArgument, "bad field '" + text + "'");
        }
    }
    fail(ErrorKind::InvalidArgument, "unknown field '" + text + "'");
}

Scalar Scalar::rational(const mpq_class& q) {
    Scalar s;
    s.data_ = q;
    std::get<mpq_class>(s.data_).canonicalize();
    return s;
}

Scalar Scalar::complex(cplx z) {
    Scalar s;
    s.field_ = Field::complex();
    s.data_ = z;
    return s;
}

Scalar Scalar::padic_raw(const Field& f, PAdicValue v) {
    Scalar s;
    s.field_ = f;
    if (v.val != kInf) {
        v.prec = cap(f, v.prec);
        if (v.prec < 1) fail(ErrorKind::PrecisionExhausted, "p-adic value has no significant digits");
        v.unit = mod(v.unit, ipow(f.p, v.prec));
        if (v.unit % f.p == 0) fail(ErrorKind::InvalidArgument, "p-adic unit part divisible by p");
    }
    s.data_ = std::move(v);
    return s;
}

Scalar Scalar::from_rational(const Field& f, const mpq_class& q) {
    switch (f.kind) {
        case K::rational: return rational(q);
        case K::complex: return complex(cplx(q.get_d(), 0.0));
        case K::padic: return padic_lift(q, f.p, f.M);
    }
    return {};
}

bool Scalar::is_zero() const {
    switch (field_.kind) {
        case K::rational: return std::get<mpq_class>(data_) == 0;
        case K::complex: return std::get<cplx>(data_) == cplx(0, 0);
        case K::padic: return std::get<PAdicValue>(data_).val == kInf;
    }
    return false;
}

bool Scalar::is_exact_zero() const {
    if (field_.kind == K::padic) {
        const auto& v = std::get<PAdicValue>(data_);
        return v.val == kInf && v.prec == kInf;
    }
    return is_zero();
}

const mpq_class& Scalar::as_rational() const {
    if (field_.kind != K::rational) fail(ErrorKind::FieldMismatch, "not a rational scalar");
    return std::get<mpq_class>(data_);
}

cplx Scalar::to_complex() const {
    if (field_.kind == K::complex) return std::get<cplx>(data_);
    if (field_.kind == K::rational) return {std::get<mpq_class>(data_).get_d(), 0.0};
    fail(ErrorKind::FieldMismatch, "p-adic scalar has no complex value");
}

const PAdicValue& Scalar::as_padic() const {
    if (field_.kind != K::padic) fail(ErrorKind::FieldMismatch, "not a p-adic scalar");
    return std::get<PAdicValue>(data_);
}

Scalar Scalar::operator-() const {
    switch (field_.kind) {
        case K::rational: return rational(-std::get<mpq_class>(data_));
        case K::complex: return complex(-std::get<cplx>(data_));
        case K::padic: {
            PAdicValue v = std::get<PAdicValue>(data_);
            if (v.val != kInf) v.unit = mod(-v.unit, ipow(field_.p, v.prec));
            return padic_raw(field_, v);
        }
    }
    return {};
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    require_same(a, b);
    switch (a.field_.kind) {
        case K::rational: return Scalar::rational(std::get<mpq_class>(a.data_) + std::get<mpq_class>(b.data_));
        case K::complex: return Scalar::complex(std::get<cplx>(a.data_) + std::get<cplx>(b.data_));
        case K::padic:
            return Scalar::padic_raw(a.field_,
                                     padic_add(a.field_, std::get<PAdicValue>(a.data_), std::get<PAdicValue>(b.data_)));
    }
    return {};
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    require_same(a, b);
    switch (a.field_.kind) {
        case K::rational: return Scalar::rational(std::get<mpq_class>(a.data_) * std::get<mpq_class>(b.data_));
        case K::complex: return Scalar::complex(std::get<cplx>(a.data_) * std::get<cplx>(b.data_));
        case K::padic:
            return Scalar::padic_raw(a.field_,
                                     padic_mul(a.field_, std::get<PAdicValue>(a.data_), std::get<PAdicValue>(b.data_)));
    }
    return {};
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    require_same(a, b);
    switch (a.field_.kind) {
        case K::rational:
            if (std::get<mpq_class>(b.data_) == 0) fail(ErrorKind::DivideByZero, "division by zero");
            return Scalar::rational(std::get<mpq_class>(a.data_) / std::get<mpq_class>(b.data_));
        case K::complex:
            if (std::get<cplx>(b.data_) == cplx(0, 0)) fail(ErrorKind::DivideByZero, "division by zero");
            return Scalar::complex(std::get<cplx>(a.data_) / std::get<cplx>(b.data_));
        case K::padic:
            return Scalar::padic_raw(a.field_,
                                     padic_div(a.field_, std::get<PAdicValue>(a.data_), std::get<PAdicValue>(b.data_)));
    }
    return {};
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (!(a.field_ == b.field_)) return false;
    switch (a.field_.kind) {
        case K::rational: return std::get<mpq_class>(a.data_) == std::get<mpq_class>(b.data_);
        case K::complex: return std::get<cplx>(a.data_) == std::get<cplx>(b.data_);
        case K::padic: {
            const auto& x = std::get<PAdicValue>(a.data_);
            const auto& y = std::get<PAdicValue>(b.data_);
            return x.val == y.val && x.prec == y.prec && x.unit == y.unit;
        }
    }
    return false;
}

std::string Scalar::to_string() const {
    std::ostringstream os;
    switch (field_.kind) {
        case K::rational: os << std::get<mpq_class>(data_).get_str(); break;
        case K::complex: {
            cplx z = std::get<cplx>(data_);
            os.precision(17);
            os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
            break;
        }
        case K::padic: {
            const auto& v = std::get<PAdicValue>(data_);
            if (v.val == kInf) {
                os << "0";
                if (v.prec != kInf) os << " + O(" << field_.p << "^" << v.prec << ")";
            } else {
                os << v.unit.get_str() << "*" << field_.p << "^" << v.val << " + O(" << field_.p << "^"
                   << v.val + v.prec << ")";
            }
            break;
        }
    }
    return os.str();
}

double abs_at(const Scalar& x) {
    switch (x.field().kind) {
        case K::rational: return mpq_class(abs(x.as_rational())).get_d();
        case K::complex: return std::abs(x.to_complex());
        case K::padic: {
            const auto& v = x.as_padic();
            if (v.val == kInf) return 0.0;
            return std::pow(static_cast<double>(x.field().p), -static_cast<double>(v.val));
        }
    }
    return 0.0;
}

mpq_class abs_exact(const Scalar& x) {
    if (x.field().kind == K::rational) return abs(x.as_rational());
    if (x.field().kind == K::padic) {
        const auto& v = x.as_padic();
        if (v.val == kInf) return 0;
        mpq_class r;
        if (v.val >= 0) r = mpq_class(mpz_class(1), ipow(x.field().p, v.val));
        else r = mpq_class(ipow(x.field().p, -v.val), mpz_class(1));
        r.canonicalize();
        return r;
    }
    fail(ErrorKind::FieldMismatch, "exact absolute value needs an exact field");
}

long valuation(const Scalar& x) {
    if (x.field().kind != K::padic) fail(ErrorKind::FieldMismatch, "valuation needs a p-adic scalar");
    return x.as_padic().val;
}

Scalar pow(const Scalar& x, long n) {
    Scalar base = n >= 0 ? x : inverse(x);
    unsigned long e = static_cast<unsigned long>(n >= 0 ? n : -n);
    Scalar r = Scalar::one(x.field());
    while (e > 0) {
        if (e & 1UL) r *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return r;
}

Scalar inverse(const Scalar& x) { return Scalar::one(x.field()) / x; }

bool approx_equal(const Scalar& a, const Scalar& b, double tol) {
    require_same(a, b);
    switch (a.field().kind) {
        case K::rational: return a == b;
        case K::complex: return std::abs(a.to_complex() - b.to_complex()) <= tol;
        case K::padic: return (a - b).is_zero();
    }
    return false;
}

Scalar padic_lift(const mpq_class& q, long p, int M, bool allow_negative_valuation) {
    Field f = Field::padic(p, M);
    if (q == 0) return Scalar::padic_raw(f, PAdicValue{});
    mpz_class num = q.get_num();
    mpz_class den = q.get_den();
    long a = vp(num, p);
    long b = vp(den, p);
    if (b > 0 && !allow_negative_valuation)
        fail(ErrorKind::DivisionByP, "denominator of " + q.get_str() + " is divisible by " + std::to_string(p));
    PAdicValue v;
    v.val = a - b;
    v.prec = M;
    mpz_class m = ipow(p, M);
    v.unit = mod(mod(num, m) * inv_mod(mod(den, m), m), m);
    return Scalar::padic_raw(f, v);
}

std::optional<mpq_class> rational_reconstruction(const Scalar& x) {
    if (x.field().kind == K::rational) return x.as_rational();
    const auto& v = x.as_padic();
    if (v.val == kInf) return mpq_class(0);
    mpz_class m = ipow(x.field().p, v.prec);
    mpz_class bound;
    mpz_class half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    // Half-extended Euclid on (m, unit) stopping once the remainder drops below bound.
    mpz_class r0 = m, r1 = v.unit, t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0 || abs(t1) > bound) return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), t1.get_mpz_t(), m.get_mpz_t());
    if (g != 1) return std::nullopt;
    mpq_class r(r1, t1);
    r.canonicalize();
    if (v.val >= 0) r *= mpq_class(ipow(x.field().p, v.val));
    else r /= mpq_class(ipow(x.field().p, -v.val));
    return r;
}

Scalar scalar_exp(const Scalar& x) {
    switch (x.field().kind) {
        case K::complex: return Scalar::complex(std::exp(x.to_complex()));
        case K::rational:
            if (x.as_rational() == 0) return Scalar::one(x.field());
            fail(ErrorKind::FieldMismatch, "exp of a nonzero rational is not rational");
        case K::padic: {
            const auto& v = x.as_padic();
            long p = x.field().p;
            if (v.val == kInf) return Scalar::one(x.field()) + x;
            if (v.val * (p - 1) <= 1)
                fail(ErrorKind::ConvergenceGuardFailed, "p-adic exp needs v(x) > 1/(p-1)");
            Scalar sum = Scalar::one(x.field());
            Scalar term = sum;
            for (long k = 1; k < 100000; ++k) {
                term = term * x / Scalar::from_int(x.field(), k);
                if (term.is_zero() || term.as_padic().val >= x.field().M + 1) {
                    sum += term;
                    break;
                }
                sum += term;
            }
            return sum;
        }
    }
    return {};
}

Scalar scalar_log(const Scalar& x) {
    if (x.field().kind == K::complex) {
        if (x.is_zero()) fail(ErrorKind::DivideByZero, "log of zero");
        return Scalar::complex(std::log(x.to_complex()));
    }
    if (x == Scalar::one(x.field())) return Scalar::zero(x.field());
    fail(ErrorKind::FieldMismatch, "scalar log is only available over the complex field");
}

bool canonical_less(const Scalar& a, const Scalar& b) {
    require_same(a, b);
    switch (a.field().kind) {
        case K::rational: return a.as_rational() < b.as_rational();
        case K::complex: {
            cplx x = a.to_complex(), y = b.to_complex();
            if (x.real() != y.real()) return x.real() < y.real();
            return x.imag() < y.imag();
        }
        case K::padic: {
            auto ra = rational_reconstruction(a), rb = rational_reconstruction(b);
            if (ra && rb && *ra != *rb) return *ra < *rb;
            const auto& x = a.as_padic();
            const auto& y = b.as_padic();
            if (x.val != y.val) return x.val < y.val;
            return x.unit < y.unit;
        }
    }
    return false;
}

}  // namespace lsym
