#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lsym/detline.hpp"
#include "lsym/symbols.hpp"

namespace lsym {

struct PointOnLine {
    bool infinite = false;
    Scalar a;

    static PointOnLine finite(const Scalar& a) { return {false, a}; }
    static PointOnLine infinity() { return {true, Scalar()}; }
    std::string to_string() const;
    bool operator==(const PointOnLine& o) const { return infinite == o.infinite && (infinite || a == o.a); }
};

/// constant * prod (x - root)^mult * exp(exp_num(x) / exp_den(x)); polynomial
/// coefficients are listed from the constant term up.
struct AnalyticUnit {
    Scalar constant;
    std::vector<std::pair<Scalar, long>> factors;
    std::vector<mpq_class> exp_num;
    std::vector<mpq_class> exp_den{1};

    const Field& field() const { return constant.field(); }
    bool has_exp() const;
    /// Checks the invariants: nonzero constant, distinct roots, nonzero multiplicities,
    /// nonzero denominator that splits over Q, no exponential part over exact fields.
    void validate() const;
    /// Multiplicative structure: roots merged, exponents added.
    static AnalyticUnit mul(const AnalyticUnit& a, const AnalyticUnit& b);
    static AnalyticUnit inverse(const AnalyticUnit& a);
    static AnalyticUnit constant_unit(const Scalar& c);
    /// x - a
    static AnalyticUnit linear(const Scalar& a);
};

/// Rational roots of a polynomial with rational coefficients (rational-root theorem),
/// with multiplicities; throws NotSplit if the polynomial does not split over Q.
std::vector<std::pair<mpq_class, long>> rational_roots(const std::vector<mpq_class>& poly);

/// The unit x |-> u(x + a).
AnalyticUnit translate(const AnalyticUnit& u, const mpq_class& a);

/// Laurent expansion in t, x = a + t (finite) or x = 1/t (infinity).
LaurentSeries local_expansion(const AnalyticUnit& u, const PointOnLine& s, long window);

/// c t^n g h read off from the factored form at s (exact where the field is).
BirkhoffFactorization local_factorization(const AnalyticUnit& u, const PointOnLine& s, long window);

/// u as a function of the local parameter t, with its t-derivative (complex field).
ContourFn local_contour_fn(const AnalyticUnit& u, const PointOnLine& s);

/// Zeros, poles and exponential poles of f and g, then infinity.
std::vector<PointOnLine> support(const AnalyticUnit& f, const AnalyticUnit& g);

/// Radius of a circle around s that encloses no other support point.
double local_radius(const std::vector<PointOnLine>& points, const PointOnLine& s);

enum class SymbolMethod { tame, plus, minus, contour, oracle };
SymbolMethod parse_symbol_method(const std::string& name);
const char* symbol_method_name(SymbolMethod m);

struct LocalOpts {
    long window = 64;
    long samples = 2048;
    /// Circle radius for contour / oracle; 0 picks local_radius over the support.
    double radius = 0.0;
    bool graded_sign = false;
    OracleOpts oracle;
};

SymbolValue local_symbol(const AnalyticUnit& f, const AnalyticUnit& g, const PointOnLine& s, SymbolMethod method,
                         const LocalOpts& opts = {});

struct PointSymbol {
    PointOnLine point;
    long vf = 0;
    long vg = 0;
    std::optional<SymbolValue> symbol;
    std::string error;
};

struct ReciprocityReport {
    std::vector<PointSymbol> points;
    Scalar product;
    bool pass = false;
    SymbolMethod method = SymbolMethod::tame;
    double err = 0.0;

    /// Ordered product of the listed symbol values.
    Scalar recompute_product() const;
};

struct ReciprocityOpts {
    LocalOpts local;
    double tol = 1e-8;
};

ReciprocityReport verify_reciprocity(const AnalyticUnit& f, const AnalyticUnit& g, SymbolMethod method,
                                     const ReciprocityOpts& opts = {});

}  // namespace lsym
