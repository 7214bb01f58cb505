#pragma once

#include "lsym/factorization.hpp"

namespace lsym {

struct SymbolValue {
    enum class Method { closed_form, commutator, contour, oracle };
    Scalar value;
    Method method = Method::closed_form;
    /// Absolute error bound on value; 0 for exact closed forms.
    double err = 0.0;
};

const char* method_name(SymbolValue::Method m);

/// (-1)^{mn} b^m / a^n for f = a t^m (1 + ...), g = b t^n (1 + ...).
SymbolValue tame_symbol(const LaurentSeries& f, const LaurentSeries& g);

struct SymbolOpts {
    FactorOpts factor;
    /// Multiply the commutator closed form by (-1)^{n1 n2}.
    bool graded_sign = false;
};

/// c1^{-n2} c2^{n1} from the two factorizations (times the graded sign when asked).
SymbolValue plus_symbol(const BirkhoffFactorization& f, const BirkhoffFactorization& g, bool graded_sign = false);
SymbolValue plus_symbol(const LaurentSeries& f, const LaurentSeries& g, const SymbolOpts& opts = {});
SymbolValue minus_symbol(const BirkhoffFactorization& f, const BirkhoffFactorization& g, bool graded_sign = false);
SymbolValue minus_symbol(const LaurentSeries& f, const LaurentSeries& g, const SymbolOpts& opts = {});

struct ContourOpts {
    double rho = 1.0;
    long samples = 2048;
    /// Upper limit for adaptive doubling of the sample count.
    long max_samples = 1L << 20;
};

/// exp(-1/(2 pi i) \oint log f dg/g) g(rho)^{v(f)}, log f continued from the
/// principal value at the base point t = rho.
SymbolValue deligne_symbol(const ContourFn& f, const ContourFn& g, const ContourOpts& opts = {});
SymbolValue deligne_symbol(const LaurentSeries& f, const LaurentSeries& g, const ContourOpts& opts = {});

SymbolValue symbol_mul(const SymbolValue& a, const SymbolValue& b);
SymbolValue symbol_inv(const SymbolValue& a);

}  // namespace lsym
