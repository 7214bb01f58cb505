#pragma once

#include <functional>

#include "lsym/laurent.hpp"

namespace lsym {

/// A function on a circle |t| = rho, with its t-derivative.
struct ContourFn {
    std::function<cplx(cplx)> value;
    std::function<cplx(cplx)> derivative;

    static ContourFn from_series(const LaurentSeries& f);
};

struct WindingResult {
    long winding = 0;
    /// Distance of the raw quadrature value from the returned integer.
    double residual = 0.0;
};

/// Nearest integer to (1/2 pi i) \oint f'/f dt by the trapezoid rule on K samples.
WindingResult winding_number_contour(const ContourFn& f, double rho, long K);
WindingResult winding_number_contour(const LaurentSeries& f, double rho, long K);

/// Unique index maximizing |a_i| rho^i at both radii (p-adic series).
long dominant_index(const LaurentSeries& f, const mpq_class& rho1, const mpq_class& rho2);

/// f = c t^n g(t) h(1/t) with g(0) = 1 and h constant term 1.
struct BirkhoffFactorization {
    Scalar c;
    long n = 0;
    LaurentSeries g;
    LaurentSeries h;
};

struct FactorOpts {
    enum class Algorithm { automatic, one_sided, two_sided };
    Algorithm algorithm = Algorithm::automatic;
    long window = 64;
    double theta = 0.5;
    double tol = 1e-14;
    /// Working radius for the complex winding number and contraction check.
    double rho = 1.0;
    long samples = 2048;
    /// p-adic radii; zero selects (2p+1)/(4p) and 1 - 1/(2p).
    mpq_class rho1 = 0;
    mpq_class rho2 = 0;
};

BirkhoffFactorization birkhoff_factor(const LaurentSeries& f, const FactorOpts& opts = {});

/// c t^n g h on exponents [n - window, n + window] (clipped to what g and h determine).
LaurentSeries recompose(const BirkhoffFactorization& fact, long window);

/// Default p-adic radii used by birkhoff_factor.
mpq_class default_inner_radius(long p);
mpq_class default_outer_radius(long p);

}  // namespace lsym
