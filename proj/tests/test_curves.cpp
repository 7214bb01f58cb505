#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "lsym/curves.hpp"
#include "test_support.hpp"

using namespace lsym;
using testing_support::Gen;

namespace {

const Field Q = Field::rational();
const Field C = Field::complex();

Scalar q(const Field& f, long n, long d = 1) { return Scalar::from_rational(f, mpq_class(n, d)); }

AnalyticUnit x_unit(const Field& f) { return AnalyticUnit::linear(Scalar::zero(f)); }

// c (x - a)
AnalyticUnit lin(const Field& f, long a, long c = 1) {
    AnalyticUnit u = AnalyticUnit::linear(q(f, a));
    u.constant = q(f, c);
    return u;
}

// 1 - x
AnalyticUnit one_minus_x(const Field& f) { return lin(f, 1, -1); }

AnalyticUnit with_exp(AnalyticUnit u, std::vector<mpq_class> num, std::vector<mpq_class> den = {1}) {
    u.exp_num = std::move(num);
    u.exp_den = std::move(den);
    return u;
}

const SymbolValue& at(const ReciprocityReport& r, std::size_t i) { return *r.points.at(i).symbol; }

}  // namespace

TEST_CASE("rational roots") {
    auto r = rational_roots({-2, 0, 2});  // 2x^2 - 2
    REQUIRE(r.size() == 2);
    CHECK(r[0] == std::pair<mpq_class, long>{-1, 1});
    CHECK(r[1] == std::pair<mpq_class, long>{1, 1});
    auto r2 = rational_roots({0, 0, mpq_class(1, 4), mpq_class(-1, 2)});  // x^2 (1/4 - x/2)
    REQUIRE(r2.size() == 2);
    CHECK(r2[0] == std::pair<mpq_class, long>{0, 2});
    CHECK(r2[1] == std::pair<mpq_class, long>{mpq_class(1, 2), 1});
    CHECK(rational_roots({1}).empty());
    CHECK_THROWS_AS(rational_roots({1, 0, 1}), Error);
    CHECK_THROWS_AS(rational_roots({}), Error);
}

TEST_CASE("unit validation") {
    AnalyticUnit u = x_unit(Q);
    u.factors.push_back({Scalar::zero(Q), 2});
    CHECK_THROWS_AS(u.validate(), Error);
    CHECK_THROWS_AS(with_exp(x_unit(Q), {1}).validate(), Error);
    CHECK_THROWS_AS(with_exp(x_unit(C), {1}, {1, 0, 1}).validate(), Error);
    CHECK_NOTHROW(with_exp(x_unit(C), {1}, {0, 1}).validate());
    auto m = AnalyticUnit::mul(lin(Q, 1), AnalyticUnit::inverse(lin(Q, 1)));
    CHECK(m.factors.empty());
    CHECK(m.constant == q(Q, 1));
}

TEST_CASE("local expansion examples") {
    auto e0 = local_expansion(x_unit(Q), PointOnLine::finite(Scalar::zero(Q)), 8);
    CHECK(e0 == LaurentSeries::monomial(q(Q, 1), 1));
    auto einf = local_expansion(x_unit(Q), PointOnLine::infinity(), 8);
    CHECK(einf == LaurentSeries::monomial(q(Q, 1), -1));
    // exp(1/x) at infinity is exp(t)
    auto ex = local_expansion(with_exp(AnalyticUnit::constant_unit(q(C, 1)), {1}, {0, 1}), PointOnLine::infinity(), 12);
    double fact = 1.0;
    for (long k = 0; k <= 10; ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        CHECK(std::abs(ex.coeff(k).to_complex() - 1.0 / fact) < 1e-14);
    }
    CHECK(ex.coeff(-1).is_zero());
    // 1 - x at 0 and at 1
    auto a0 = local_expansion(one_minus_x(Q), PointOnLine::finite(Scalar::zero(Q)), 8);
    CHECK(a0 == LaurentSeries::from_rationals(Q, 0, {1, -1}));
    auto a1 = local_expansion(one_minus_x(Q), PointOnLine::finite(q(Q, 1)), 8);
    CHECK(a1 == LaurentSeries::from_rationals(Q, 1, {-1}));
    // 1/(x - 2) at 0 = -1/2 (1 + t/2 + t^2/4 + ...)
    auto inv = local_expansion(AnalyticUnit::inverse(lin(Q, 2)), PointOnLine::finite(Scalar::zero(Q)), 6);
    CHECK(inv.coeff(0) == q(Q, -1, 2));
    CHECK(inv.coeff(3) == q(Q, -1, 16));
    CHECK(!inv.hi_exact());
}

TEST_CASE("support examples") {
    auto s = support(x_unit(Q), one_minus_x(Q));
    REQUIRE(s.size() == 3);
    CHECK(s[0] == PointOnLine::finite(q(Q, 0)));
    CHECK(s[1] == PointOnLine::finite(q(Q, 1)));
    CHECK(s[2].infinite);
    CHECK(support(x_unit(Q), x_unit(Q)).size() == 2);
    auto f = with_exp(x_unit(C), {1}, {0, 1});
    auto s2 = support(f, lin(C, 0, 2));
    REQUIRE(s2.size() == 2);
    CHECK(s2[0] == PointOnLine::finite(q(C, 0)));
    CHECK(s2[1].infinite);
}

TEST_CASE("local symbol examples") {
    auto zero = PointOnLine::finite(Scalar::zero(Q));
    CHECK(local_symbol(x_unit(Q), one_minus_x(Q), zero, SymbolMethod::tame).value == q(Q, 1));
    auto f = with_exp(x_unit(C), {0, 1});
    auto g = lin(C, 0, 2);
    auto s = local_symbol(f, g, PointOnLine::finite(Scalar::zero(C)), SymbolMethod::plus);
    CHECK(std::abs(s.value.to_complex() - 2.0) < 1e-12);
    const Field P = Field::padic(5, 8);
    CHECK(local_symbol(x_unit(P), lin(P, 5), PointOnLine::infinity(), SymbolMethod::tame).value == q(P, -1));
    CHECK_THROWS_AS(local_symbol(x_unit(P), lin(P, 5), PointOnLine::infinity(), SymbolMethod::contour), Error);
}

TEST_CASE("reciprocity examples") {
    auto r = verify_reciprocity(x_unit(Q), one_minus_x(Q), SymbolMethod::tame);
    CHECK(r.pass);
    REQUIRE(r.points.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(at(r, i).value == q(Q, 1));
    CHECK(r.product == q(Q, 1));
    CHECK(verify_reciprocity(x_unit(Q), x_unit(Q), SymbolMethod::tame).pass);

    auto f = with_exp(x_unit(C), {0, 1});
    auto rc = verify_reciprocity(f, lin(C, 0, 2), SymbolMethod::plus);
    CHECK(rc.pass);
    REQUIRE(rc.points.size() == 2);
    CHECK(std::abs(at(rc, 0).value.to_complex() - 2.0) < 1e-10);
    CHECK(std::abs(at(rc, 1).value.to_complex() - 0.5) < 1e-10);

    const Field P = Field::padic(5, 8);
    auto rp = verify_reciprocity(x_unit(P), lin(P, 5), SymbolMethod::tame);
    CHECK(rp.pass);
    REQUIRE(rp.points.size() == 3);
    CHECK(at(rp, 0).value == q(P, -5));
    CHECK(at(rp, 1).value == q(P, 1, 5));
    CHECK(at(rp, 2).value == q(P, -1));
    CHECK(rp.points[1].vg == 1);
    CHECK(rp.points[2].vf == -1);
}

TEST_CASE("reports never pass silently") {
    // the contour method has no p-adic meaning: every point errors
    const Field P = Field::padic(5, 8);
    auto r = verify_reciprocity(x_unit(P), lin(P, 5), SymbolMethod::contour);
    CHECK(!r.pass);
    for (const auto& pt : r.points) {
        CHECK(!pt.symbol);
        CHECK(!pt.error.empty());
    }
}

TEST_CASE("property: reciprocity for monomials") {
    Gen g(103);
    for (int trial = 0; trial < 30; ++trial) {
        AnalyticUnit f = AnalyticUnit::constant_unit(q(Q, g.nonzero(-9, 9), g.integer(1, 5)));
        AnalyticUnit h = AnalyticUnit::constant_unit(q(Q, g.nonzero(-9, 9), g.integer(1, 5)));
        if (long n = g.integer(-4, 4)) f.factors.push_back({Scalar::zero(Q), n});
        if (long n = g.integer(-4, 4)) h.factors.push_back({Scalar::zero(Q), n});
        for (auto m : {SymbolMethod::tame, SymbolMethod::plus, SymbolMethod::minus}) {
            auto r = verify_reciprocity(f, h, m);
            CHECK(r.pass);
            CHECK(r.product == q(Q, 1));
        }
    }
}

TEST_CASE("property: exact reciprocity for random rational units") {
    Gen g(107);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = testing_support::random_rational_unit(g, Q, 3, 4);
        auto h = testing_support::random_rational_unit(g, Q, 3, 4);
        auto r = verify_reciprocity(f, h, SymbolMethod::tame);
        CHECK(r.pass);
        CHECK(r.product == q(Q, 1));
        CHECK(r.recompute_product() == r.product);
    }
}

TEST_CASE("property: p-adic reciprocity") {
    for (long p : {5L, 7L}) {
        const Field P = Field::padic(p, 8);
        Gen g(109 + static_cast<unsigned>(p));
        for (int trial = 0; trial < 25; ++trial) {
            auto f = testing_support::random_rational_unit(g, P, 3, 3, p);
            auto h = testing_support::random_rational_unit(g, P, 3, 3, p);
            f.factors.push_back({q(P, p), g.nonzero(-2, 2)});
            auto r = verify_reciprocity(f, h, SymbolMethod::tame);
            CHECK(r.pass);
            CHECK(approx_equal(r.product, q(P, 1)));
        }
    }
}

TEST_CASE("property: regular points contribute 1") {
    Gen g(113);
    for (int trial = 0; trial < 40; ++trial) {
        auto f = testing_support::random_rational_unit(g, Q, 3, 4);
        auto h = testing_support::random_rational_unit(g, Q, 3, 4);
        auto s = PointOnLine::finite(q(Q, 2 * g.integer(-4, 4) + 1, 2));
        for (auto m : {SymbolMethod::tame, SymbolMethod::plus, SymbolMethod::minus})
            CHECK(local_symbol(f, h, s, m).value == q(Q, 1));
    }
}

TEST_CASE("property: product invariant under reordering") {
    Gen g(127);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = testing_support::random_rational_unit(g, Q, 3, 4);
        auto h = testing_support::random_rational_unit(g, Q, 3, 4);
        auto r = verify_reciprocity(f, h, SymbolMethod::tame);
        auto shuffled = r;
        std::shuffle(shuffled.points.begin(), shuffled.points.end(), g.engine());
        CHECK(shuffled.recompute_product() == r.product);
    }
}

TEST_CASE("property: coordinate change") {
    Gen g(131);
    for (int trial = 0; trial < 30; ++trial) {
        auto u = testing_support::random_rational_unit(g, Q, 3, 4);
        mpq_class a(g.integer(-3, 3));
        auto direct = local_expansion(u, PointOnLine::finite(Scalar::rational(a)), 16);
        auto moved = local_expansion(translate(u, a), PointOnLine::finite(Scalar::zero(Q)), 16);
        CHECK(direct == moved);
    }
    Gen ge(137);
    for (int trial = 0; trial < 10; ++trial) {
        auto u = testing_support::random_exp_unit(ge);
        mpq_class a(ge.integer(-2, 2));
        auto direct = local_expansion(u, PointOnLine::finite(Scalar::complex(a.get_d())), 16);
        auto moved = local_expansion(translate(u, a), PointOnLine::finite(Scalar::zero(C)), 16);
        CHECK(max_coeff_diff(direct, moved, -8, 12) < 1e-9 * std::max(1.0, abs_at(direct.coeff(direct.lo()))));
    }
}

TEST_CASE("property: contour symbols satisfy reciprocity for exponential units") {
    Gen g(139);
    ReciprocityOpts o;
    o.tol = 1e-8;
    for (int trial = 0; trial < 10; ++trial) {
        auto f = testing_support::random_exp_unit(g);
        auto h = testing_support::random_exp_unit(g);
        auto r = verify_reciprocity(f, h, SymbolMethod::contour, o);
        CHECK(r.pass);
        CHECK(std::abs(r.product.to_complex() - 1.0) <= 1e-8);
    }
}

TEST_CASE("contour and tame agree on rational units over C") {
    Gen g(149);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = testing_support::random_rational_unit(g, C, 2, 3);
        auto h = testing_support::random_rational_unit(g, C, 2, 3);
        auto rt = verify_reciprocity(f, h, SymbolMethod::tame);
        auto rc = verify_reciprocity(f, h, SymbolMethod::contour);
        REQUIRE(rt.points.size() == rc.points.size());
        for (std::size_t i = 0; i < rt.points.size(); ++i)
            CHECK(std::abs(at(rt, i).value.to_complex() - at(rc, i).value.to_complex()) <=
                  1e-8 * std::max(1.0, abs_at(at(rt, i).value)));
    }
}

TEST_CASE("oracle local symbols") {
    auto f = with_exp(x_unit(C), {0, 1});
    auto s = local_symbol(f, lin(C, 0, 2), PointOnLine::finite(Scalar::zero(C)), SymbolMethod::oracle);
    CHECK(std::abs(s.value.to_complex() - 2.0) < 1e-8);
    auto r = verify_reciprocity(lin(Q, 0), lin(Q, 1, -1), SymbolMethod::oracle);
    CHECK(r.pass);
}
