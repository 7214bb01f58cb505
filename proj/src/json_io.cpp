#include "lsym/json_io.hpp"

#include "lsym/expr.hpp"

namespace lsym {

namespace {

using K = Field::Kind;

std::vector<mpq_class> rationals_from_json(const json& j) {
    std::vector<mpq_class> out;
    for (const auto& c : j) {
        if (c.is_number_integer()) {
            out.push_back(mpq_class(c.get<long>()));
            continue;
        }
        mpq_class q(c.get<std::string>(), 10);
        q.canonicalize();
        out.push_back(q);
    }
    return out;
}

json rationals_to_json(const std::vector<mpq_class>& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(q.get_str());
    return a;
}

}  // namespace

json to_json(const Scalar& s) {
    switch (s.field().kind) {
        case K::rational: return s.as_rational().get_str();
        case K::complex: return json{{"re", s.to_complex().real()}, {"im", s.to_complex().imag()}};
        case K::padic: {
            const auto& v = s.as_padic();
            json j{{"p", s.field().p}, {"M", s.field().M}};
            if (v.val == PAdicValue::kInfinite) {
                j["valuation"] = nullptr;
                j["unit"] = "0";
            } else {
                j["valuation"] = v.val;
                j["unit"] = v.unit.get_str();
            }
            auto r = rational_reconstruction(s);
            j["rational"] = r ? json(r->get_str()) : json(nullptr);
            return j;
        }
    }
    return nullptr;
}

Scalar scalar_from_json(const json& j, const Field& field) {
    if (j.is_number()) {
        if (field.kind == K::complex) return Scalar::complex(cplx(j.get<double>()));
        if (j.is_number_integer()) return Scalar::from_int(field, j.get<long>());
        fail(ErrorKind::InvalidArgument, "floating-point literal over an exact field");
    }
    if (j.is_string()) return to_scalar(parse_expr(j.get<std::string>()), field);
    if (j.is_object() && j.contains("re")) {
        if (field.kind != K::complex) fail(ErrorKind::FieldMismatch, "complex literal over an exact field");
        return Scalar::complex(cplx(j.at("re").get<double>(), j.value("im", 0.0)));
    }
    if (j.is_object() && j.contains("p")) {
        if (field.kind != K::padic || j.at("p").get<long>() != field.p)
            fail(ErrorKind::FieldMismatch, "p-adic literal over another field");
        if (j.at("valuation").is_null()) return Scalar::zero(field);
        PAdicValue v;
        v.val = j.at("valuation").get<long>();
        v.unit = mpz_class(j.at("unit").get<std::string>(), 10);
        v.prec = field.M;
        return Scalar::padic_raw(field, v);
    }
    fail(ErrorKind::InvalidArgument, "unrecognized scalar JSON: " + j.dump());
}

json to_json(const LaurentSeries& s) {
    json cs = json::array();
    for (const auto& c : s.coeffs()) cs.push_back(to_json(c));
    return json{{"field", s.field().name()},
                {"lo", s.lo()},
                {"coeffs", cs},
                {"lo_exact", s.lo_exact()},
                {"hi_exact", s.hi_exact()}};
}

LaurentSeries series_from_json(const json& j) {
    try {
        Field f = Field::parse(j.at("field").get<std::string>());
        std::vector<Scalar> cs;
        for (const auto& c : j.at("coeffs")) cs.push_back(scalar_from_json(c, f));
        return LaurentSeries(f, j.at("lo").get<long>(), cs, j.value("lo_exact", true), j.value("hi_exact", true));
    } catch (const json::exception& e) {
        fail(ErrorKind::InvalidArgument, std::string("malformed series JSON: ") + e.what());
    }
}

json to_json(const BirkhoffFactorization& f) {
    return json{{"c", to_json(f.c)}, {"n", f.n}, {"g", to_json(f.g)}, {"h", to_json(f.h)}};
}

json to_json(const SymbolValue& v) {
    return json{{"value", to_json(v.value)}, {"method", method_name(v.method)}, {"err", v.err}};
}

json to_json(const AnalyticUnit& u) {
    json fs = json::array();
    for (const auto& [r, m] : u.factors) fs.push_back(json::array({to_json(r), m}));
    return json{{"constant", to_json(u.constant)},
                {"factors", fs},
                {"exp_num", rationals_to_json(u.exp_num)},
                {"exp_den", rationals_to_json(u.exp_den)}};
}

AnalyticUnit unit_from_json(const json& j, const Field& field) {
    try {
        AnalyticUnit u;
        u.constant = scalar_from_json(j.at("constant"), field);
        for (const auto& f : j.value("factors", json::array()))
            u.factors.push_back({scalar_from_json(f.at(0), field), f.at(1).get<long>()});
        if (j.contains("exp_num")) u.exp_num = rationals_from_json(j.at("exp_num"));
        if (j.contains("exp_den")) u.exp_den = rationals_from_json(j.at("exp_den"));
        u.validate();
        return u;
    } catch (const json::exception& e) {
        fail(ErrorKind::InvalidArgument, std::string("malformed unit JSON: ") + e.what());
    }
}

json to_json(const PointOnLine& p) { return p.infinite ? json("inf") : to_json(p.a); }

json to_json(const ReciprocityReport& r) {
    json pts = json::array();
    for (const auto& p : r.points) {
        json j{{"point", to_json(p.point)}, {"vf", p.vf}, {"vg", p.vg}};
        if (p.symbol) j["symbol"] = to_json(*p.symbol);
        else j["error"] = p.error;
        pts.push_back(j);
    }
    return json{{"method", symbol_method_name(r.method)},
                {"points", pts},
                {"product", to_json(r.recompute_product())},
                {"pass", r.pass},
                {"err", r.err}};
}

}  // namespace lsym
