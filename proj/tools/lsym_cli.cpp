#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lsym/detline.hpp"
#include "lsym/expr.hpp"
#include "lsym/json_io.hpp"

using namespace lsym;

namespace {

struct Common {
    std::string field = "complex";
    long window = 64;
    long samples = 2048;
    double tol = 1e-8;
    std::string rho;
};

void add_common(CLI::App* app, Common& c, bool with_rho) {
    app->add_option("--field", c.field, "rational | complex | padic:<p>:<M>")->capture_default_str();
    app->add_option("--window", c.window, "series window")->capture_default_str()->check(CLI::Range(1L, 100000L));
    app->add_option("--samples", c.samples, "contour samples")->capture_default_str()->check(CLI::Range(8L, 1L << 22));
    app->add_option("--tol", c.tol, "numeric tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    if (with_rho) app->add_option("--rho", c.rho, "radius (default 1 complex, 1/2 p-adic)");
}

mpq_class exact_rho(const Common& c, const Field& F) {
    if (c.rho.empty()) return F.kind == Field::Kind::padic ? mpq_class(1, 2) : mpq_class(1);
    Scalar r = to_scalar(parse_expr(c.rho), Field::rational());
    if (r.as_rational() <= 0) fail(ErrorKind::InvalidArgument, "--rho must be positive");
    return r.as_rational();
}

double real_rho(const Common& c, const Field& F) {
    if (!c.rho.empty() && F.kind == Field::Kind::complex) {
        Scalar r = to_scalar(parse_expr(c.rho), Field::complex());
        double v = r.to_complex().real();
        if (!(v > 0.0) || r.to_complex().imag() != 0.0) fail(ErrorKind::InvalidArgument, "--rho must be positive");
        return v;
    }
    return exact_rho(c, F).get_d();
}

LaurentSeries read_series(const std::string& text, const Field& F, long window) {
    if (!text.empty() && text.front() == '{') {
        LaurentSeries s = series_from_json(json::parse(text));
        if (!(s.field() == F)) fail(ErrorKind::FieldMismatch, "series literal is over " + s.field().name());
        return s;
    }
    auto at = text.rfind('@');
    if (at != std::string::npos) {
        AnalyticUnit u = to_unit(parse_expr(text.substr(0, at)), F);
        return local_expansion(u, parse_point(text.substr(at + 1), F), window);
    }
    return to_series(parse_expr(text), F, window);
}

AnalyticUnit read_unit(const std::string& text, const Field& F) {
    if (!text.empty() && text.front() == '{') return unit_from_json(json::parse(text), F);
    return to_unit(parse_expr(text), F);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local symbols of Laurent series and analytic units"};
    app.require_subcommand(1);

    Common c;
    std::string a, b, method = "tame", at, algorithm = "auto";
    bool graded = false;

    auto* factor = app.add_subcommand("factor", "c t^n g h factorization of a series or of a unit at a point");
    add_common(factor, c, true);
    factor->add_option("--algorithm", algorithm, "auto | one-sided | two-sided")
        ->check(CLI::IsMember({"auto", "one-sided", "two-sided"}))
        ->capture_default_str();
    factor->add_option("input", a, "series in t, JSON series, or unit@point")->required();

    auto* winding = app.add_subcommand("winding", "winding number on |t| = rho");
    add_common(winding, c, true);
    winding->add_option("input", a, "series in t, JSON series, or unit@point")->required();

    auto* symbol = app.add_subcommand("symbol", "local symbol of two units at a point, or of two series");
    add_common(symbol, c, true);
    symbol->add_option("--method", method, "tame | plus | minus | contour | oracle")
        ->check(CLI::IsMember({"tame", "plus", "minus", "contour", "oracle"}))
        ->capture_default_str();
    symbol->add_option("--at", at, "point (a number or inf); omit for series in t");
    symbol->add_flag("--graded", graded, "apply the graded commutativity sign");
    symbol->add_option("f", a)->required();
    symbol->add_option("g", b)->required();

    auto* recip = app.add_subcommand("reciprocity", "product of local symbols over the support");
    add_common(recip, c, false);
    recip->add_option("--method", method, "tame | plus | minus | contour | oracle")
        ->check(CLI::IsMember({"tame", "plus", "minus", "contour", "oracle"}))
        ->capture_default_str();
    recip->add_flag("--graded", graded, "apply the graded commutativity sign");
    recip->add_option("f", a)->required();
    recip->add_option("g", b)->required();

    auto* pairing = app.add_subcommand("pairing", "residue pairing of two series");
    add_common(pairing, c, false);
    pairing->add_option("a", a)->required();
    pairing->add_option("b", b)->required();

    auto* norm = app.add_subcommand("norm", "rho-norm sup |a_i| rho^i");
    add_common(norm, c, true);
    norm->add_option("input", a)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const Field F = Field::parse(c.field);
        if (*factor) {
            FactorOpts o;
            o.window = c.window;
            o.samples = c.samples;
            if (F.kind == Field::Kind::complex) o.rho = real_rho(c, F);
            if (algorithm == "one-sided") o.algorithm = FactorOpts::Algorithm::one_sided;
            if (algorithm == "two-sided") o.algorithm = FactorOpts::Algorithm::two_sided;
            auto at_pos = a.rfind('@');
            if (at_pos != std::string::npos && a.front() != '{') {
                AnalyticUnit u = read_unit(a.substr(0, at_pos), F);
                emit(to_json(local_factorization(u, parse_point(a.substr(at_pos + 1), F), c.window)));
            } else {
                emit(to_json(birkhoff_factor(read_series(a, F, c.window), o)));
            }
        } else if (*winding) {
            if (F.kind != Field::Kind::complex) fail(ErrorKind::FieldMismatch, "winding needs the complex field");
            double rho = real_rho(c, F);
            auto at_pos = a.rfind('@');
            WindingResult w;
            if (at_pos != std::string::npos && a.front() != '{') {
                AnalyticUnit u = read_unit(a.substr(0, at_pos), F);
                w = winding_number_contour(local_contour_fn(u, parse_point(a.substr(at_pos + 1), F)), rho, c.samples);
            } else {
                w = winding_number_contour(read_series(a, F, c.window), rho, c.samples);
            }
            emit(json{{"winding", w.winding}, {"residual", w.residual}});
        } else if (*symbol) {
            SymbolMethod m = parse_symbol_method(method);
            if (!at.empty()) {
                LocalOpts o;
                o.window = c.window;
                o.samples = c.samples;
                o.graded_sign = graded;
                if (!c.rho.empty()) o.radius = real_rho(c, Field::complex());
                emit(to_json(local_symbol(read_unit(a, F), read_unit(b, F), parse_point(at, F), m, o)));
            } else {
                LaurentSeries f = read_series(a, F, c.window), g = read_series(b, F, c.window);
                SymbolOpts so;
                so.factor.window = c.window;
                so.factor.samples = c.samples;
                so.graded_sign = graded;
                SymbolValue v;
                switch (m) {
                    case SymbolMethod::tame: v = tame_symbol(f, g); break;
                    case SymbolMethod::plus: v = plus_symbol(f, g, so); break;
                    case SymbolMethod::minus: v = minus_symbol(f, g, so); break;
                    case SymbolMethod::contour: {
                        ContourOpts co;
                        co.rho = real_rho(c, F);
                        co.samples = c.samples;
                        v = deligne_symbol(f, g, co);
                        break;
                    }
                    case SymbolMethod::oracle: {
                        OracleOpts oo;
                        oo.graded = graded;
                        v = oracle_commutator(f, g, oo);
                        break;
                    }
                }
                emit(to_json(v));
            }
        } else if (*recip) {
            ReciprocityOpts o;
            o.tol = c.tol;
            o.local.window = c.window;
            o.local.samples = c.samples;
            o.local.graded_sign = graded;
            auto r = verify_reciprocity(read_unit(a, F), read_unit(b, F), parse_symbol_method(method), o);
            emit(to_json(r));
            return r.pass ? 0 : 1;
        } else if (*pairing) {
            emit(json{{"value", to_json(residue_pairing(read_series(a, F, c.window), read_series(b, F, c.window)))}});
        } else if (*norm) {
            LaurentSeries s = read_series(a, F, c.window);
            if (F.is_exact()) {
                mpq_class rho = exact_rho(c, F);
                auto n = rho_norm_exact(s, rho);
                emit(json{{"value", n.value.get_d()},
                          {"exact", n.value.get_str()},
                          {"argmax", n.argmax},
                          {"attained_inside", n.attained_inside}});
            } else {
                auto n = rho_norm(s, real_rho(c, F));
                emit(json{{"value", n.value}, {"argmax", n.argmax}, {"attained_inside", n.attained_inside}});
            }
        }
    } catch (const Error& e) {
        std::cerr << "error: " << error_name(e.kind()) << ": " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const json::exception& e) {
        std::cerr << "error: InvalidArgument: malformed JSON: " << e.what() << "\n";
        return exit_code(ErrorKind::InvalidArgument);
    }
    return 0;
}
