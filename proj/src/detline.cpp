#include "lsym/detline.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace lsym {

namespace {

using Mat = Eigen::MatrixXcd;

Mat to_matrix(const Compression& c) {
    const long n = c.window + 1;
    Mat m(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) m(i, j) = c.at(i, j).to_complex();
    return m;
}

cplx determinant(const LaurentSeries& f, long M) {
    Eigen::FullPivLU<Mat> lu(to_matrix(plus_compression(f, M)));
    if (!lu.isInvertible())
        fail(ErrorKind::SingularCompression, "compression is singular at window " + std::to_string(M));
    return lu.determinant();
}

LaurentSeries product_for_window(const LaurentSeries& f, const LaurentSeries& g, long M) {
    try {
        return series_mul(f, g);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::EmptyReliableWindow) throw;
        return series_mul_window(f, g, -M, M);
    }
}

cplx segal_at(const LaurentSeries& f, const LaurentSeries& g, const LaurentSeries& fg, long M) {
    return determinant(f, M) * determinant(g, M) / determinant(fg, M);
}

void certify(const CertifiedValue& v, const OracleOpts& opts, const char* what) {
    if (!(v.drift <= opts.stabilization_tol * std::max(1.0, std::abs(v.value))))
        fail(ErrorKind::NotStabilized, std::string(what) + " moved by " + std::to_string(v.drift) +
                                           " between windows; enlarge the window");
}

bool is_one(const LaurentSeries& u) { return u.is_monomial() && u.lo() == 0 && u.coeffs()[0] == Scalar::one(u.field()); }

struct Decomposed {
    BlockMonomial mono;
    LaurentSeries u;
};

// f = a t^n u with n the compression index and a the raw coefficient there.
Decomposed decompose(const LaurentSeries& f, const OracleOpts& opts) {
    if (f.field().kind == Field::Kind::padic) fail(ErrorKind::FieldMismatch, "the window oracle works over Q or C");
    long n = compression_index(plus_compression(f, opts.window)).index;
    if (!f.known(n) || f.coeff(n).is_zero())
        fail(ErrorKind::NotPrincipalUnit, "no usable coefficient at the compression index " + std::to_string(n));
    Scalar a = f.coeff(n);
    return {{a, n}, f.shift(-n).scale(inverse(a))};
}

}  // namespace

GradedLine graded_mul(const GradedLine& a, const GradedLine& b, bool swap) {
    Scalar v = a.basis_scalar * b.basis_scalar;
    if (swap && (a.grade * b.grade) % 2 != 0) v = -v;
    return {v, a.grade + b.grade};
}

Compression plus_compression(const LaurentSeries& f, long M) {
    if (M < 0 || M > kMaxCompressionWindow)
        fail(ErrorKind::InvalidArgument, "compression window must lie in [0, 256]");
    Compression c;
    c.window = M;
    c.entries.reserve(static_cast<std::size_t>((M + 1) * (M + 1)));
    for (long i = 0; i <= M; ++i)
        for (long j = 0; j <= M; ++j) c.entries.push_back(f.coeff(i - j));
    return c;
}

IndexResult compression_index(const Compression& c, double tol) {
    Mat m = to_matrix(c);
    Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const long n = c.window + 1, half = n / 2;
    double cut = tol * (s.size() > 0 ? s(0) : 0.0);
    double ker_mass = 0.0, coker_mass = 0.0;
    for (long k = 0; k < n; ++k) {
        if (s(k) > cut) continue;
        for (long i = 0; i < half; ++i) {
            ker_mass += std::norm(svd.matrixV()(i, k));
            coker_mass += std::norm(svd.matrixU()(i, k));
        }
    }
    IndexResult r;
    r.kernel = std::lround(ker_mass);
    r.cokernel = std::lround(coker_mass);
    r.index = r.cokernel - r.kernel;
    return r;
}

CertifiedValue segal_cocycle(const LaurentSeries& f, const LaurentSeries& g, const OracleOpts& opts) {
    const long M = opts.window, M2 = opts.window + opts.certificate_step;
    LaurentSeries fg = product_for_window(f, g, M2);
    cplx a = segal_at(f, g, fg, M), b = segal_at(f, g, fg, M2);
    CertifiedValue v{b, std::abs(a - b)};
    certify(v, opts, "segal cocycle");
    return v;
}

CertifiedValue szego_ratio(const LaurentSeries& u, const OracleOpts& opts) {
    const long M = opts.window, M2 = opts.window + opts.certificate_step;
    if (M < 1) fail(ErrorKind::InvalidArgument, "window must be >= 1");
    cplx a = determinant(u, M) / determinant(u, M - 1);
    cplx b = determinant(u, M2) / determinant(u, M2 - 1);
    CertifiedValue v{b, std::abs(a - b)};
    certify(v, opts, "szego ratio");
    return v;
}

LatticeWord canonical_word(long m, int block) {
    LatticeWord w;
    if (m >= 0)
        for (long i = 0; i < m; ++i) w.push_back({block, i, true});
    else
        for (long i = m; i < 0; ++i) w.push_back({block, i, false});
    return w;
}

std::pair<int, LatticeWord> reduce_word(LatticeWord w) {
    int sign = 1;
    auto same_slot = [](const LatticeLetter& a, const LatticeLetter& b) {
        return a.block == b.block && a.index == b.index;
    };
    // contract a vector against its dual: bring the partner next to it, then drop both
    bool found = true;
    while (found) {
        found = false;
        for (std::size_t j = 0; j < w.size() && !found; ++j)
            for (std::size_t k = j + 1; k < w.size() && !found; ++k)
                if (same_slot(w[j], w[k]) && w[j].vector != w[k].vector) {
                    if ((k - j - 1) % 2 != 0) sign = -sign;
                    w.erase(w.begin() + static_cast<long>(k));
                    w.erase(w.begin() + static_cast<long>(j));
                    found = true;
                }
    }
    auto key_less = [](const LatticeLetter& a, const LatticeLetter& b) {
        return a.block != b.block ? a.block < b.block : a.index < b.index;
    };
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
            if (key_less(w[j + 1], w[j])) {
                std::swap(w[j], w[j + 1]);
                sign = -sign;
            }
    return {sign, w};
}

GradedLine compose_lines(const std::vector<BlockMonomial>& f, const std::vector<BlockMonomial>& g) {
    if (f.size() != g.size() || f.empty()) fail(ErrorKind::InvalidArgument, "block counts differ");
    const Field& F = f[0].c.field();
    LatticeWord w, target;
    Scalar scale = Scalar::one(F);
    long grade = 0;
    for (std::size_t b = 0; b < f.size(); ++b) {
        auto part = canonical_word(f[b].n, static_cast<int>(b));
        w.insert(w.end(), part.begin(), part.end());
    }
    for (std::size_t b = 0; b < g.size(); ++b) {
        // f carries the lattice word of g along, scaling each letter by c_f^{+-1}
        for (auto letter : canonical_word(g[b].n, static_cast<int>(b))) {
            letter.index += f[b].n;
            w.push_back(letter);
        }
        scale *= pow(f[b].c, g[b].n);
        auto part = canonical_word(f[b].n + g[b].n, static_cast<int>(b));
        target.insert(target.end(), part.begin(), part.end());
        grade += f[b].n + g[b].n;
    }
    auto [sign, reduced] = reduce_word(std::move(w));
    if (!(reduced == target)) fail(ErrorKind::InvalidArgument, "lattice word did not reduce to the canonical basis");
    return {sign > 0 ? scale : -scale, grade};
}

Scalar monomial_commutator(const std::vector<BlockMonomial>& f, const std::vector<BlockMonomial>& g, bool graded) {
    const Field& F = f.at(0).c.field();
    long nf = 0, ng = 0;
    for (const auto& m : f) nf += m.n;
    for (const auto& m : g) ng += m.n;
    GradedLine lf{Scalar::one(F), nf}, lg{Scalar::one(F), ng};
    GradedLine fg = graded_mul(compose_lines(f, g), graded_mul(lf, lg, false), false);
    GradedLine gf = graded_mul(compose_lines(g, f), graded_mul(lg, lf, graded), false);
    return gf.basis_scalar / fg.basis_scalar;
}

SymbolValue block_oracle(const std::vector<std::pair<LaurentSeries, LaurentSeries>>& blocks,
                         const OracleOpts& opts) {
    if (blocks.empty()) fail(ErrorKind::InvalidArgument, "no blocks");
    std::vector<BlockMonomial> mf, mg;
    cplx num = 1.0, den = 1.0;
    double rel = 0.0;
    for (const auto& [f, g] : blocks) {
        Decomposed df = decompose(f, opts), dg = decompose(g, opts);
        mf.push_back({Scalar::complex(df.mono.c.to_complex()), df.mono.n});
        mg.push_back({Scalar::complex(dg.mono.c.to_complex()), dg.mono.n});
        // (t^n1, u2) and (u1, t^n2) by conjugating with the shift
        if (df.mono.n != 0 && !is_one(dg.u)) {
            auto s = szego_ratio(dg.u, opts);
            num *= std::pow(s.value, static_cast<int>(df.mono.n));
            rel += std::labs(df.mono.n) * s.drift / std::abs(s.value);
        }
        if (dg.mono.n != 0 && !is_one(df.u)) {
            auto s = szego_ratio(df.u, opts);
            den *= std::pow(s.value, static_cast<int>(dg.mono.n));
            rel += std::labs(dg.mono.n) * s.drift / std::abs(s.value);
        }
        // (u1, u2) from the cocycle in both orders
        if (!is_one(df.u) && !is_one(dg.u)) {
            auto a = segal_cocycle(df.u, dg.u, opts), b = segal_cocycle(dg.u, df.u, opts);
            num *= a.value;
            den *= b.value;
            rel += a.drift / std::abs(a.value) + b.drift / std::abs(b.value);
        }
    }
    cplx mono = monomial_commutator(mf, mg, opts.graded).to_complex();
    cplx v = mono * (num / den);
    double err = std::abs(v) * (rel + 1e-14 * static_cast<double>(blocks.size()));
    return {Scalar::complex(v), SymbolValue::Method::oracle, err};
}

SymbolValue oracle_commutator(const LaurentSeries& f, const LaurentSeries& g, const OracleOpts& opts) {
    return block_oracle({{f, g}}, opts);
}

BlockCheck block_sum_check(const std::vector<std::pair<LaurentSeries, LaurentSeries>>& blocks,
                           const OracleOpts& opts, double tol) {
    BlockCheck r;
    SymbolValue whole = block_oracle(blocks, opts);
    r.whole = whole.value.to_complex();
    r.product = 1.0;
    double err = whole.err;
    for (const auto& blk : blocks) {
        SymbolValue s = oracle_commutator(blk.first, blk.second, opts);
        r.product *= s.value.to_complex();
        err += s.err;
    }
    r.pass = std::abs(r.whole - r.product) <= tol * std::max(1.0, std::abs(r.product)) + err;
    return r;
}

}  // namespace lsym
