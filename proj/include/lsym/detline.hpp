#pragma once

#include <utility>
#include <vector>

#include "lsym/symbols.hpp"

namespace lsym {

/// A one-dimensional space with a chosen basis coordinate and an integer grade.
struct GradedLine {
    Scalar basis_scalar;
    long grade = 0;
};

/// Tensor product; with swap the factors are exchanged, costing (-1)^{grade_a grade_b}.
GradedLine graded_mul(const GradedLine& a, const GradedLine& b, bool swap);

/// p_+ o (multiplication by f) on span{t^0..t^M}: entry (i, j) = coefficient of t^{i-j} in f.
struct Compression {
    long window = 0;
    std::vector<Scalar> entries;  // row-major, (M+1)^2

    const Scalar& at(long i, long j) const { return entries[static_cast<std::size_t>(i * (window + 1) + j)]; }
};

constexpr long kMaxCompressionWindow = 256;

Compression plus_compression(const LaurentSeries& f, long M);

struct IndexResult {
    long kernel = 0;
    long cokernel = 0;
    /// dim coker - dim ker
    long index = 0;
};

/// Kernel and cokernel of the compression that belong to the lattice rather than
/// to the truncation edge: null directions are counted by their mass in the low
/// half of the window.
IndexResult compression_index(const Compression& c, double tol = 1e-8);

struct OracleOpts {
    long window = 32;
    /// Windows M and M + certificate_step must agree to this relative tolerance.
    double stabilization_tol = 1e-8;
    long certificate_step = 8;
    /// Carry the graded commutativity sign through the lift bookkeeping.
    bool graded = false;
};

struct CertifiedValue {
    cplx value;
    /// |value(M) - value(M + step)|
    double drift = 0.0;
};

/// det(C(f) C(g) C(fg)^{-1}) for winding-zero units, certified against M + step.
CertifiedValue segal_cocycle(const LaurentSeries& f, const LaurentSeries& g, const OracleOpts& opts = {});
/// det C_M(u) / det C_{M-1}(u): the lift of t conjugating the lift of u.
CertifiedValue szego_ratio(const LaurentSeries& u, const OracleOpts& opts = {});

/// Letter of a wedge word in the lattice model: basis vector (or dual vector)
/// e_index in block `block`.
struct LatticeLetter {
    int block = 0;
    long index = 0;
    bool vector = true;
    bool operator==(const LatticeLetter&) const = default;
};
using LatticeWord = std::vector<LatticeLetter>;

/// Basis word of Det(t^m) on one block: e_0..e_{m-1} for m >= 0, duals of e_m..e_{-1} otherwise.
LatticeWord canonical_word(long m, int block = 0);

/// Contracts vector/dual pairs and sorts; returns the sign and the reduced word.
std::pair<int, LatticeWord> reduce_word(LatticeWord w);

struct BlockMonomial {
    Scalar c;
    long n = 0;
};

/// rho_{f,g}: Det(f) (x) Det(g) -> Det(fg) on canonical bases, for block-diagonal monomials.
GradedLine compose_lines(const std::vector<BlockMonomial>& f, const std::vector<BlockMonomial>& g);

/// Commutator of the lifts of two block-diagonal monomials.
Scalar monomial_commutator(const std::vector<BlockMonomial>& f, const std::vector<BlockMonomial>& g, bool graded);

/// Commutator of lifts computed on finite windows (complex arithmetic).
SymbolValue oracle_commutator(const LaurentSeries& f, const LaurentSeries& g, const OracleOpts& opts = {});

/// Commutator for a block-diagonal pair: blocks[b] = (f_b, g_b).
SymbolValue block_oracle(const std::vector<std::pair<LaurentSeries, LaurentSeries>>& blocks,
                         const OracleOpts& opts = {});

struct BlockCheck {
    cplx whole;
    cplx product;
    bool pass = false;
};

/// Compares the commutator of the block-diagonal pair with the product of blockwise commutators.
BlockCheck block_sum_check(const std::vector<std::pair<LaurentSeries, LaurentSeries>>& blocks,
                           const OracleOpts& opts = {}, double tol = 1e-8);

}  // namespace lsym
