#pragma once

// Exact linear algebra over the rationals, sized for small dimensions
// (everything in this project lives in dimension <= 8).

#include "nbox/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nbox {

using VecQ = std::vector<Rational>;

VecQ operator+(const VecQ& a, const VecQ& b);
VecQ operator-(const VecQ& a, const VecQ& b);
VecQ operator*(const Rational& c, const VecQ& v);
bool is_zero(const VecQ& v);
std::string vec_str(const VecQ& v);

// Dense rational matrix, row major.
struct MatQ {
    int rows = 0;
    int cols = 0;
    std::vector<Rational> a;

    MatQ() = default;
    MatQ(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
    Rational& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const Rational& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    VecQ col(int c) const;
    static MatQ identity(int n);
};

MatQ mul(const MatQ& x, const MatQ& y);
MatQ transpose(const MatQ& x);
Rational determinant(MatQ m);
MatQ inverse(const MatQ& m);  // throws std::domain_error if singular
// Solves m x = b; nullopt if singular (m square).
std::optional<VecQ> solve(const MatQ& m, const VecQ& b);

// Symmetric rational form; the constructor enforces symmetry.
struct SymFormQ {
    int n = 0;
    MatQ m;

    SymFormQ() = default;
    explicit SymFormQ(MatQ full);  // throws std::invalid_argument if not symmetric
    static SymFormQ identity(int n);
    static SymFormQ zero(int n);
    const Rational& at(int i, int j) const { return m.at(i, j); }
    void set(int i, int j, const Rational& v) { m.at(i, j) = v; m.at(j, i) = v; }
};

// g(v, w) = v^T g w.
Rational form_dot(const SymFormQ& g, const VecQ& v, const VecQ& w);
Rational form_norm2(const SymFormQ& g, const VecQ& v);

// Pivots of the symmetric elimination g = L D L^T, computed exactly.
// Stops after the first pivot that is <= 0 (that pivot is included), so the
// result certifies definiteness: g is positive definite iff all n pivots are
// present and positive.  The pivots equal ratios of leading principal minors.
std::vector<Rational> ldl_pivots(const SymFormQ& g);
bool is_positive_definite(const SymFormQ& g);

// n linearly independent columns (a full-rank lattice basis).
struct LatticeBasis {
    int n = 0;
    MatQ b;  // n x n, column j is the j-th basis vector

    LatticeBasis() = default;
    explicit LatticeBasis(MatQ cols);  // throws std::invalid_argument if rank-deficient
    VecQ vec(int j) const { return b.col(j); }
};

// det(B^T g B); rejects non-positive-definite g.
Rational covolume_squared(const LatticeBasis& basis, const SymFormQ& g);
// |det B|, the Lebesgue covolume of the lattice.
Rational covolume(const LatticeBasis& basis);

// Basis of { v : g(e_i, v) = 0 for all i in axes }, axes are 0-based coordinate
// indices.  Vectors are normalized to primitive integer form with a positive
// leading entry, ordered by their free-coordinate pivot.
std::vector<VecQ> ortho_complement(const std::vector<int>& axes, const SymFormQ& g);

// Column-style Hermite normal form of the integer span of `gens` (each a
// length-n integer vector).  Requires full rank; the result is the canonical
// lower-triangular basis with positive diagonal and reduced off-diagonals.
std::vector<std::vector<BigInt>> hnf_basis(const std::vector<std::vector<BigInt>>& gens, int n);

// Membership of d in the integer span of basis (basis columns rational).
bool in_lattice(const LatticeBasis& basis, const VecQ& d);

// Smallest s >= 0 with s^2 >= q (q a nonnegative rational).
BigInt isqrt_ceil(const Rational& q);

}  // namespace nbox
