#include "nbox/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace nbox {

VecQ operator+(const VecQ& a, const VecQ& b) {
    VecQ r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

VecQ operator-(const VecQ& a, const VecQ& b) {
    VecQ r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

VecQ operator*(const Rational& c, const VecQ& v) {
    VecQ r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

bool is_zero(const VecQ& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

std::string vec_str(const VecQ& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].str();
    }
    return s + ")";
}

VecQ MatQ::col(int c) const {
    VecQ v(rows);
    for (int r = 0; r < rows; ++r) v[r] = at(r, c);
    return v;
}

MatQ MatQ::identity(int n) {
    MatQ m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

MatQ mul(const MatQ& x, const MatQ& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix size mismatch");
    MatQ r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x.at(i, k).is_zero()) continue;
            for (int j = 0; j < y.cols; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
        }
    return r;
}

MatQ transpose(const MatQ& x) {
    MatQ r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

Rational determinant(MatQ m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
    int n = m.rows;
    Rational det(1);
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (!m.at(i, k).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) return Rational(0);
        if (p != k) {
            for (int j = k; j < n; ++j) std::swap(m.at(p, j), m.at(k, j));
            det = -det;
        }
        det *= m.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            if (m.at(i, k).is_zero()) continue;
            Rational f = m.at(i, k) / m.at(k, k);
            for (int j = k; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
        }
    }
    return det;
}

namespace {

// Gauss-Jordan on [m | rhs]; returns false if m is singular.
bool eliminate(MatQ& m, MatQ& rhs) {
    int n = m.rows;
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (!m.at(i, k).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) return false;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(k, j));
            for (int j = 0; j < rhs.cols; ++j) std::swap(rhs.at(p, j), rhs.at(k, j));
        }
        Rational inv = Rational(1) / m.at(k, k);
        for (int j = 0; j < n; ++j) m.at(k, j) *= inv;
        for (int j = 0; j < rhs.cols; ++j) rhs.at(k, j) *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == k || m.at(i, k).is_zero()) continue;
            Rational f = m.at(i, k);
            for (int j = 0; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
            for (int j = 0; j < rhs.cols; ++j) rhs.at(i, j) -= f * rhs.at(k, j);
        }
    }
    return true;
}

}  // namespace

MatQ inverse(const MatQ& m) {
    if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square matrix");
    MatQ a = m;
    MatQ rhs = MatQ::identity(m.rows);
    if (!eliminate(a, rhs)) throw std::domain_error("matrix is singular");
    return rhs;
}

std::optional<VecQ> solve(const MatQ& m, const VecQ& b) {
    if (m.rows != m.cols || static_cast<int>(b.size()) != m.rows)
        throw std::invalid_argument("solve size mismatch");
    MatQ a = m;
    MatQ rhs(m.rows, 1);
    for (int i = 0; i < m.rows; ++i) rhs.at(i, 0) = b[i];
    if (!eliminate(a, rhs)) return std::nullopt;
    return rhs.col(0);
}

SymFormQ::SymFormQ(MatQ full) {
    if (full.rows != full.cols) throw std::invalid_argument("symmetric form must be square");
    for (int i = 0; i < full.rows; ++i)
        for (int j = i + 1; j < full.cols; ++j)
            if (full.at(i, j) != full.at(j, i))
                throw std::invalid_argument("matrix is not symmetric");
    n = full.rows;
    m = std::move(full);
}

SymFormQ SymFormQ::identity(int n) { return SymFormQ(MatQ::identity(n)); }

SymFormQ SymFormQ::zero(int n) { return SymFormQ(MatQ(n, n)); }

Rational form_dot(const SymFormQ& g, const VecQ& v, const VecQ& w) {
    Rational s;
    for (int i = 0; i < g.n; ++i) {
        if (v[i].is_zero()) continue;
        for (int j = 0; j < g.n; ++j) s += v[i] * g.at(i, j) * w[j];
    }
    return s;
}

Rational form_norm2(const SymFormQ& g, const VecQ& v) { return form_dot(g, v, v); }

std::vector<Rational> ldl_pivots(const SymFormQ& g) {
    MatQ a = g.m;
    int n = g.n;
    std::vector<Rational> pivots;
    for (int k = 0; k < n; ++k) {
        Rational p = a.at(k, k);
        pivots.push_back(p);
        if (p.sign() <= 0) break;
        for (int i = k + 1; i < n; ++i) {
            if (a.at(i, k).is_zero()) continue;
            Rational f = a.at(i, k) / p;
            for (int j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
        }
    }
    return pivots;
}

bool is_positive_definite(const SymFormQ& g) {
    auto piv = ldl_pivots(g);
    if (static_cast<int>(piv.size()) != g.n) return false;
    for (const auto& p : piv)
        if (p.sign() <= 0) return false;
    return true;
}

LatticeBasis::LatticeBasis(MatQ cols) {
    if (cols.rows != cols.cols) throw std::invalid_argument("lattice basis must be square");
    if (determinant(cols).is_zero())
        throw std::invalid_argument("lattice basis vectors are dependent");
    n = cols.rows;
    b = std::move(cols);
}

Rational covolume_squared(const LatticeBasis& basis, const SymFormQ& g) {
    if (g.n != basis.n) throw std::invalid_argument("metric/basis size mismatch");
    if (!is_positive_definite(g))
        throw std::domain_error("metric is not positive definite");
    return determinant(mul(transpose(basis.b), mul(g.m, basis.b)));
}

Rational covolume(const LatticeBasis& basis) { return determinant(basis.b).abs(); }

std::vector<VecQ> ortho_complement(const std::vector<int>& axes, const SymFormQ& g) {
    int n = g.n;
    // Row-reduce the |axes| x n system g(e_i, .) = 0 and read off the kernel.
    MatQ rowsm(static_cast<int>(axes.size()), n);
    for (std::size_t r = 0; r < axes.size(); ++r) {
        if (axes[r] < 0 || axes[r] >= n) throw std::invalid_argument("axis out of range");
        for (int j = 0; j < n; ++j) rowsm.at(static_cast<int>(r), j) = g.at(axes[r], j);
    }
    int nr = rowsm.rows;
    std::vector<int> pivot_col;
    int lead = 0;
    for (int r = 0; r < nr && lead < n; ++r) {
        int p = -1;
        while (lead < n) {
            for (int i = r; i < nr; ++i)
                if (!rowsm.at(i, lead).is_zero()) {
                    p = i;
                    break;
                }
            if (p >= 0) break;
            ++lead;
        }
        if (p < 0) break;
        if (p != r)
            for (int j = 0; j < n; ++j) std::swap(rowsm.at(p, j), rowsm.at(r, j));
        Rational inv = Rational(1) / rowsm.at(r, lead);
        for (int j = 0; j < n; ++j) rowsm.at(r, j) *= inv;
        for (int i = 0; i < nr; ++i) {
            if (i == r || rowsm.at(i, lead).is_zero()) continue;
            Rational f = rowsm.at(i, lead);
            for (int j = 0; j < n; ++j) rowsm.at(i, j) -= f * rowsm.at(r, j);
        }
        pivot_col.push_back(lead);
        ++lead;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<VecQ> basis;
    for (int freec = 0; freec < n; ++freec) {
        if (is_pivot[freec]) continue;
        VecQ v(n, Rational(0));
        v[freec] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            v[pivot_col[r]] = -rowsm.at(static_cast<int>(r), freec);
        // Normalize to a primitive integer vector with positive leading entry.
        BigInt lcm = 1;
        for (const auto& x : v) lcm = boost::multiprecision::lcm(lcm, x.den());
        BigInt gcd = 0;
        for (auto& x : v) {
            x *= Rational(lcm);
            gcd = boost::multiprecision::gcd(gcd, x.num());
        }
        if (gcd > 1)
            for (auto& x : v) x /= Rational(gcd);
        for (const auto& x : v) {
            if (x.is_zero()) continue;
            if (x.sign() < 0)
                for (auto& y : v) y = -y;
            break;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::vector<BigInt>> hnf_basis(const std::vector<std::vector<BigInt>>& gens, int n) {
    // Column echelon over the integers: repeatedly use gcd-style column
    // combinations to clear a row, keeping one pivot column per row.
    std::vector<std::vector<BigInt>> cols = gens;
    for (auto& c : cols)
        if (static_cast<int>(c.size()) != n) throw std::invalid_argument("generator size mismatch");
    std::vector<std::vector<BigInt>> basis;
    for (int row = 0; row < n; ++row) {
        // Gather columns with zero entries above `row`.
        int piv = -1;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j][row] != 0) {
                if (piv < 0) {
                    piv = static_cast<int>(j);
                    continue;
                }
                // Euclidean step on (cols[piv], cols[j]) in this row.
                while (cols[j][row] != 0) {
                    BigInt q = cols[piv][row] / cols[j][row];
                    for (int r = 0; r < n; ++r) cols[piv][r] -= q * cols[j][r];
                    std::swap(cols[piv], cols[j]);
                }
            }
        }
        if (piv < 0) throw std::invalid_argument("generators are rank-deficient");
        std::vector<BigInt> pcol = cols[piv];
        if (pcol[row] < 0)
            for (auto& x : pcol) x = -x;
        // Zero-out this row in remaining columns and drop exhausted ones.
        std::vector<std::vector<BigInt>> rest;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (static_cast<int>(j) == piv) continue;
            auto c = cols[j];
            if (c[row] != 0) {
                BigInt q = c[row] / pcol[row];  // exact after elimination above
                for (int r = 0; r < n; ++r) c[r] -= q * pcol[r];
            }
            bool zero = true;
            for (const auto& x : c)
                if (x != 0) {
                    zero = false;
                    break;
                }
            if (!zero) rest.push_back(std::move(c));
        }
        basis.push_back(std::move(pcol));
        cols = std::move(rest);
    }
    // Reduce earlier columns against later pivots for a canonical form.
    for (int j = 0; j < n; ++j)
        for (int i = j + 1; i < n; ++i) {
            BigInt p = basis[i][i];
            BigInt q = basis[j][i] / p;
            if (basis[j][i] - q * p < 0) --q;  // floored division
            if (q != 0)
                for (int r = 0; r < n; ++r) basis[j][r] -= q * basis[i][r];
        }
    return basis;
}

bool in_lattice(const LatticeBasis& basis, const VecQ& d) {
    auto c = solve(basis.b, d);
    if (!c) return false;
    for (const auto& x : *c)
        if (!x.is_integer()) return false;
    return true;
}

BigInt isqrt_ceil(const Rational& q) {
    if (q.sign() < 0) throw std::domain_error("isqrt of negative rational");
    if (q.is_zero()) return 0;
    BigInt under = q.num() / q.den();
    BigInt s = boost::multiprecision::sqrt(under);  // floor of an underestimate
    while (Rational(s * s) < q) ++s;
    while (s > 0 && Rational((s - 1) * (s - 1)) >= q) --s;
    return s;
}

}  // namespace nbox
