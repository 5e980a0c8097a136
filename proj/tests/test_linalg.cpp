#include "doctest.h"

#include "nbox/linalg.hpp"
#include "nbox/rng.hpp"

#include <stdexcept>
#include <vector>

using namespace nbox;

namespace {

MatQ random_matrix(Rng& rng, int n) {
    MatQ m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = rng.small_rational(6);
    return m;
}

SymFormQ random_symmetric(Rng& rng, int n) {
    MatQ m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Rational v = rng.small_rational(5);
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    return SymFormQ(std::move(m));
}

// Leading-principal-minor test, the classical Sylvester criterion, computed
// independently of the pivot routine.
bool pd_by_minors(const SymFormQ& g) {
    for (int k = 1; k <= g.n; ++k) {
        MatQ sub(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub.at(i, j) = g.at(i, j);
        if (determinant(sub).sign() <= 0) return false;
    }
    return true;
}

SymFormQ form_2112() {
    MatQ m(2, 2);
    m.at(0, 0) = 2;
    m.at(0, 1) = 1;
    m.at(1, 0) = 1;
    m.at(1, 1) = 2;
    return SymFormQ(std::move(m));
}

}  // namespace

TEST_CASE("vector arithmetic and rendering") {
    VecQ a{Rational(1), Rational(2)}, b{Rational(3), Rational(-1)};
    CHECK((a + b) == VecQ{Rational(4), Rational(1)});
    CHECK((a - b) == VecQ{Rational(-2), Rational(3)});
    CHECK((Rational(2) * a) == VecQ{Rational(2), Rational(4)});
    CHECK(is_zero(a - a));
    CHECK(!is_zero(a));
    CHECK(vec_str(VecQ{Rational(1, 2), Rational(-3)}) == "(1/2, -3)");
}

TEST_CASE("matrix multiply, transpose, determinant, inverse, solve") {
    Rng rng(211);
    for (int t = 0; t < 200; ++t) {
        int n = static_cast<int>(rng.range(1, 4));
        MatQ m = random_matrix(rng, n);
        Rational det = determinant(m);
        MatQ mt = transpose(m);
        CHECK(determinant(mt) == det);
        if (det.is_zero()) {
            CHECK_THROWS_AS(inverse(m), std::domain_error);
            continue;
        }
        MatQ inv = inverse(m);
        MatQ prod = mul(m, inv);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(prod.at(i, j) == (i == j ? Rational(1) : Rational(0)));
        VecQ b;
        for (int i = 0; i < n; ++i) b.push_back(rng.small_rational(9));
        auto x = solve(m, b);
        REQUIRE(x.has_value());
        for (int i = 0; i < n; ++i) {
            Rational acc(0);
            for (int j = 0; j < n; ++j) acc += m.at(i, j) * (*x)[j];
            CHECK(acc == b[i]);
        }
    }
}

TEST_CASE("symmetric form constructor rejects asymmetry") {
    MatQ m(2, 2);
    m.at(0, 1) = 1;
    CHECK_THROWS_AS(SymFormQ{std::move(m)}, std::invalid_argument);
}

TEST_CASE("elimination pivots of [[2,1],[1,2]] are 2 and 3/2") {
    auto piv = ldl_pivots(form_2112());
    REQUIRE(piv.size() == 2);
    CHECK(piv[0] == Rational(2));
    CHECK(piv[1] == Rational(3, 2));
    CHECK(is_positive_definite(form_2112()));
}

TEST_CASE("positive definiteness agrees with the principal-minor oracle") {
    Rng rng(977);
    int pd_seen = 0;
    for (int t = 0; t < 1000; ++t) {
        int n = static_cast<int>(rng.range(1, 5));
        SymFormQ g = random_symmetric(rng, n);
        bool oracle = pd_by_minors(g);
        CHECK(is_positive_definite(g) == oracle);
        if (oracle) ++pd_seen;
    }
    CHECK(pd_seen > 0);  // the sample hits both outcomes
}

TEST_CASE("pivots multiply to the determinant when all are nonzero") {
    Rng rng(31337);
    for (int t = 0; t < 200; ++t) {
        int n = static_cast<int>(rng.range(1, 4));
        SymFormQ g = random_symmetric(rng, n);
        if (!is_positive_definite(g)) continue;
        auto piv = ldl_pivots(g);
        Rational prod(1);
        for (const auto& p : piv) prod *= p;
        CHECK(prod == determinant(g.m));
    }
}

TEST_CASE("covolume squared of the standard basis under a skew form") {
    MatQ b = MatQ::identity(2);
    LatticeBasis basis(b);
    CHECK(covolume_squared(basis, form_2112()) == Rational(3));
    CHECK(covolume(basis) == Rational(1));
}

TEST_CASE("scaling the basis scales covolume squared by the determinant square") {
    MatQ b(3, 3);
    for (int i = 0; i < 3; ++i) b.at(i, i) = 2;
    CHECK(covolume_squared(LatticeBasis(b), SymFormQ::identity(3)) == Rational(64));
    CHECK(covolume(LatticeBasis(b)) == Rational(8));
}

TEST_CASE("covolume squared is invariant under unimodular column operations") {
    Rng rng(555);
    for (int t = 0; t < 100; ++t) {
        int n = static_cast<int>(rng.range(2, 4));
        MatQ b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                b.at(i, j) = Rational(rng.range(-3, 3)) + (i == j ? Rational(5) : Rational(0));
        SymFormQ g = random_symmetric(rng, n);
        for (int i = 0; i < n; ++i) g.set(i, i, g.at(i, i) + Rational(12));
        if (!is_positive_definite(g)) continue;
        if (determinant(b).is_zero()) continue;
        Rational before = covolume_squared(LatticeBasis(b), g);

        MatQ u = b;
        int ops = static_cast<int>(rng.range(1, 10));
        for (int s = 0; s < ops; ++s) {
            int i = static_cast<int>(rng.range(0, n - 1));
            int j = static_cast<int>(rng.range(0, n - 1));
            long long c = rng.range(-2, 2);
            switch (rng.below(3)) {
                case 0:  // add an integer multiple of one column to another
                    if (i != j)
                        for (int r = 0; r < n; ++r) u.at(r, i) += Rational(c) * u.at(r, j);
                    break;
                case 1:  // swap two columns
                    for (int r = 0; r < n; ++r) std::swap(u.at(r, i), u.at(r, j));
                    break;
                default:  // negate a column
                    for (int r = 0; r < n; ++r) u.at(r, i) = -u.at(r, i);
            }
        }
        CHECK(covolume_squared(LatticeBasis(u), g) == before);
    }
}

TEST_CASE("orthogonal complement in the identity form is the coordinate span") {
    auto comp = ortho_complement({0}, SymFormQ::identity(3));
    REQUIRE(comp.size() == 2);
    CHECK(comp[0] == VecQ{Rational(0), Rational(1), Rational(0)});
    CHECK(comp[1] == VecQ{Rational(0), Rational(0), Rational(1)});
    auto all = ortho_complement({}, SymFormQ::identity(2));
    REQUIRE(all.size() == 2);
    CHECK(all[0] == VecQ{Rational(1), Rational(0)});
}

TEST_CASE("orthogonal complement of the first axis under [[2,1],[1,2]]") {
    auto comp = ortho_complement({0}, form_2112());
    REQUIRE(comp.size() == 1);
    // The line g(e1, v) = 0 is spanned by (-1, 2) up to sign and scale.
    CHECK(form_dot(form_2112(), VecQ{Rational(1), Rational(0)}, comp[0]).is_zero());
    CHECK(!is_zero(comp[0]));
    Rational ratio = comp[0][1] / comp[0][0];
    CHECK(ratio == Rational(-2));
}

TEST_CASE("complement vectors are always form-orthogonal to the pinned axes") {
    Rng rng(808);
    for (int t = 0; t < 100; ++t) {
        int n = static_cast<int>(rng.range(2, 4));
        SymFormQ g = random_symmetric(rng, n);
        for (int i = 0; i < n; ++i) g.set(i, i, g.at(i, i) + Rational(10));
        if (!is_positive_definite(g)) continue;
        std::vector<int> axes;
        for (int i = 0; i < n; ++i)
            if (rng.below(2)) axes.push_back(i);
        auto comp = ortho_complement(axes, g);
        CHECK(comp.size() == static_cast<std::size_t>(n) - axes.size());
        for (const auto& v : comp)
            for (int ax : axes) {
                VecQ e(n, Rational(0));
                e[ax] = 1;
                CHECK(form_dot(g, e, v).is_zero());
            }
    }
}

TEST_CASE("hermite basis spans the same lattice as its generators") {
    std::vector<std::vector<BigInt>> gens = {{BigInt(2), BigInt(0)},
                                             {BigInt(0), BigInt(2)},
                                             {BigInt(1), BigInt(1)}};
    auto h = hnf_basis(gens, 2);
    REQUIRE(h.size() == 2);
    MatQ b(2, 2);
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) b.at(i, j) = Rational(h[j][i]);
    LatticeBasis basis(b);
    // Index-2 sublattice of Z^2: contains the generators, misses e1.
    for (const auto& gvec : gens) {
        VecQ v;
        for (const auto& x : gvec) v.push_back(Rational(x));
        CHECK(in_lattice(basis, v));
    }
    CHECK(!in_lattice(basis, VecQ{Rational(1), Rational(0)}));
    CHECK(covolume(basis) == Rational(2));
}

TEST_CASE("lattice membership handles rational coordinates") {
    MatQ b(2, 2);
    b.at(0, 0) = 1;
    b.at(1, 1) = Rational(1, 2);
    LatticeBasis basis(b);
    CHECK(in_lattice(basis, VecQ{Rational(3), Rational(5, 2)}));
    CHECK(!in_lattice(basis, VecQ{Rational(1, 2), Rational(0)}));
}

TEST_CASE("integer square root ceiling") {
    CHECK(isqrt_ceil(Rational(0)) == 0);
    CHECK(isqrt_ceil(Rational(1)) == 1);
    CHECK(isqrt_ceil(Rational(2)) == 2);
    CHECK(isqrt_ceil(Rational(4)) == 2);
    CHECK(isqrt_ceil(Rational(5)) == 3);
    CHECK(isqrt_ceil(Rational(1, 4)) == 1);
    CHECK(isqrt_ceil(Rational(99, 100)) == 1);
    Rng rng(404);
    for (int t = 0; t < 300; ++t) {
        Rational q(rng.range(0, 100000), rng.range(1, 97));
        BigInt s = isqrt_ceil(q);
        CHECK(Rational(s * s) >= q);
        if (s > 0) CHECK(Rational((s - 1) * (s - 1)) < q);
    }
}
