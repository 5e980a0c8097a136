#include "doctest.h"

#include "nbox/classify.hpp"
#include "nbox/flatgeom.hpp"
#include "nbox/moduli.hpp"
#include "nbox/rng.hpp"

#include <algorithm>
#include <set>
#include <vector>

using namespace nbox;

namespace {

GroupSpec full_sign_group(int n) {
    std::vector<std::string> gens, phis;
    for (int i = 0; i < n; ++i) {
        std::string s(n, '+');
        s[i] = '-';
        gens.push_back(s);
        phis.push_back(std::string(n, '0'));
    }
    return GroupSpec::make(n, gens, phis);
}

SymFormQ form_2112() {
    MatQ m(2, 2);
    m.at(0, 0) = 2;
    m.at(0, 1) = 1;
    m.at(1, 0) = 1;
    m.at(1, 1) = 2;
    return SymFormQ(std::move(m));
}

LatticeBasis std_basis(int n) { return LatticeBasis(MatQ::identity(n)); }

bool contains_vec(const std::vector<VecQ>& vs, const VecQ& v) {
    return std::find(vs.begin(), vs.end(), v) != vs.end();
}

VecQ qvec(std::vector<Rational> v) { return v; }

}  // namespace

TEST_CASE("extremal lattice of the full sign group is the integer grid") {
    for (int n = 1; n <= 3; ++n) {
        LatticeResult lr = extremal_lattice(full_sign_group(n));
        CHECK(lr.ok());
        CHECK(lr.box_checks_applied);
        CHECK(lr.lattice.covol == Rational(1));
        CHECK(is_zero(lr.lattice.origin));
        for (int j = 0; j < n; ++j) {
            VecQ e(static_cast<std::size_t>(n), Rational(0));
            e[static_cast<std::size_t>(j)] = 1;
            CHECK(in_lattice(lr.lattice.basis, e));
        }
    }
}

TEST_CASE("twisted cube action halves the third lattice direction") {
    GroupSpec g = GroupSpec::make(3, {"-++", "+-+", "++-"}, {"001", "001", "001"});
    LatticeResult lr = extremal_lattice(g);
    CHECK(lr.ok());
    CHECK(lr.lattice.covol == Rational(1, 2));
    CHECK(in_lattice(lr.lattice.basis, qvec({1, 0, 0})));
    CHECK(in_lattice(lr.lattice.basis, qvec({0, 1, 0})));
    CHECK(in_lattice(lr.lattice.basis, qvec({0, 0, Rational(1, 2)})));
    CHECK(!in_lattice(lr.lattice.basis, qvec({Rational(1, 2), 0, 0})));
    CHECK(!in_lattice(lr.lattice.basis, qvec({0, Rational(1, 2), 0})));
}

TEST_CASE("a non-box extremal set still forms a lattice coset") {
    // Full sign group of the plane with one twisted parity: two orbits on
    // four classes, supported on a shifted copy of the integer grid.
    GroupSpec g = GroupSpec::make(2, {"-+", "+-"}, {"01", "00"});
    LatticeResult lr = extremal_lattice(g);
    CHECK(lr.closure_ok);
    CHECK(lr.symmetry_ok);
    CHECK(lr.generation_ok);
    CHECK(!lr.box_checks_applied);
    CHECK(lr.lattice.covol == Rational(1));
    CHECK(lr.lattice.origin == qvec({0, Rational(1, 2)}));
    CHECK(in_lattice(lr.lattice.basis, qvec({1, 0})));
    CHECK(in_lattice(lr.lattice.basis, qvec({0, 1})));
}

TEST_CASE("relevant vectors of the cubic lattice are the unit directions") {
    auto rel = relevant_vectors(std_basis(3), SymFormQ::identity(3));
    CHECK(rel.size() == 6);
    for (int j = 0; j < 3; ++j) {
        VecQ e(3, Rational(0));
        e[static_cast<std::size_t>(j)] = 1;
        CHECK(contains_vec(rel, e));
        CHECK(contains_vec(rel, Rational(-1) * e));
    }
}

TEST_CASE("relevant vectors under a hexagonal form") {
    auto rel = relevant_vectors(std_basis(2), form_2112());
    CHECK(rel.size() == 6);
    CHECK(contains_vec(rel, qvec({1, 0})));
    CHECK(contains_vec(rel, qvec({0, 1})));
    CHECK(contains_vec(rel, qvec({1, -1})));
    CHECK(contains_vec(rel, qvec({-1, 0})));
    CHECK(contains_vec(rel, qvec({0, -1})));
    CHECK(contains_vec(rel, qvec({-1, 1})));
    // The long diagonal is not a facet direction.
    CHECK(!contains_vec(rel, qvec({1, 1})));
}

TEST_CASE("relevant vectors of the line") {
    auto rel = relevant_vectors(std_basis(1), SymFormQ::identity(1));
    REQUIRE(rel.size() == 2);
    CHECK(contains_vec(rel, qvec({1})));
    CHECK(contains_vec(rel, qvec({-1})));
}

TEST_CASE("relevant vectors come in full centrally symmetric pairs") {
    Rng rng(8080);
    for (int t = 0; t < 25; ++t) {
        int n = static_cast<int>(rng.range(1, 3));
        MatQ m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Rational v = i == j ? Rational(rng.range(2, 6)) : Rational(rng.range(-1, 1));
                m.at(i, j) = v;
                m.at(j, i) = v;
            }
        SymFormQ g(std::move(m));
        if (!is_positive_definite(g)) continue;
        auto rel = relevant_vectors(std_basis(n), g);
        for (const auto& v : rel) CHECK(contains_vec(rel, Rational(-1) * v));
        CHECK(rel.size() >= 2u * static_cast<unsigned>(n));
        CHECK(rel.size() <= (1u << (n + 1)) - 2);  // Minkowski facet bound
    }
}

TEST_CASE("coset minima cover every nonzero coset with symmetric argmin sets") {
    auto cosets = voronoi_cosets(std_basis(2), form_2112());
    CHECK(cosets.size() == 3);
    for (const auto& c : cosets) {
        CHECK(c.coset != 0);
        CHECK(!c.argmins.empty());
        CHECK(c.min_norm2.sign() > 0);
        for (const auto& a : c.argmins) {
            std::vector<long long> neg;
            for (long long x : a) neg.push_back(-x);
            CHECK(std::find(c.argmins.begin(), c.argmins.end(), neg) != c.argmins.end());
        }
    }
    // Hexagonal combinatorics: every coset minimum is a unique +- pair.
    for (const auto& c : cosets) CHECK(c.argmins.size() == 2);

    // Under the identity the diagonal coset ties across four corners, which
    // is exactly why (1,1) is not relevant for the square lattice.
    auto square = voronoi_cosets(std_basis(2), SymFormQ::identity(2));
    bool saw_diagonal = false;
    for (const auto& c : square)
        if (c.coset == 3u) {
            saw_diagonal = true;
            CHECK(c.argmins.size() == 4);
            CHECK(c.min_norm2 == Rational(2));
        }
    CHECK(saw_diagonal);
    CHECK(relevant_vectors(std_basis(2), SymFormQ::identity(2)).size() == 4);
}

TEST_CASE("cell verification on the central symmetry box") {
    GroupSpec g = GroupSpec::make(3, {"---"}, {"000"});
    CellReport rep = verify_cell_properties(g, SymFormQ::identity(3));
    CHECK(rep.ok());
    CHECK(rep.orbits.size() == 8);
    CHECK(rep.share == Rational(1, 2));
    CHECK(rep.quotient_volume == Rational(4));
    for (const auto& o : rep.orbits) {
        CHECK(o.stabilizer_order == 2);
        CHECK(o.reflection_ok);
        CHECK(o.midpoint_ok);
        CHECK(o.share_ok);
    }
}

TEST_CASE("cell verification on the cube across several metrics") {
    GroupSpec cube = full_sign_group(3);
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        MetricSample ms = sample_invariant_metric(cube, seed);
        CellReport rep = verify_cell_properties(cube, ms.g);
        CHECK(rep.ok());
        CHECK(rep.share * Rational(8) == rep.quotient_volume);
    }
}

TEST_CASE("skew metric on the central plane symmetry keeps the reflection property") {
    GroupSpec g = GroupSpec::make(2, {"--"}, {"00"});
    CellReport rep = verify_cell_properties(g, form_2112());
    CHECK(rep.ok());
    CHECK(rep.relevant.size() == 6);
    for (const auto& o : rep.orbits) CHECK(o.stabilizer_order == 2);
}

TEST_CASE("every named box class passes cell verification with seeded metrics") {
    for (const auto& name : named_class_names()) {
        GroupSpec g = *named_class(name);
        for (std::uint64_t seed = 11; seed <= 13; ++seed) {
            CAPTURE(name);
            CAPTURE(seed);
            MetricSample ms = sample_invariant_metric(g, seed);
            CellReport rep = verify_cell_properties(g, ms.g);
            CHECK(rep.ok());
            CHECK(rep.share * Rational(BigInt(1) << g.n()) == rep.quotient_volume);
        }
    }
}

TEST_CASE("strata of the cube mix quarter planes and half planes") {
    auto strata = classify_codim2_strata(full_sign_group(3), SymFormQ::identity(3));
    int quarter = 0, half = 0;
    for (const auto& s : strata) {
        CHECK(s.normal_plane.size() == 2);
        if (s.cone == ConeType::kQuarterPlane) {
            ++quarter;
            // Both mirrors act, so both pinned values sit on the integer grid.
            CHECK(s.code_i % 2 == 0);
            CHECK(s.code_j % 2 == 0);
        } else {
            CHECK(s.cone == ConeType::kHalfPlane);
            ++half;
        }
    }
    // Per axis pair: 2x2 integer-integer strata are quarter planes and the
    // 8 integer-half combinations keep a single mirror.
    CHECK(quarter == 12);
    CHECK(half == 24);
    // The double-half combinations have trivial generic stabilizer.
    CHECK(strata.size() == 36);
}

TEST_CASE("strata of the even sign group are pi cones") {
    GroupSpec g = GroupSpec::make(3, {"--+", "+--"}, {"000", "000"});
    auto strata = classify_codim2_strata(g, SymFormQ::identity(3));
    CHECK(!strata.empty());
    for (const auto& s : strata) {
        CHECK(s.cone == ConeType::kConePi);
        // The restriction lists the nontrivial restricted elements only.
        REQUIRE(s.restriction.size() == 1);
        CHECK(s.restriction[0] == "--");
    }
}

TEST_CASE("the central symmetry in dimension three has no codim-2 strata") {
    auto strata = classify_codim2_strata(GroupSpec::make(3, {"---"}, {"000"}),
                                         SymFormQ::identity(3));
    CHECK(strata.empty());
}

TEST_CASE("cone labels") {
    CHECK(cone_type_str(ConeType::kHalfPlane) == "HALF_PLANE");
    CHECK(cone_type_str(ConeType::kQuarterPlane) == "QUARTER_PLANE");
    CHECK(cone_type_str(ConeType::kConePi) == "CONE_PI");
}

TEST_CASE("mixed group shows half planes where only one mirror acts") {
    // Mirror in the first coordinate only: strata pin the first axis and one
    // other; the restriction contains a single reflection.
    GroupSpec g = GroupSpec::make(2, {"-+"}, {"00"});
    auto strata = classify_codim2_strata(g, SymFormQ::identity(2));
    CHECK(!strata.empty());
    for (const auto& s : strata) CHECK(s.cone == ConeType::kHalfPlane);
}

TEST_CASE("strata normal planes are orthogonal to the free directions") {
    GroupSpec g = full_sign_group(2);
    MetricSample ms = sample_invariant_metric(g, 5);
    auto strata = classify_codim2_strata(g, ms.g);
    for (const auto& s : strata) {
        REQUIRE(s.normal_plane.size() == 2);
        // In the plane every coordinate is pinned, so the normal plane is
        // the whole space; in higher dimensions check form-orthogonality.
        CHECK(s.axis_i == 0);
        CHECK(s.axis_j == 1);
    }
}

TEST_CASE("sampled midpoint checks stay clean on the named boxes") {
    for (const auto& name : named_class_names()) {
        CAPTURE(name);
        GroupSpec g = *named_class(name);
        MetricSample ms = sample_invariant_metric(g, 99);
        MidpointSampleReport rep = sampled_midpoint_check(g, ms.g, 60, 7);
        CHECK(rep.samples == 60);
        CHECK(rep.violations == 0);
        CHECK(!rep.first_witness.has_value());
    }
}

TEST_CASE("midpoint sampling is deterministic in the seed") {
    GroupSpec g = *named_class("cube_2p");
    MetricSample ms = sample_invariant_metric(g, 3);
    MidpointSampleReport a = sampled_midpoint_check(g, ms.g, 40, 123);
    MidpointSampleReport b = sampled_midpoint_check(g, ms.g, 40, 123);
    CHECK(a.samples == b.samples);
    CHECK(a.violations == b.violations);
}

TEST_CASE("direction pairs at extremal points never go all negative") {
    Rng rng(64);
    for (const auto& name : {"square", "square_2", "cube_4"}) {
        GroupSpec g = *named_class(name);
        MetricSample ms = sample_invariant_metric(g, rng.next_u64());
        ExtremalSet es = extremal_points(g);
        for (auto packed : es.points) {
            PartialPoint p = PartialPoint::from_packed(g.n(), packed);
            DirectionReport rep = direction_diameter_check(g, ms.g, p, 200, 5);
            CHECK(rep.pairs == 200);
            CHECK(rep.violations == 0);
        }
    }
}

TEST_CASE("non-extremal points always carry the antipodal witness") {
    for (const auto& name : {"interval", "square", "cube", "cube_4"}) {
        GroupSpec g = *named_class(name);
        int n = g.n();
        MetricSample ms = sample_invariant_metric(g, 17);
        int checked = 0;
        for (std::uint32_t packed = 0; packed < (1u << (2 * n)); ++packed) {
            PartialPoint p = PartialPoint::from_packed(n, packed);
            ExtremalityCertificate cert = is_extremal(g, p);
            if (cert.extremal) continue;
            REQUIRE(cert.invariant_axis.has_value());
            CHECK(antipodal_witness_all_negative(g, ms.g, p, *cert.invariant_axis));
            ++checked;
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("the witness test is negative at extremal points") {
    GroupSpec g = full_sign_group(2);
    MetricSample ms = sample_invariant_metric(g, 8);
    // At an extremal point no axis is invariant, so no axis is a witness.
    for (int axis = 0; axis < 2; ++axis)
        CHECK(!antipodal_witness_all_negative(g, ms.g, PartialPoint::from_packed(2, 0), axis));
}
