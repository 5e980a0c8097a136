#include "nbox/flatgeom.hpp"

#include "nbox/rng.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace nbox {

namespace {

VecQ lift_packed(int n, std::uint32_t packed) {
    VecQ v(n);
    for (int i = 0; i < n; ++i) v[i] = Rational((packed >> (2 * i)) & 3u, 2);
    return v;
}

VecQ apply_basis(const MatQ& b, const std::vector<long long>& c) {
    VecQ v(b.rows, Rational(0));
    for (int j = 0; j < b.cols; ++j) {
        if (c[j] == 0) continue;
        Rational cj(c[j]);
        for (int r = 0; r < b.rows; ++r) v[r] += cj * b.at(r, j);
    }
    return v;
}

// Certified enumeration of integer coefficient vectors c with
// (c - t)^T gram (c - t) <= r2, via the exact per-coordinate bound
// (c_i - t_i)^2 <= (gram^{-1})_ii * r2.
class CoefBall {
public:
    CoefBall(const SymFormQ& gram) : n_(gram.n), gram_(gram), inv_(inverse(gram.m)) {}

    template <typename F>
    void for_each(const VecQ& t, const Rational& r2, F&& f) const {
        if (r2.sign() < 0) return;
        std::vector<long long> lo(n_), hi(n_);
        for (int i = 0; i < n_; ++i) {
            BigInt s = isqrt_ceil(inv_.at(i, i) * r2);
            Rational smin = t[i] - Rational(s), smax = t[i] + Rational(s);
            lo[i] = static_cast<long long>(smin.ceil());
            hi[i] = static_cast<long long>(smax.floor());
        }
        std::vector<long long> c(n_);
        recurse(0, lo, hi, t, r2, c, f);
    }

private:
    template <typename F>
    void recurse(int i, const std::vector<long long>& lo, const std::vector<long long>& hi,
                 const VecQ& t, const Rational& r2, std::vector<long long>& c, F&& f) const {
        if (i == n_) {
            VecQ d(n_);
            for (int k = 0; k < n_; ++k) d[k] = Rational(c[k]) - t[k];
            Rational q = form_norm2(gram_, d);
            if (q <= r2) f(c, q);
            return;
        }
        for (long long v = lo[i]; v <= hi[i]; ++v) {
            c[i] = v;
            recurse(i + 1, lo, hi, t, r2, c, f);
        }
    }

    int n_;
    SymFormQ gram_;
    MatQ inv_;
};

SymFormQ basis_gram(const LatticeBasis& lattice, const SymFormQ& g) {
    return SymFormQ(mul(transpose(lattice.b), mul(g.m, lattice.b)));
}

VecQ coords_in_basis(const MatQ& binv, const VecQ& v) {
    VecQ r(binv.rows, Rational(0));
    for (int i = 0; i < binv.rows; ++i)
        for (int j = 0; j < binv.cols; ++j) r[i] += binv.at(i, j) * v[j];
    return r;
}

VecQ flip_by_mask(std::uint32_t mask, const VecQ& v) {
    VecQ r = v;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (mask & (1u << i)) r[i] = -r[i];
    return r;
}

}  // namespace

LatticeResult extremal_lattice(const GroupSpec& g) {
    int n = g.n();
    ExtremalSet es = extremal_points(g);
    if (es.points.empty())
        throw std::invalid_argument("extremal set is empty; no lattice to extract");

    LatticeResult out;
    out.lattice.n = n;
    out.lattice.classes = es;
    out.lattice.origin = lift_packed(n, es.points[0]);

    // Basis of the difference span (differences are half-integral, so work
    // on doubled vectors; the doubled lattice also contains 4Z^n).
    std::vector<std::vector<BigInt>> gens;
    for (auto p : es.points) {
        std::vector<BigInt> d(n);
        for (int i = 0; i < n; ++i) {
            long long ci = (p >> (2 * i)) & 3u;
            long long oi = (es.points[0] >> (2 * i)) & 3u;
            d[i] = ci - oi;
        }
        gens.push_back(std::move(d));
    }
    for (int i = 0; i < n; ++i) {
        std::vector<BigInt> d(n, BigInt(0));
        d[i] = 4;
        gens.push_back(std::move(d));
    }
    auto hnf = hnf_basis(gens, n);
    MatQ b(n, n);
    for (int j = 0; j < n; ++j)
        for (int r = 0; r < n; ++r) b.at(r, j) = Rational(hnf[j][r], 2);
    out.lattice.basis = LatticeBasis(b);
    out.lattice.covol = covolume(out.lattice.basis);

    // Index for class membership.
    std::vector<int> index_of(std::size_t{1} << (2 * n), -1);
    for (std::size_t i = 0; i < es.points.size(); ++i) index_of[es.points[i]] = static_cast<int>(i);
    auto in_set = [&](std::uint32_t packed) { return index_of[packed] >= 0; };
    auto combine = [&](std::uint32_t x, std::uint32_t y, std::uint32_t z) {
        // class of Y + (Z - X), coordinatewise on quarter codes
        std::uint32_t out_p = 0;
        for (int i = 0; i < n; ++i) {
            std::uint32_t cx = (x >> (2 * i)) & 3u, cy = (y >> (2 * i)) & 3u,
                          cz = (z >> (2 * i)) & 3u;
            out_p |= ((cy + cz + 4u - cx) & 3u) << (2 * i);
        }
        return out_p;
    };

    out.closure_ok = true;
    for (auto x : es.points) {
        for (auto y : es.points) {
            for (auto z : es.points) {
                if (!in_set(combine(x, y, z))) {
                    out.closure_ok = false;
                    out.witness = LatticeWitness{
                        "fourth-point closure",
                        {lift_packed(n, x), lift_packed(n, y), lift_packed(n, z)}};
                    break;
                }
            }
            if (!out.closure_ok) break;
        }
        if (!out.closure_ok) break;
    }

    out.symmetry_ok = true;
    for (auto x : es.points) {
        for (auto y : es.points) {
            // 2X - Y = X + (X - Y)
            if (!in_set(combine(y, x, x))) {
                out.symmetry_ok = false;
                if (!out.witness)
                    out.witness =
                        LatticeWitness{"central symmetry", {lift_packed(n, x), lift_packed(n, y)}};
                break;
            }
        }
        if (!out.symmetry_ok) break;
    }

    out.generation_ok = true;
    for (auto p : es.points) {
        VecQ d = lift_packed(n, p) - out.lattice.origin;
        if (!in_lattice(out.lattice.basis, d)) {
            out.generation_ok = false;
            if (!out.witness) out.witness = LatticeWitness{"difference generation", {d}};
            break;
        }
    }

    bool is_box = es.orbit_count == (1 << n);
    out.box_checks_applied = is_box;
    if (is_box) {
        // The set must be exactly one lattice coset: enumerate L mod 2Z^n
        // through the triangular basis and compare classes.
        std::vector<long long> counts(n);
        for (int i = 0; i < n; ++i) {
            Rational k = Rational(2) / b.at(i, i);
            if (!k.is_integer() || k.sign() <= 0)
                throw std::logic_error("lattice does not contain 2Z^n compatibly");
            counts[i] = static_cast<long long>(k.num());
        }
        std::vector<std::uint32_t> covered;
        std::vector<long long> c(n, 0);
        while (true) {
            VecQ v = out.lattice.origin + apply_basis(b, c);
            covered.push_back(PartialPoint::from_point(v).packed());
            int i = 0;
            while (i < n && ++c[i] == counts[i]) c[i++] = 0;
            if (i == n) break;
        }
        std::sort(covered.begin(), covered.end());
        out.coset_cover_ok = covered == es.points;
        if (!out.coset_cover_ok && !out.witness)
            out.witness = LatticeWitness{"coset cover", {}};

        // Same orbit <=> difference has all-even basis coordinates.
        out.orbit_parity_ok = true;
        for (std::size_t i = 0; i < es.points.size() && out.orbit_parity_ok; ++i)
            for (std::size_t j = 0; j < es.points.size(); ++j) {
                VecQ d = lift_packed(n, es.points[j]) - lift_packed(n, es.points[i]);
                auto coef = solve(b, d);
                if (!coef) throw std::logic_error("basis lost rank");
                bool even = true;
                for (const auto& x : *coef) {
                    if (!x.is_integer()) {
                        even = false;  // not even a lattice vector
                        break;
                    }
                    if (x.num() % 2 != 0) even = false;
                }
                bool same = es.orbit[i] == es.orbit[j];
                if (same != even) {
                    out.orbit_parity_ok = false;
                    if (!out.witness)
                        out.witness = LatticeWitness{
                            "orbit parity",
                            {lift_packed(n, es.points[i]), lift_packed(n, es.points[j])}};
                    break;
                }
            }
    }
    return out;
}

std::vector<CosetMinima> voronoi_cosets(const LatticeBasis& lattice, const SymFormQ& g) {
    if (!is_positive_definite(g)) throw std::domain_error("metric is not positive definite");
    int n = lattice.n;
    SymFormQ gram = basis_gram(lattice, g);
    CoefBall ball(gram);
    std::vector<CosetMinima> out;
    VecQ zero(n, Rational(0));
    for (std::uint32_t a = 1; a < (1u << n); ++a) {
        // Upper bound: all sign choices on the odd coordinates, 0 elsewhere.
        std::optional<Rational> bound;
        std::uint32_t odd_bits = 0;
        std::vector<int> odd;
        for (int i = 0; i < n; ++i)
            if (a & (1u << i)) {
                odd.push_back(i);
                ++odd_bits;
            }
        for (std::uint32_t s = 0; s < (1u << odd_bits); ++s) {
            std::vector<long long> c(n, 0);
            for (std::size_t k = 0; k < odd.size(); ++k) c[odd[k]] = (s & (1u << k)) ? -1 : 1;
            VecQ d(n);
            for (int i = 0; i < n; ++i) d[i] = Rational(c[i]);
            Rational q = form_norm2(gram, d);
            if (!bound || q < *bound) bound = q;
        }
        CosetMinima cm;
        cm.coset = a;
        cm.min_norm2 = *bound;
        ball.for_each(zero, *bound, [&](const std::vector<long long>& c, const Rational& q) {
            for (int i = 0; i < n; ++i)
                if (((c[i] % 2 + 2) % 2) != ((a >> i) & 1)) return;
            if (q < cm.min_norm2) {
                cm.min_norm2 = q;
                cm.argmins.clear();
                cm.argmins.push_back(c);
            } else if (q == cm.min_norm2) {
                cm.argmins.push_back(c);
            }
        });
        std::sort(cm.argmins.begin(), cm.argmins.end());
        out.push_back(std::move(cm));
    }
    return out;
}

std::vector<VecQ> relevant_vectors(const LatticeBasis& lattice, const SymFormQ& g) {
    std::vector<VecQ> vecs;
    for (const auto& cm : voronoi_cosets(lattice, g))
        if (cm.argmins.size() == 2)  // unique +- pair
            for (const auto& c : cm.argmins) vecs.push_back(apply_basis(lattice.b, c));
    std::sort(vecs.begin(), vecs.end(), [](const VecQ& x, const VecQ& y) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] < y[i]) return true;
            if (y[i] < x[i]) return false;
        }
        return false;
    });
    return vecs;
}

bool CellReport::ok() const {
    if (!facet_equivalence_ok || !shares_sum_ok) return false;
    for (const auto& o : orbits)
        if (!o.reflection_ok || !o.midpoint_ok || !o.share_ok) return false;
    return true;
}

CellReport verify_cell_properties(const GroupSpec& g, const SymFormQ& metric) {
    int n = g.n();
    LatticeResult lr = extremal_lattice(g);
    if (lr.lattice.classes.orbit_count != (1 << n))
        throw std::invalid_argument("cell verification requires a box (N = 2^n)");
    if (!lr.ok()) throw std::logic_error("lattice verification failed on a box");

    const LatticeBasis& basis = lr.lattice.basis;
    CellReport rep;
    rep.relevant = relevant_vectors(basis, metric);
    rep.quotient_volume = Rational(BigInt(1) << n) / Rational(g.order());
    rep.share = lr.lattice.covol;  // divided per orbit below by |St|

    SymFormQ gram = basis_gram(basis, metric);
    CoefBall ball(gram);
    MatQ binv = inverse(basis.b);

    // Midpoint uniqueness of v at anchor x in the single coset x + L:
    // the set of lattice points within Q(v)/4 of x + v/2 must be {x, x+v}.
    auto midpoint_unique = [&](const VecQ& x, const VecQ& v) {
        VecQ m = x + Rational(1, 2) * v;
        Rational r2 = form_norm2(metric, v) / Rational(4);
        VecQ t = coords_in_basis(binv, m - lr.lattice.origin);
        int hits = 0;
        bool extra = false;
        ball.for_each(t, r2, [&](const std::vector<long long>& c, const Rational&) {
            VecQ e = lr.lattice.origin + apply_basis(basis.b, c);
            if (e == x || e == x + v)
                ++hits;
            else
                extra = true;
        });
        return hits == 2 && !extra;
    };

    bool all_shares = true;
    for (int o = 0; o < lr.lattice.classes.orbit_count; ++o) {
        CellOrbitReport orep;
        std::size_t idx = 0;
        while (lr.lattice.classes.orbit[idx] != o) ++idx;
        orep.rep_class = lr.lattice.classes.points[idx];
        PartialPoint pp = PartialPoint::from_packed(n, orep.rep_class);
        GroupSpec st = stabilizer(g, pp);
        orep.stabilizer_order = st.order();
        VecQ x = pp.lift();

        orep.reflection_ok = true;
        orep.midpoint_ok = true;
        for (const auto& v : rep.relevant) {
            // stabilizer orbit of v must be exactly {v, -v}
            bool saw_plus = false, saw_minus = false, saw_other = false;
            for (auto s : st.members()) {
                VecQ w = flip_by_mask(s, v);
                if (w == v)
                    saw_plus = true;
                else if (is_zero(w + v))
                    saw_minus = true;
                else
                    saw_other = true;
            }
            if (!(saw_plus && saw_minus && !saw_other)) {
                orep.reflection_ok = false;
                if (!orep.failing_vector) orep.failing_vector = v;
            }
            if (!midpoint_unique(x, v)) {
                orep.midpoint_ok = false;
                if (!orep.failing_vector) orep.failing_vector = v;
            }
        }

        // covol/|St| = 2^-n * quotient volume, i.e. |St| * covol = 2^n/|H|...
        // both sides exact rationals with the metric factor cancelled.
        Rational share = lr.lattice.covol / Rational(st.order());
        orep.share_ok = share == rep.quotient_volume / Rational(BigInt(1) << n);
        if (o == 0) rep.share = share;
        all_shares = all_shares && orep.share_ok && share == rep.share;
        rep.orbits.push_back(std::move(orep));
    }
    rep.shares_sum_ok =
        all_shares && Rational(1 << n) * rep.share == rep.quotient_volume;

    // Relevance (unique coset minimizers) must coincide with strict midpoint
    // uniqueness for every coset-minimal vector.
    rep.facet_equivalence_ok = true;
    for (const auto& cm : voronoi_cosets(basis, metric)) {
        bool unique_pair = cm.argmins.size() == 2;
        for (const auto& c : cm.argmins) {
            VecQ v = apply_basis(basis.b, c);
            if (midpoint_unique(lr.lattice.origin, v) != unique_pair)
                rep.facet_equivalence_ok = false;
        }
    }
    return rep;
}

std::string cone_type_str(ConeType t) {
    switch (t) {
        case ConeType::kHalfPlane: return "HALF_PLANE";
        case ConeType::kQuarterPlane: return "QUARTER_PLANE";
        case ConeType::kConePi: return "CONE_PI";
    }
    return "?";
}

std::vector<StratumReport> classify_codim2_strata(const GroupSpec& g, const SymFormQ& metric) {
    int n = g.n();
    std::vector<StratumReport> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int ci = 0; ci < 4; ++ci)
                for (int cj = 0; cj < 4; ++cj) {
                    PartialPoint p = PartialPoint::all_free(n);
                    p.c[i] = static_cast<std::int8_t>(ci);
                    p.c[j] = static_cast<std::int8_t>(cj);
                    GroupSpec st = stabilizer(g, p);
                    if (st.order() <= 1) continue;
                    bool ref_i = false, ref_j = false, rot = false;
                    StratumReport r;
                    for (auto s : st.members()) {
                        if (s == 0) continue;
                        bool fi = s & (1u << i), fj = s & (1u << j);
                        // nontrivial elements here flip at least one of i, j
                        if (fi && fj)
                            rot = true;
                        else if (fi)
                            ref_i = true;
                        else
                            ref_j = true;
                        std::string rs;
                        rs += fi ? '-' : '+';
                        rs += fj ? '-' : '+';
                        r.restriction.push_back(rs);
                    }
                    std::sort(r.restriction.begin(), r.restriction.end());
                    r.axis_i = i;
                    r.axis_j = j;
                    r.code_i = ci;
                    r.code_j = cj;
                    if (ref_i && ref_j)
                        r.cone = ConeType::kQuarterPlane;
                    else if (ref_i || ref_j)
                        r.cone = ConeType::kHalfPlane;
                    else if (rot)
                        r.cone = ConeType::kConePi;
                    else
                        throw std::logic_error("stratum stabilizer outside the cone menu");
                    std::vector<int> free_axes;
                    for (int k = 0; k < n; ++k)
                        if (k != i && k != j) free_axes.push_back(k);
                    r.normal_plane = ortho_complement(free_axes, metric);
                    out.push_back(std::move(r));
                }
    return out;
}

MidpointSampleReport sampled_midpoint_check(const GroupSpec& g, const SymFormQ& metric,
                                            int samples, std::uint64_t seed) {
    if (!is_positive_definite(metric)) throw std::domain_error("metric is not positive definite");
    int n = g.n();
    ExtremalSet es = extremal_points(g);
    if (es.points.empty()) throw std::invalid_argument("extremal set is empty");

    // Translates of one class lift: e = lift + 2m.  Coefficient search in m
    // with Gram 4g.
    SymFormQ gram4 = SymFormQ::zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) gram4.set(i, j, Rational(4) * metric.at(i, j));
    CoefBall ball(gram4);

    std::vector<std::vector<VecQ>> orbit_lifts(es.orbit_count);
    for (std::size_t i = 0; i < es.points.size(); ++i)
        orbit_lifts[es.orbit[i]].push_back(lift_packed(n, es.points[i]));

    // Nearest translate of `lift` to x, returning squared distance and points.
    auto nearest_translates = [&](const VecQ& lift, const VecQ& x, const Rational& r2_cap,
                                  std::vector<std::pair<Rational, VecQ>>& acc) {
        VecQ t(n);
        for (int i = 0; i < n; ++i) t[i] = (x[i] - lift[i]) / Rational(2);
        ball.for_each(t, r2_cap, [&](const std::vector<long long>& c, const Rational& q) {
            VecQ e = lift;
            for (int i = 0; i < n; ++i) e[i] += Rational(2 * c[i]);
            acc.emplace_back(q, std::move(e));
        });
    };
    auto initial_bound = [&](const VecQ& lift, const VecQ& x) {
        VecQ e = lift;
        for (int i = 0; i < n; ++i) {
            Rational m = ((x[i] - lift[i]) / Rational(2));
            e[i] += Rational(2 * m.round());
        }
        return form_norm2(metric, x - e);
    };

    MidpointSampleReport rep;
    rep.samples = samples;
    Rng rng = Rng(seed).fork("midpoint-samples");
    for (int sample = 0; sample < samples; ++sample) {
        VecQ x(n);
        for (int i = 0; i < n; ++i) x[i] = Rational(rng.below(32), 16);  // [0, 2) step 1/16

        // Global nearest point of the whole extremal set (for the z check).
        auto global_nearest2 = [&](const VecQ& z, const Rational& cap) {
            Rational best = cap;
            for (const auto& lifts : orbit_lifts)
                for (const auto& l : lifts) {
                    std::vector<std::pair<Rational, VecQ>> acc;
                    nearest_translates(l, z, best, acc);
                    for (auto& [q, e] : acc)
                        if (q < best) best = q;
                }
            return best;
        };

        for (int o = 0; o < es.orbit_count; ++o) {
            // Shortest segment from orbit o to x: all minimal lifts.
            Rational bound = initial_bound(orbit_lifts[o][0], x);
            for (const auto& l : orbit_lifts[o]) {
                Rational b = initial_bound(l, x);
                if (b < bound) bound = b;
            }
            std::vector<std::pair<Rational, VecQ>> acc;
            for (const auto& l : orbit_lifts[o]) nearest_translates(l, x, bound, acc);
            Rational best = bound;
            for (auto& [q, e] : acc)
                if (q < best) best = q;
            for (auto& [q, e] : acc) {
                if (q != best) continue;
                VecQ z(n);
                for (int i = 0; i < n; ++i) z[i] = (x[i] + e[i]) / Rational(2);
                Rational dz = form_norm2(metric, z - e);
                Rational other = global_nearest2(z, dz);
                if (other < dz) {
                    ++rep.violations;
                    if (!rep.first_witness)
                        rep.first_witness = "x=" + vec_str(x) + " e1=" + vec_str(e) +
                                            " midpoint=" + vec_str(z) +
                                            " has a strictly closer extremal point";
                }
            }
        }
    }
    return rep;
}

DirectionReport direction_diameter_check(const GroupSpec& g, const SymFormQ& metric,
                                         const PartialPoint& p, int pairs, std::uint64_t seed) {
    GroupSpec st = stabilizer(g, p);
    DirectionReport rep;
    rep.pairs = pairs;
    Rng rng = Rng(seed).fork("direction-pairs");
    int n = g.n();
    for (int k = 0; k < pairs; ++k) {
        VecQ v(n), w(n);
        bool vz = true, wz = true;
        for (int i = 0; i < n; ++i) {
            v[i] = Rational(rng.range(-9, 9));
            w[i] = Rational(rng.range(-9, 9));
            vz = vz && v[i].is_zero();
            wz = wz && w[i].is_zero();
        }
        if (vz || wz) continue;  // direction pairs must be nonzero
        bool nonneg = false;
        for (auto s : st.members())
            if (form_dot(metric, v, flip_by_mask(s, w)).sign() >= 0) {
                nonneg = true;
                break;
            }
        if (!nonneg) ++rep.violations;
    }
    return rep;
}

bool antipodal_witness_all_negative(const GroupSpec& g, const SymFormQ& metric,
                                    const PartialPoint& p, int axis) {
    GroupSpec st = stabilizer(g, p);
    int n = g.n();
    VecQ v(n, Rational(0));
    v[axis] = Rational(1);
    for (auto s : st.members()) {
        VecQ w = flip_by_mask(s, v);
        for (auto& e : w) e = -e;  // eps(-e_axis)
        if (form_dot(metric, v, w).sign() >= 0) return false;
    }
    return true;
}

}  // namespace nbox
