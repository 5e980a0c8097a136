#include "nbox/orbits.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace nbox {

namespace {

std::uint32_t half_mask_of_packed(std::uint32_t packed, int n) {
    std::uint32_t m = 0;
    for (int i = 0; i < n; ++i)
        if ((packed >> (2 * i)) & 1u) m |= 1u << i;
    return m;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Stabilizer sign masks of a fully pinned class, plus the two extremality
// tests (full support / zero sign sum), which are required to agree.
struct StabData {
    std::vector<std::uint32_t> signs;
    bool extremal = false;
};

StabData stab_of_packed(const GroupSpec& g, std::uint32_t packed) {
    int n = g.n();
    std::uint32_t hm = half_mask_of_packed(packed, n);
    StabData d;
    std::uint32_t support = 0;
    for (auto s : g.members())
        if (stabilizes(s, g.phi(s), 0, hm)) {
            d.signs.push_back(s);
            support |= s;
        }
    std::uint32_t all = (1u << n) - 1;
    bool full_support = support == all;
    bool sum_zero = true;
    for (int i = 0; i < n; ++i) {
        int minus = 0;
        for (auto s : d.signs)
            if (s & (1u << i)) ++minus;
        if (2 * minus != static_cast<int>(d.signs.size())) {
            sum_zero = false;
            break;
        }
    }
    if (full_support != sum_zero)
        throw std::logic_error("extremality tests disagree (full support vs zero sign sum)");
    d.extremal = full_support;
    return d;
}

}  // namespace

ExtremalSet extremal_points(const GroupSpec& g) {
    int n = g.n();
    ExtremalSet es;
    es.n = n;
    std::uint32_t total = 1u << (2 * n);
    for (std::uint32_t p = 0; p < total; ++p)
        if (stab_of_packed(g, p).extremal) es.points.push_back(p);

    // Orbits of the class action x -> eps x + phi(eps) mod 2Z^n.
    std::vector<int> index_of(total, -1);
    for (std::size_t i = 0; i < es.points.size(); ++i) index_of[es.points[i]] = static_cast<int>(i);
    UnionFind uf(static_cast<int>(es.points.size()));
    for (std::size_t i = 0; i < es.points.size(); ++i)
        for (auto s : g.members()) {
            std::uint32_t q = g.act_packed(s, es.points[i]);
            int j = index_of[q];
            if (j < 0)
                throw std::logic_error("group action does not preserve the extremal set");
            uf.unite(static_cast<int>(i), j);
        }
    es.orbit.assign(es.points.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < es.points.size(); ++i) {
        int r = uf.find(static_cast<int>(i));
        if (es.orbit[r] < 0) es.orbit[r] = next++;
        es.orbit[i] = es.orbit[r];
    }
    es.orbit_count = next;
    if (es.orbit_count > (1 << n)) {
        std::string msg = "class count " + std::to_string(es.orbit_count) +
                          " exceeds 2^n for the action generated by";
        for (auto [s, p] : g.minimal_generators())
            msg += " " + sign_str(s, n) + ":" + parity_str(p, n);
        throw std::logic_error(msg);
    }
    return es;
}

int count_N(const GroupSpec& g) { return extremal_points(g).orbit_count; }

ExtremalityCertificate is_extremal(const GroupSpec& g, const PartialPoint& p) {
    if (p.n != g.n()) throw std::invalid_argument("point dimension mismatch");
    if (!p.fully_pinned())
        throw std::invalid_argument("extremality is defined for fully pinned quarter points");
    StabData d = stab_of_packed(g, p.packed());
    ExtremalityCertificate cert;
    cert.extremal = d.extremal;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> gens;
    for (auto s : d.signs) gens.emplace_back(s, g.phi(s));
    cert.stab = GroupSpec::make_masks(g.n(), gens);
    if (!d.extremal) {
        std::uint32_t support = 0;
        for (auto s : d.signs) support |= s;
        for (int i = 0; i < g.n(); ++i)
            if (!(support & (1u << i))) {
                cert.invariant_axis = i;
                break;
            }
    }
    return cert;
}

namespace {

// Partial points are coded base 5 per coordinate: 0..3 pinned, 4 free.
PartialPoint decode_b5(int n, std::uint32_t code) {
    PartialPoint p = PartialPoint::all_free(n);
    for (int i = 0; i < n; ++i) {
        std::uint32_t d = code % 5;
        code /= 5;
        p.c[i] = d == 4 ? -1 : static_cast<std::int8_t>(d);
    }
    return p;
}

// Stable key for a pattern: free coords map to digit 4.
std::uint64_t pattern_key(const PartialPoint& p) {
    std::uint64_t k = 0;
    for (int i = p.n - 1; i >= 0; --i)
        k = k * 5 + (p.c[i] < 0 ? 4u : static_cast<std::uint32_t>(p.c[i]));
    return k;
}

std::vector<std::uint32_t> stab_signs(const GroupSpec& g, const PartialPoint& p) {
    std::uint32_t fm = p.free_mask(), hm = p.half_mask();
    std::vector<std::uint32_t> signs;
    for (auto s : g.members())
        if (stabilizes(s, g.phi(s), fm, hm)) signs.push_back(s);
    return signs;
}

// The action on patterns: free coords stay free, pinned codes transform as
// classes.  (Translations by 2Z^n act trivially on codes.)
PartialPoint act_pattern(const GroupSpec& g, std::uint32_t sign_mask, const PartialPoint& p) {
    std::uint32_t phi_mask = g.phi(sign_mask);
    PartialPoint q = p;
    for (int i = 0; i < p.n; ++i) {
        if (p.c[i] < 0) continue;
        std::uint32_t c = static_cast<std::uint32_t>(p.c[i]);
        if (sign_mask & (1u << i)) c = (4u - c) & 3u;
        if (phi_mask & (1u << i)) c = (c + 2u) & 3u;
        q.c[i] = static_cast<std::int8_t>(c);
    }
    return q;
}

}  // namespace

FiniteSubgroupReport maximal_finite(const GroupSpec& g) {
    int n = g.n();
    std::uint32_t total = 1;
    for (int i = 0; i < n; ++i) total *= 5;

    // Candidate fixed-locus patterns, support-reduced: pin exactly the
    // coordinates the stabilizer actually flips.  Two partial points with
    // the same reduced pattern give the same subgroup.
    struct Candidate {
        PartialPoint pattern;
        std::vector<std::uint32_t> signs;
    };
    std::map<std::uint64_t, Candidate> candidates;
    for (std::uint32_t code = 0; code < total; ++code) {
        PartialPoint p = decode_b5(n, code);
        auto signs = stab_signs(g, p);
        if (signs.size() <= 1) continue;  // trivial stabilizer
        std::uint32_t support = 0;
        for (auto s : signs) support |= s;
        PartialPoint reduced = p;
        for (int i = 0; i < n; ++i)
            if (!(support & (1u << i))) reduced.c[i] = -1;
        candidates.emplace(pattern_key(reduced), Candidate{reduced, std::move(signs)});
    }

    // Keep subgroups that no further pinning can enlarge: candidate A is
    // dominated when another candidate pins a superset of A's coordinates
    // with the same values and has strictly more elements.
    std::vector<const Candidate*> ordered;
    for (const auto& [key, c] : candidates) ordered.push_back(&c);
    auto refines = [&](const Candidate& b, const Candidate& a) {
        for (int i = 0; i < n; ++i)
            if (a.pattern.c[i] >= 0 && b.pattern.c[i] != a.pattern.c[i]) return false;
        return true;
    };
    std::vector<const Candidate*> maximal;
    for (const auto* a : ordered) {
        bool dominated = false;
        for (const auto* b : ordered) {
            if (b == a || b->signs.size() <= a->signs.size()) continue;
            if (refines(*b, *a)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) maximal.push_back(a);
    }

    // Conjugacy classes = orbits of the pattern action.
    std::map<std::uint64_t, int> index_of;
    for (std::size_t i = 0; i < maximal.size(); ++i)
        index_of[pattern_key(maximal[i]->pattern)] = static_cast<int>(i);
    UnionFind uf(static_cast<int>(maximal.size()));
    for (std::size_t i = 0; i < maximal.size(); ++i)
        for (auto s : g.members()) {
            PartialPoint q = act_pattern(g, s, maximal[i]->pattern);
            auto it = index_of.find(pattern_key(q));
            if (it == index_of.end())
                throw std::logic_error("group action does not preserve maximal patterns");
            uf.unite(static_cast<int>(i), it->second);
        }

    FiniteSubgroupReport rep;
    std::vector<int> root_seen(maximal.size(), 0);
    for (std::size_t i = 0; i < maximal.size(); ++i) {
        int r = uf.find(static_cast<int>(i));
        if (root_seen[r]) continue;
        root_seen[r] = 1;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> gens;
        for (auto s : maximal[i]->signs) gens.emplace_back(s, g.phi(s));
        rep.representatives.push_back(
            FiniteSubgroupRep{maximal[i]->pattern, GroupSpec::make_masks(n, gens)});
    }
    rep.m_count = static_cast<int>(rep.representatives.size());
    return rep;
}

}  // namespace nbox
