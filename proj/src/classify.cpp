#include "nbox/classify.hpp"

#include "nbox/flatgeom.hpp"
#include "nbox/moduli.hpp"
#include "nbox/orbits.hpp"
#include "nbox/parallel.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace nbox {

namespace {

std::uint32_t permute_mask(std::uint32_t m, const std::vector<int>& sigma) {
    std::uint32_t r = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        if (m & (1u << i)) r |= 1u << sigma[i];
    return r;
}

using Table = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

// Change of coordinates: permute axes by sigma, then shift the origin by c/2.
// The shift adds c on the flipped coordinates of each element.
Table transformed_table(const GroupSpec& g, const std::vector<int>& sigma, std::uint32_t c) {
    Table t;
    t.reserve(g.order());
    for (auto s : g.members()) {
        std::uint32_t s2 = permute_mask(s, sigma);
        std::uint32_t p2 = permute_mask(g.phi(s), sigma) ^ (c & s2);
        t.emplace_back(s2, p2);
    }
    std::sort(t.begin(), t.end());
    return t;
}

struct NamedSpecDef {
    const char* name;
    int n;
    std::vector<const char*> gens;
    std::vector<const char*> phis;
};

const std::vector<NamedSpecDef>& named_defs() {
    static const std::vector<NamedSpecDef> defs = {
        {"interval", 1, {"-"}, {"0"}},
        {"square", 2, {"-+", "+-"}, {"00", "00"}},
        {"square_2", 2, {"--"}, {"00"}},
        {"cube", 3, {"-++", "+-+", "++-"}, {"000", "000", "000"}},
        {"cube_2", 3, {"--+", "+--"}, {"000", "000"}},
        {"cube_2p", 3, {"-++", "+-+", "++-"}, {"001", "001", "001"}},
        {"cube_2pp", 3, {"--+", "++-"}, {"000", "000"}},
        {"cube_4", 3, {"---"}, {"000"}},
    };
    return defs;
}

GroupSpec build_named(const NamedSpecDef& d) {
    std::vector<std::string> gens(d.gens.begin(), d.gens.end());
    std::vector<std::string> phis(d.phis.begin(), d.phis.end());
    return GroupSpec::make(d.n, gens, phis);
}

const std::map<std::string, std::string>& name_by_encoding() {
    static const std::map<std::string, std::string> m = [] {
        std::map<std::string, std::string> out;
        for (const auto& d : named_defs())
            out[canonical_form(build_named(d)).encoding] = d.name;
        return out;
    }();
    return m;
}

// Reduced echelon bases of all sign subgroups: pick pivot bits, then fill the
// later non-pivot bits of each row freely.
std::vector<std::vector<std::uint32_t>> all_subgroup_bases(int n) {
    std::vector<std::vector<std::uint32_t>> out;
    for (std::uint32_t piv = 0; piv < (1u << n); ++piv) {
        std::vector<int> pivots;
        for (int i = 0; i < n; ++i)
            if (piv & (1u << i)) pivots.push_back(i);
        int r = static_cast<int>(pivots.size());
        std::vector<std::vector<int>> free_bits(r);
        int total_free = 0;
        for (int i = 0; i < r; ++i)
            for (int q = pivots[i] + 1; q < n; ++q)
                if (!(piv & (1u << q))) {
                    free_bits[i].push_back(q);
                    ++total_free;
                }
        for (std::uint64_t fill = 0; fill < (1ull << total_free); ++fill) {
            std::vector<std::uint32_t> rows(r);
            int bit = 0;
            for (int i = 0; i < r; ++i) {
                rows[i] = 1u << pivots[i];
                for (int q : free_bits[i])
                    if (fill & (1ull << bit++)) rows[i] |= 1u << q;
            }
            out.push_back(std::move(rows));
        }
    }
    return out;
}

}  // namespace

std::string content_id(const std::string& encoding) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : encoding) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

CanonicalForm canonical_form(const GroupSpec& g) {
    int n = g.n();
    std::vector<int> sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = i;
    std::optional<Table> best;
    do {
        for (std::uint32_t c = 0; c < (1u << n); ++c) {
            Table t = transformed_table(g, sigma, c);
            if (!best || t < *best) best = std::move(t);
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    CanonicalForm cf;
    cf.table = std::move(*best);
    std::string enc = "n=" + std::to_string(n) + ";";
    for (std::size_t i = 0; i < cf.table.size(); ++i) {
        if (i) enc += ',';
        enc += sign_str(cf.table[i].first, n);
        enc += ':';
        enc += parity_str(cf.table[i].second, n);
    }
    cf.encoding = std::move(enc);
    cf.id = content_id(cf.encoding);
    return cf;
}

GroupSpec spec_from_encoding(const std::string& encoding) {
    auto semi = encoding.find(';');
    if (encoding.rfind("n=", 0) != 0 || semi == std::string::npos)
        throw std::invalid_argument("bad encoding: " + encoding);
    int n = std::stoi(encoding.substr(2, semi - 2));
    std::vector<std::string> gens, phis;
    std::size_t pos = semi + 1;
    while (pos < encoding.size()) {
        auto comma = encoding.find(',', pos);
        if (comma == std::string::npos) comma = encoding.size();
        std::string row = encoding.substr(pos, comma - pos);
        auto colon = row.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("bad encoding row: " + row);
        gens.push_back(row.substr(0, colon));
        phis.push_back(row.substr(colon + 1));
        pos = comma + 1;
    }
    if (gens.empty()) throw std::invalid_argument("encoding lists no elements");
    return GroupSpec::make(n, gens, phis);
}

std::optional<std::string> class_name(const GroupSpec& g) {
    const auto& m = name_by_encoding();
    auto it = m.find(canonical_form(g).encoding);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

std::optional<GroupSpec> named_class(const std::string& name) {
    for (const auto& d : named_defs())
        if (name == d.name) return build_named(d);
    return std::nullopt;
}

std::vector<std::string> named_class_names() {
    std::vector<std::string> out;
    for (const auto& d : named_defs()) out.push_back(d.name);
    return out;
}

std::optional<int> known_box_count(int n) {
    switch (n) {
        case 1: return 1;
        case 2: return 2;
        case 3: return 5;
        default: return std::nullopt;
    }
}

int compute_gluing_exponent(const GroupSpec& g) {
    int n = g.n();
    LatticeResult lr = extremal_lattice(g);
    if (lr.lattice.classes.orbit_count != (1 << n))
        throw std::invalid_argument("gluing exponent is defined for boxes only");
    Rational ratio =
        Rational(BigInt(1) << n) / (Rational(g.order()) * lr.lattice.covol);
    if (!ratio.is_integer() || ratio.sign() <= 0)
        throw std::logic_error("gluing ratio is not a positive integer");
    BigInt v = ratio.num();
    if ((v & (v - 1)) != 0) throw std::logic_error("gluing ratio is not a power of two");
    int k = static_cast<int>(boost::multiprecision::msb(v));
    if (k > n - 1) throw std::logic_error("gluing exponent exceeds n-1");
    return k;
}

CatalogEntry describe(const GroupSpec& g) {
    CatalogEntry e;
    e.n = g.n();
    CanonicalForm cf = canonical_form(g);
    e.id = cf.id;
    e.encoding = cf.encoding;
    e.group_order = g.order();
    e.extremal_class_count = count_N(g);
    e.maximal_subgroup_count = maximal_finite(g).m_count;
    e.is_box = e.extremal_class_count == (1 << e.n);
    if (e.is_box) e.gluing_exponent = compute_gluing_exponent(g);
    e.moduli_dim = invariant_form_basis(g).dim;
    e.name = class_name(g);
    return e;
}

BoundSweep sweep_bounds(int n, int workers) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("dimension out of range");
    workers = resolve_workers(workers);
    auto bases = all_subgroup_bases(n);

    struct JobResult {
        std::uint64_t scanned = 0;
        int max_n = 0;
        int max_m = 0;
        std::vector<BoundCounterexample> bad_n, bad_m, bad_nm;
    };
    const int bound = 1 << n;
    std::function<JobResult(int)> job = [&](int idx) {
        const auto& rows = bases[idx];
        int r = static_cast<int>(rows.size());
        JobResult res;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> gens(r);
        for (int i = 0; i < r; ++i) gens[i].first = rows[i];
        std::vector<std::uint32_t> assign(r, 0);
        while (true) {
            for (int i = 0; i < r; ++i) gens[i].second = assign[i];
            GroupSpec g = GroupSpec::make_masks(n, gens);
            ++res.scanned;
            int nc = count_N(g);
            int mc = maximal_finite(g).m_count;
            res.max_n = std::max(res.max_n, nc);
            res.max_m = std::max(res.max_m, mc);
            if (nc > bound || mc > bound || nc > mc) {
                std::string enc = canonical_form(g).encoding;
                if (nc > bound) res.bad_n.push_back({enc, nc, 'N'});
                if (mc > bound) res.bad_m.push_back({enc, mc, 'M'});
                if (nc > mc) res.bad_nm.push_back({enc, nc, 'N'});
            }
            int i = 0;
            while (i < r && ++assign[i] == (1u << n)) assign[i++] = 0;
            if (i == r) break;
        }
        return res;
    };
    auto results = run_jobs<JobResult>(static_cast<int>(bases.size()), workers, job);

    BoundSweep sweep;
    sweep.n = n;
    for (const auto& r : results) {
        sweep.total_specs += r.scanned;
        sweep.max_n_count = std::max(sweep.max_n_count, r.max_n);
        sweep.max_m_count = std::max(sweep.max_m_count, r.max_m);
        sweep.n_violations.insert(sweep.n_violations.end(), r.bad_n.begin(), r.bad_n.end());
        sweep.m_violations.insert(sweep.m_violations.end(), r.bad_m.begin(), r.bad_m.end());
        sweep.nm_violations.insert(sweep.nm_violations.end(), r.bad_nm.begin(), r.bad_nm.end());
    }
    return sweep;
}

Catalog enumerate_actions(int n, bool boxes_only, int workers) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("dimension out of range");
    workers = resolve_workers(workers);
    auto bases = all_subgroup_bases(n);

    struct JobResult {
        std::uint64_t scanned = 0;
        std::set<std::string> encodings;
    };
    std::function<JobResult(int)> job = [&](int idx) {
        const auto& rows = bases[idx];
        int r = static_cast<int>(rows.size());
        JobResult res;
        std::vector<std::string> gens(r), phis(r);
        for (int i = 0; i < r; ++i) gens[i] = sign_str(rows[i], n);
        // parity map: free choice on each basis row
        std::vector<std::uint32_t> assign(r, 0);
        while (true) {
            for (int i = 0; i < r; ++i) phis[i] = parity_str(assign[i], n);
            GroupSpec g = GroupSpec::make(n, gens, phis);
            ++res.scanned;
            res.encodings.insert(canonical_form(g).encoding);
            int i = 0;
            while (i < r && ++assign[i] == (1u << n)) assign[i++] = 0;
            if (i == r) break;
        }
        return res;
    };
    auto results = run_jobs<JobResult>(static_cast<int>(bases.size()), workers, job);

    Catalog cat;
    cat.n = n;
    cat.boxes_only = boxes_only;
    std::set<std::string> unique;
    for (const auto& r : results) {
        cat.total_specs += r.scanned;
        unique.insert(r.encodings.begin(), r.encodings.end());
    }

    std::vector<std::string> encs(unique.begin(), unique.end());
    std::function<CatalogEntry(int)> build = [&](int idx) {
        return describe(spec_from_encoding(encs[idx]));
    };
    auto entries = run_jobs<CatalogEntry>(static_cast<int>(encs.size()), workers, build);
    for (auto& e : entries) {
        if (boxes_only && !e.is_box) continue;
        cat.entries.push_back(std::move(e));
    }
    std::sort(cat.entries.begin(), cat.entries.end(),
              [](const CatalogEntry& a, const CatalogEntry& b) {
                  return std::tie(a.id, a.encoding) < std::tie(b.id, b.encoding);
              });
    return cat;
}

}  // namespace nbox
