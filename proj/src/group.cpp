#include "nbox/group.hpp"

#include <algorithm>
#include <stdexcept>

namespace nbox {

std::string sign_str(std::uint32_t mask, int n) {
    std::string s(n, '+');
    for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) s[i] = '-';
    return s;
}

std::string parity_str(std::uint32_t mask, int n) {
    std::string s(n, '0');
    for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) s[i] = '1';
    return s;
}

std::uint32_t parse_sign(const std::string& s) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '-')
            m |= 1u << i;
        else if (s[i] != '+')
            throw std::invalid_argument("bad sign vector '" + s + "'");
    }
    return m;
}

std::uint32_t parse_parity(const std::string& s) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            m |= 1u << i;
        else if (s[i] != '0')
            throw std::invalid_argument("bad parity vector '" + s + "'");
    }
    return m;
}

PartialPoint PartialPoint::all_free(int n) {
    PartialPoint p;
    p.n = n;
    p.c.fill(-1);
    return p;
}

PartialPoint PartialPoint::from_packed(int n, std::uint32_t packed) {
    PartialPoint p;
    p.n = n;
    p.c.fill(-1);
    for (int i = 0; i < n; ++i) p.c[i] = static_cast<std::int8_t>((packed >> (2 * i)) & 3u);
    return p;
}

PartialPoint PartialPoint::from_point(const VecQ& v) {
    PartialPoint p;
    p.n = static_cast<int>(v.size());
    p.c.fill(-1);
    for (int i = 0; i < p.n; ++i) {
        Rational twice = v[i] * Rational(2);
        if (!twice.is_integer())
            throw std::invalid_argument("point coordinate " + v[i].str() +
                                        " is not a half-integer");
        BigInt r = twice.num() % 4;
        if (r < 0) r += 4;
        p.c[i] = static_cast<std::int8_t>(r);
    }
    return p;
}

bool PartialPoint::fully_pinned() const {
    for (int i = 0; i < n; ++i)
        if (c[i] < 0) return false;
    return true;
}

std::uint32_t PartialPoint::packed() const {
    std::uint32_t m = 0;
    for (int i = 0; i < n; ++i) {
        if (c[i] < 0) throw std::logic_error("packed() on a point with free coordinates");
        m |= static_cast<std::uint32_t>(c[i]) << (2 * i);
    }
    return m;
}

std::uint32_t PartialPoint::free_mask() const {
    std::uint32_t m = 0;
    for (int i = 0; i < n; ++i)
        if (c[i] < 0) m |= 1u << i;
    return m;
}

std::uint32_t PartialPoint::half_mask() const {
    std::uint32_t m = 0;
    for (int i = 0; i < n; ++i)
        if (c[i] >= 0 && (c[i] & 1)) m |= 1u << i;
    return m;
}

VecQ PartialPoint::lift() const {
    VecQ v(n);
    for (int i = 0; i < n; ++i) {
        if (c[i] < 0) throw std::logic_error("lift() on a point with free coordinates");
        v[i] = Rational(c[i], 2);
    }
    return v;
}

std::string PartialPoint::str() const {
    std::string s = "(";
    for (int i = 0; i < n; ++i) {
        if (i) s += ", ";
        s += c[i] < 0 ? std::string("*") : Rational(c[i], 2).str();
    }
    return s + ")";
}

GroupSpec GroupSpec::make(int n, const std::vector<std::string>& gens,
                          const std::vector<std::string>& phis) {
    if (gens.size() != phis.size())
        throw std::invalid_argument("generator/parity count mismatch");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (static_cast<int>(gens[i].size()) != n || static_cast<int>(phis[i].size()) != n)
            throw std::invalid_argument("generator length does not match dimension");
        pairs.emplace_back(parse_sign(gens[i]), parse_parity(phis[i]));
    }
    return make_masks(n, pairs);
}

GroupSpec GroupSpec::make_masks(
    int n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& gens) {
    if (n < 1 || n > kMaxDim)
        throw std::invalid_argument("dimension out of range 1.." + std::to_string(kMaxDim));
    // F2 echelon basis over sign masks, carrying parity masks along.  The
    // basis is kept mutually reduced with distinct leading (lowest set)
    // bits.  A generator that reduces to the identity must reduce to parity
    // zero, otherwise phi is not well defined on the span.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> basis;
    for (auto [s, p] : gens) {
        if (s >= (1u << n) || p >= (1u << n))
            throw std::invalid_argument("generator mask out of range");
        for (const auto& [bs, bp] : basis) {
            std::uint32_t lead = bs & ~(bs - 1);
            if (s & lead) {
                s ^= bs;
                p ^= bp;
            }
        }
        if (s == 0) {
            if (p != 0)
                throw std::invalid_argument(
                    "inconsistent parity assignment: a relation forces a nonzero parity on "
                    "the identity");
            continue;
        }
        std::uint32_t lead = s & ~(s - 1);
        for (auto& [bs, bp] : basis)
            if (bs & lead) {
                bs ^= s;
                bp ^= p;
            }
        basis.emplace_back(s, p);
    }
    GroupSpec g;
    g.n_ = n;
    g.phi_.assign(std::size_t{1} << n, 0xFFFF);
    std::size_t k = basis.size();
    for (std::size_t sub = 0; sub < (std::size_t{1} << k); ++sub) {
        std::uint32_t s = 0, p = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (sub & (std::size_t{1} << i)) {
                s ^= basis[i].first;
                p ^= basis[i].second;
            }
        if (g.phi_[s] != 0xFFFF && g.phi_[s] != p)
            throw std::invalid_argument("inconsistent parity assignment in closure");
        g.phi_[s] = static_cast<std::uint16_t>(p);
    }
    for (std::uint32_t s = 0; s < (1u << n); ++s)
        if (g.phi_[s] != 0xFFFF) g.members_.push_back(s);
    return g;
}

bool GroupSpec::contains(std::uint32_t sign_mask) const {
    return sign_mask < phi_.size() && phi_[sign_mask] != 0xFFFF;
}

std::uint32_t GroupSpec::phi(std::uint32_t sign_mask) const {
    if (!contains(sign_mask)) throw std::invalid_argument("sign vector not in group");
    return phi_[sign_mask];
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> GroupSpec::table() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> t;
    t.reserve(members_.size());
    for (auto s : members_) t.emplace_back(s, phi_[s]);
    return t;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> GroupSpec::minimal_generators() const {
    // Greedy scan in member order; `ech` holds reduced vectors for the
    // independence test, `out` the original members that were picked.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ech, out;
    for (auto s : members_) {
        if (s == 0) continue;
        std::uint32_t r = s, p = phi_[s];
        for (const auto& [bs, bp] : ech) {
            std::uint32_t lead = bs & ~(bs - 1);
            if (r & lead) {
                r ^= bs;
                p ^= bp;
            }
        }
        if (r == 0) continue;
        std::uint32_t lead = r & ~(r - 1);
        for (auto& [bs, bp] : ech)
            if (bs & lead) {
                bs ^= r;
                bp ^= p;
            }
        ech.emplace_back(r, p);
        out.emplace_back(s, phi_[s]);
    }
    return out;
}

std::uint32_t GroupSpec::act_packed(std::uint32_t sign_mask, std::uint32_t packed) const {
    std::uint32_t phi_mask = phi(sign_mask);
    std::uint32_t out = 0;
    for (int i = 0; i < n_; ++i) {
        std::uint32_t c = (packed >> (2 * i)) & 3u;
        if (sign_mask & (1u << i)) c = (4u - c) & 3u;     // x -> -x on the quarter grid
        if (phi_mask & (1u << i)) c = (c + 2u) & 3u;      // translation by 1 = code 2
        out |= c << (2 * i);
    }
    return out;
}

std::string AffineElement::str() const {
    std::string s = "(" + sign_str(sign_mask, n) + "; (";
    for (int i = 0; i < n; ++i) {
        if (i) s += ", ";
        s += std::to_string(t[i]);
    }
    return s + "))";
}

AffineElement compose(const AffineElement& a, const AffineElement& b) {
    if (a.n != b.n) throw std::invalid_argument("composing elements of different dimension");
    AffineElement r;
    r.n = a.n;
    r.sign_mask = a.sign_mask ^ b.sign_mask;
    r.t.resize(a.n);
    for (int i = 0; i < a.n; ++i) {
        long long bt = (a.sign_mask & (1u << i)) ? -b.t[i] : b.t[i];
        r.t[i] = bt + a.t[i];
    }
    return r;
}

bool element_of(const GroupSpec& g, const AffineElement& e) {
    if (e.n != g.n()) return false;
    if (!g.contains(e.sign_mask)) return false;
    std::uint32_t p = g.phi(e.sign_mask);
    for (int i = 0; i < e.n; ++i) {
        long long want = (p >> i) & 1;
        long long have = ((e.t[i] % 2) + 2) % 2;
        if (want != have) return false;
    }
    return true;
}

FixedSet fixed_set(const AffineElement& e) {
    FixedSet f;
    f.coord.assign(e.n, std::nullopt);
    // x = eps x + t coordinatewise: +1 coords need t_i = 0 (else empty),
    // -1 coords are pinned to t_i / 2.
    for (int i = 0; i < e.n; ++i) {
        if (e.sign_mask & (1u << i)) {
            f.coord[i] = Rational(e.t[i], 2);
        } else if (e.t[i] != 0) {
            f.coord.assign(e.n, std::nullopt);
            f.empty = true;
            return f;
        }
    }
    f.empty = false;
    return f;
}

std::string FixedSet::str() const {
    if (empty) return "empty";
    std::string s = "{ x : ";
    bool any = false;
    for (std::size_t i = 0; i < coord.size(); ++i) {
        if (!coord[i]) continue;
        if (any) s += ", ";
        s += "x" + std::to_string(i + 1) + " = " + coord[i]->str();
        any = true;
    }
    if (!any) s += "all free";
    return s + " }";
}

GroupSpec stabilizer(const GroupSpec& g, const PartialPoint& p) {
    if (p.n != g.n()) throw std::invalid_argument("point dimension mismatch");
    std::uint32_t fm = p.free_mask(), hm = p.half_mask();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> gens;
    for (auto s : g.members())
        if (stabilizes(s, g.phi(s), fm, hm)) gens.emplace_back(s, g.phi(s));
    return GroupSpec::make_masks(g.n(), gens);
}

AffineElement stabilizer_element(const GroupSpec& g, const PartialPoint& p,
                                 std::uint32_t sign_mask) {
    if (!stabilizes(sign_mask, g.phi(sign_mask), p.free_mask(), p.half_mask()))
        throw std::invalid_argument("sign vector does not stabilize the point");
    AffineElement e;
    e.n = g.n();
    e.sign_mask = sign_mask;
    e.t.assign(e.n, 0);
    for (int i = 0; i < e.n; ++i)
        if (sign_mask & (1u << i)) e.t[i] = p.c[i];  // 2 * (c_i / 2)
    return e;
}

}  // namespace nbox
