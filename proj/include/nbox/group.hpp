#pragma once

// Normalized model of the crystallographic actions this project classifies:
// the group of maps x -> eps*x + phi(eps) + 2m, where eps ranges over a
// subgroup H of the diagonal sign group {+-1}^n, phi : H -> (Z/2)^n is a
// homomorphism giving each sign vector its translation class, and m ranges
// over Z^n.  The translation lattice is fixed to 2Z^n; actions on other
// rectangular lattices are brought into this form by a diagonal affine
// change of coordinates (non-rectangular lattices are out of scope and
// treated as a model assumption).
//
// Sign vectors and parity vectors are kept as bitmasks: bit i of a sign
// mask means coordinate i is negated, bit i of a parity mask is the i-th
// entry of phi.  The quarter grid {0, 1/2, 1, 3/2}^n mod 2Z^n, where all
// isolated fixed points live, is packed 2 bits per coordinate (value =
// code/2).

#include "nbox/linalg.hpp"
#include "nbox/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nbox {

constexpr int kMaxDim = 6;

std::string sign_str(std::uint32_t mask, int n);      // e.g. "-++"
std::string parity_str(std::uint32_t mask, int n);    // e.g. "001"
std::uint32_t parse_sign(const std::string& s);       // throws on bad chars
std::uint32_t parse_parity(const std::string& s);

// A point of the quarter grid with some coordinates left free ("generic").
// Codes: 0..3 = twice the coordinate value; -1 = free.
struct PartialPoint {
    int n = 0;
    std::array<std::int8_t, 8> c{};

    static PartialPoint all_free(int n);
    static PartialPoint from_packed(int n, std::uint32_t packed);  // fully pinned
    static PartialPoint from_point(const VecQ& p);  // all coords in (1/2)Z, reduced mod 2

    bool pinned(int i) const { return c[i] >= 0; }
    bool fully_pinned() const;
    std::uint32_t packed() const;        // requires fully_pinned
    std::uint32_t free_mask() const;
    std::uint32_t half_mask() const;     // pinned coords with value in {1/2, 3/2}
    VecQ lift() const;                   // requires fully_pinned; values in [0, 2)
    std::string str() const;             // "(0, 1/2, *)"

    friend bool operator==(const PartialPoint&, const PartialPoint&) = default;
};

// Finite diagonal action data: the subgroup H with its parity homomorphism.
class GroupSpec {
public:
    GroupSpec() = default;

    // Builds the closure of the given generators, extending phi linearly.
    // Throws std::invalid_argument on inconsistent parities, dimension out
    // of [1, kMaxDim], or malformed strings.
    static GroupSpec make(int n, const std::vector<std::string>& gens,
                          const std::vector<std::string>& phis);
    static GroupSpec make_masks(int n,
                                const std::vector<std::pair<std::uint32_t, std::uint32_t>>& gens);

    int n() const { return n_; }
    int order() const { return static_cast<int>(members_.size()); }
    const std::vector<std::uint32_t>& members() const { return members_; }
    bool contains(std::uint32_t sign_mask) const;
    std::uint32_t phi(std::uint32_t sign_mask) const;  // requires membership

    // Sorted (sign mask, parity mask) table; the full source of truth.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> table() const;
    // An F2-echelon generating set with parities (identity-free, minimal).
    std::vector<std::pair<std::uint32_t, std::uint32_t>> minimal_generators() const;

    // Action on packed quarter-grid classes mod 2Z^n: x -> eps*x + phi(eps).
    std::uint32_t act_packed(std::uint32_t sign_mask, std::uint32_t packed) const;

    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

private:
    int n_ = 0;
    std::vector<std::uint32_t> members_;
    std::vector<std::uint16_t> phi_;  // indexed by sign mask, 0xFFFF = not in H
};

// One concrete group element (eps, t) with an integral translation part.
struct AffineElement {
    int n = 0;
    std::uint32_t sign_mask = 0;
    std::vector<long long> t;

    std::string str() const;  // "(-+-; (0, 0, 1))"
};

// (a o b)(x) = a(b(x)).
AffineElement compose(const AffineElement& a, const AffineElement& b);

// Checks t = phi(eps) mod 2 against the group data (membership of the element).
bool element_of(const GroupSpec& g, const AffineElement& e);

// Fixed-point set of one element: empty, or an axis-parallel affine
// subspace with some coordinates pinned to half-integers.
struct FixedSet {
    bool empty = true;
    std::vector<std::optional<Rational>> coord;  // pinned value or free
    std::string str() const;
};
FixedSet fixed_set(const AffineElement& e);

// Sign vectors of G fixing a (partial) point: eps is in the stabilizer iff
// flipped coordinates are pinned with 2*p_i = phi(eps)_i mod 2 and all
// non-flipped coordinates have phi(eps)_i = 0.  Free coordinates must not
// be flipped.  The result is closed under composition and returned as a
// sub-GroupSpec.
GroupSpec stabilizer(const GroupSpec& g, const PartialPoint& p);

// Same membership test on raw masks (hot path for sweeps).
inline bool stabilizes(std::uint32_t sign_mask, std::uint32_t phi_mask,
                       std::uint32_t free_mask, std::uint32_t half_mask) {
    if (phi_mask & ~sign_mask) return false;           // +1 coords need phi = 0
    if (sign_mask & free_mask) return false;           // free coords cannot flip
    return ((phi_mask ^ half_mask) & sign_mask) == 0;  // flipped: parity matches 2p
}

// Concrete translation of the stabilizer element at a pinned point:
// t_i = 2 p_i on flipped coordinates, 0 elsewhere.
AffineElement stabilizer_element(const GroupSpec& g, const PartialPoint& p,
                                 std::uint32_t sign_mask);

}  // namespace nbox
