#pragma once

// Fixed-point combinatorics of a group spec: the extremal set (isolated
// fixed points up to the 2Z^n translations), its orbit count N, and the
// maximal finite subgroups up to conjugacy with their count M.
//
// A quarter-grid class is an isolated fixed point of some subgroup exactly
// when its stabilizer has full support (every coordinate is flipped by
// some stabilizing sign vector), which happens exactly when the stabilizer
// sign vectors sum to the zero matrix.  Both tests are run and must agree.

#include "nbox/group.hpp"

#include <optional>
#include <vector>

namespace nbox {

struct ExtremalSet {
    int n = 0;
    std::vector<std::uint32_t> points;  // packed quarter classes, sorted
    std::vector<int> orbit;             // orbit index per entry of `points`
    int orbit_count = 0;                // N
};

ExtremalSet extremal_points(const GroupSpec& g);
int count_N(const GroupSpec& g);

struct ExtremalityCertificate {
    bool extremal = false;
    GroupSpec stab;
    // For extremal points the stabilizer's sign sum is the zero matrix; for
    // non-extremal points this is a coordinate no stabilizer element flips
    // (so the direction pair +-e_axis stays at angular distance pi).
    std::optional<int> invariant_axis;
};

ExtremalityCertificate is_extremal(const GroupSpec& g, const PartialPoint& p);

struct FiniteSubgroupRep {
    PartialPoint pattern;  // support-reduced fixed locus (free = unflipped)
    GroupSpec stab;
};

struct FiniteSubgroupReport {
    int m_count = 0;  // M: maximal finite subgroups up to conjugacy
    std::vector<FiniteSubgroupRep> representatives;
};

// Sweeps all 5^n partial points (pin to a quarter value or leave free),
// keeps the subgroups that cannot be enlarged by pinning further, and
// merges them along the group action on fixed-locus patterns.
FiniteSubgroupReport maximal_finite(const GroupSpec& g);

}  // namespace nbox
