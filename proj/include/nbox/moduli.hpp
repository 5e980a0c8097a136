#pragma once

// Invariant flat metrics of a group spec.  A symmetric form g is invariant
// under a diagonal sign group iff g_ij = 0 whenever some element flips
// exactly one of the coordinates i, j; the space is spanned by all E_ii
// plus E_ij + E_ji for the surviving pairs.

#include "nbox/group.hpp"
#include "nbox/linalg.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace nbox {

struct ModuliBasis {
    int n = 0;
    int dim = 0;
    std::vector<std::pair<int, int>> pairs;  // surviving off-diagonal pairs, i < j
    std::vector<SymFormQ> basis;             // E_00.., then pair forms in `pairs` order
};

ModuliBasis invariant_form_basis(const GroupSpec& g);

struct MetricSample {
    SymFormQ g;
    bool repaired = false;
    Rational lambda;  // multiple of the identity added to reach positive definiteness
};

// Deterministic seeded sample from the invariant cone: random small rational
// coefficients on the invariant basis, then, if the result is not positive
// definite, the smallest power-of-two multiple of the identity (itself always
// invariant here) is added.
MetricSample sample_invariant_metric(const GroupSpec& g, std::uint64_t seed);

// Exposed for tests: adds lambda * add for lambda = 1, 2, 4, ... until
// positive definite.
MetricSample repair_to_pd(SymFormQ start, const SymFormQ& add);

bool is_invariant_form(const GroupSpec& g, const SymFormQ& form);

}  // namespace nbox
