#pragma once

// Exact flat geometry of the extremal set: its lattice structure, the
// Voronoi neighbor vectors for an invariant metric, reflection/midpoint/
// volume cell properties, the codimension-2 singular strata, and seeded
// sampling checks.  All searches are certified: the enumeration boxes come
// from the exact bound x_i^2 <= (G^{-1})_ii * Q(x) for a positive definite
// Gram matrix G, so no candidate below a given squared radius can be missed.

#include "nbox/group.hpp"
#include "nbox/linalg.hpp"
#include "nbox/orbits.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nbox {

struct ExtremalLattice {
    int n = 0;
    VecQ origin;          // lift of the smallest extremal class, in [0,2)^n
    LatticeBasis basis;   // canonical triangular basis of the difference span
    Rational covol;       // |det basis| (Lebesgue)
    ExtremalSet classes;  // the underlying extremal classes and orbits
};

struct LatticeWitness {
    std::string check;         // which verification failed
    std::vector<VecQ> points;  // offending tuple
};

struct LatticeResult {
    ExtremalLattice lattice;
    bool closure_ok = false;       // fourth-point closure Y + (Z - X)
    bool symmetry_ok = false;      // central symmetry 2X - Y
    bool generation_ok = false;    // every difference lies in the basis span
    bool box_checks_applied = false;
    bool coset_cover_ok = false;   // boxes: origin + L reproduces the set exactly
    bool orbit_parity_ok = false;  // boxes: same orbit <=> even basis coordinates
    std::optional<LatticeWitness> witness;
    bool ok() const {
        return closure_ok && symmetry_ok && generation_ok &&
               (!box_checks_applied || (coset_cover_ok && orbit_parity_ok));
    }
};

// Requires a nonempty extremal set.  Verification failures are reported
// with a witness, never thrown; they cannot occur for boxes.
LatticeResult extremal_lattice(const GroupSpec& g);

// Voronoi-relevant vectors of the lattice under g: nonzero v such that
// +-v are the unique norm minimizers of the coset v + 2L.  Returned as
// full +- pairs, sorted lexicographically.
std::vector<VecQ> relevant_vectors(const LatticeBasis& lattice, const SymFormQ& g);

// All minimum-norm coefficient vectors for each nonzero coset of L/2L
// (index by the odd-coefficient pattern); used by the facet equivalence
// property checks.
struct CosetMinima {
    std::uint32_t coset = 0;            // parity pattern of coefficients
    Rational min_norm2;
    std::vector<std::vector<long long>> argmins;  // coefficient vectors
};
std::vector<CosetMinima> voronoi_cosets(const LatticeBasis& lattice, const SymFormQ& g);

// Per-orbit cell verification for a box: the stabilizer orbit of every
// relevant vector is exactly {v, -v}; the midpoint of every relevant edge
// is strictly closer to its endpoints than to any other extremal point
// (the simple-edge property); cell volume shares are covol/|St| = 2^-n
// times the quotient volume, compared exactly.
struct CellOrbitReport {
    std::uint32_t rep_class = 0;  // packed class of the orbit representative
    int stabilizer_order = 0;
    bool reflection_ok = false;
    bool midpoint_ok = false;
    bool share_ok = false;
    std::optional<VecQ> failing_vector;
};

struct CellReport {
    std::vector<VecQ> relevant;
    std::vector<CellOrbitReport> orbits;
    bool facet_equivalence_ok = false;  // relevance <=> strict midpoint uniqueness
    Rational share;                     // covol/|St|, equal across orbits
    Rational quotient_volume;           // 2^n / |H|
    bool shares_sum_ok = false;
    bool ok() const;
};

CellReport verify_cell_properties(const GroupSpec& g, const SymFormQ& metric);

enum class ConeType { kHalfPlane, kQuarterPlane, kConePi };
std::string cone_type_str(ConeType t);

// Transverse cone geometry at a codimension-2 pinned pair: the generic
// stabilizer restricted to the pair is a subgroup of {+-1}^2, and the
// normal cone is R x half-plane (one mirror), a quarter plane (two
// mirrors), or the cone over a circle of length pi (only the double flip).
struct StratumReport {
    int axis_i = 0, axis_j = 0;
    int code_i = 0, code_j = 0;  // quarter codes (value = code/2)
    std::vector<std::string> restriction;  // nontrivial restricted elements, e.g. {"-+", "--"}
    ConeType cone = ConeType::kHalfPlane;
    std::vector<VecQ> normal_plane;  // g-orthogonal complement of the free directions
};

std::vector<StratumReport> classify_codim2_strata(const GroupSpec& g, const SymFormQ& metric);

// Seeded midpoint test: for random rational points x and every extremal
// orbit, the midpoint z of the shortest segment from the orbit to x stays
// at least as close to that orbit as to any other extremal point.
struct MidpointSampleReport {
    int samples = 0;
    int violations = 0;
    std::optional<std::string> first_witness;
};

MidpointSampleReport sampled_midpoint_check(const GroupSpec& g, const SymFormQ& metric,
                                            int samples, std::uint64_t seed);

// Sampled space-of-directions diameter test at a pinned point: for random
// integer direction pairs (v, w), some stabilizer element must give
// g(v, eps w) >= 0.  At extremal points this always holds (the stabilizer
// averages to zero); at non-extremal points the pair (e_k, -e_k) along an
// invariant axis k is an all-negative witness.
struct DirectionReport {
    int pairs = 0;
    int violations = 0;
};

DirectionReport direction_diameter_check(const GroupSpec& g, const SymFormQ& metric,
                                         const PartialPoint& p, int pairs, std::uint64_t seed);

// The deterministic antipodal witness at a non-extremal point: returns true
// when the pair (e_axis, -e_axis) produces all-negative stabilizer products.
bool antipodal_witness_all_negative(const GroupSpec& g, const SymFormQ& metric,
                                    const PartialPoint& p, int axis);

}  // namespace nbox
