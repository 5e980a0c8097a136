#pragma once

#include "nbox/group.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nbox {

// Canonical representative of a sign-translation action under coordinate
// permutations and half-integer origin shifts: the lexicographically least
// sorted (sign, parity) table over all such changes of coordinates.
struct CanonicalForm {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> table;
    std::string encoding;  // "n=3;+--:010,..." rendering of the table
    std::string id;        // 64-bit FNV-1a of the encoding, lowercase hex
};

CanonicalForm canonical_form(const GroupSpec& g);

// Round trips: encoding text back to a group, and hashing on its own.
GroupSpec spec_from_encoding(const std::string& encoding);
std::string content_id(const std::string& encoding);

// The handful of classes with standing names.
std::optional<std::string> class_name(const GroupSpec& g);
std::optional<GroupSpec> named_class(const std::string& name);
std::vector<std::string> named_class_names();

struct CatalogEntry {
    int n = 0;
    std::string id;
    std::string encoding;
    int group_order = 0;
    int extremal_class_count = 0;    // N
    int maximal_subgroup_count = 0;  // M
    bool is_box = false;
    std::optional<int> gluing_exponent;  // boxes only
    int moduli_dim = 0;
    std::optional<std::string> name;
};

struct Catalog {
    int n = 0;
    bool boxes_only = false;
    std::uint64_t total_specs = 0;  // (subgroup, parity map) pairs scanned
    std::vector<CatalogEntry> entries;  // one per class, sorted by id
};

// Exhaustive scan of every diagonal sign subgroup with every parity
// homomorphism, deduplicated by canonical form.  Deterministic for any
// worker count.
Catalog enumerate_actions(int n, bool boxes_only, int workers);

// Box class counts pinned for small n; larger n is whatever the scan finds.
std::optional<int> known_box_count(int n);

// One offending action from the bound sweep, serialized for the report.
struct BoundCounterexample {
    std::string encoding;
    int value = 0;  // the count that broke the bound
    char kind = 'N';
};

struct BoundSweep {
    int n = 0;
    std::uint64_t total_specs = 0;
    int max_n_count = 0;
    int max_m_count = 0;
    std::vector<BoundCounterexample> n_violations;   // N > 2^n
    std::vector<BoundCounterexample> m_violations;   // M > 2^n
    std::vector<BoundCounterexample> nm_violations;  // N > M
    bool clean() const {
        return n_violations.empty() && m_violations.empty() && nm_violations.empty();
    }
};

// Checks N <= 2^n, M <= 2^n and N <= M on every (subgroup, parity map)
// pair at dimension n, with no sampling and no deduplication.
BoundSweep sweep_bounds(int n, int workers);

// 2^k = 2^n / (|H| * covol(L)).  Throws std::invalid_argument off boxes and
// std::logic_error when the ratio is not a power of two in [0, n-1].
int compute_gluing_exponent(const GroupSpec& g);

CatalogEntry describe(const GroupSpec& g);

}  // namespace nbox
