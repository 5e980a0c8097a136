#pragma once

#include "nbox/linalg.hpp"

#include <optional>
#include <vector>

namespace nbox {

// First ordered triple (i, j, k), in lexicographic order, whose angle at the
// middle vertex j has negative cosine: (x_i - x_j) . (x_k - x_j) < 0.
struct AngleWitness {
    int i = 0;
    int j = 0;  // apex
    int k = 0;
    Rational dot;
};

struct AcuteCheck {
    int dim = 0;
    int count = 0;
    bool acute_free = true;  // every angle has nonnegative cosine
    std::optional<AngleWitness> witness;
    BigInt bound;  // 2^dim
    bool at_bound = false;
    bool over_bound = false;
};

// Standard inner product throughout; exact rational arithmetic, no rounding.
AcuteCheck check_acute_free(const std::vector<VecQ>& points);

// Cardinality versus the 2^dim bound; only defined for acute-free sets.
// A count above the bound is flagged: it would contradict the bound theorem.
struct CardinalityReport {
    int m = 0;
    BigInt bound;
    BigInt margin;  // bound - m
    bool at_bound = false;
    bool falsifies = false;
};

CardinalityReport cardinality_report(const AcuteCheck& checked);

enum class BoxShape { kRightParallelepiped, kSkewOrOther, kUnsupportedDim };

struct ShapeReport {
    BoxShape shape = BoxShape::kSkewOrOther;
    bool is_parallelepiped = false;
    std::vector<VecQ> edges;  // pairwise orthogonal edge vectors when recognized
};

// Decides whether a set of exactly 2^dim points is the vertex set of a right
// parallelepiped.  Exhaustive over edge bases; dim > 4 is reported as
// unsupported rather than guessed at.
ShapeReport recognize_right_parallelepiped(const std::vector<VecQ>& points);

}  // namespace nbox
