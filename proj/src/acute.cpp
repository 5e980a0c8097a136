#include "nbox/acute.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace nbox {

namespace {

Rational dot(const VecQ& a, const VecQ& b) {
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void validate(const std::vector<VecQ>& points) {
    if (points.empty()) throw std::invalid_argument("empty point set");
    std::size_t d = points[0].size();
    if (d == 0) throw std::invalid_argument("zero-dimensional points");
    for (const auto& p : points)
        if (p.size() != d) throw std::invalid_argument("points of mixed dimension");
    std::set<std::vector<std::string>> seen;
    for (const auto& p : points) {
        std::vector<std::string> key;
        for (const auto& x : p) key.push_back(x.str());
        if (!seen.insert(key).second) throw std::invalid_argument("duplicate point");
    }
}

}  // namespace

AcuteCheck check_acute_free(const std::vector<VecQ>& points) {
    validate(points);
    AcuteCheck rep;
    rep.dim = static_cast<int>(points[0].size());
    rep.count = static_cast<int>(points.size());
    rep.bound = BigInt(1) << rep.dim;
    rep.at_bound = BigInt(rep.count) == rep.bound;
    rep.over_bound = BigInt(rep.count) > rep.bound;

    // Walk ordered triples (i, j, k) lexicographically so the reported
    // witness is reproducible: the first angle with negative cosine wins.
    int m = rep.count;
    for (int i = 0; i < m && rep.acute_free; ++i)
        for (int j = 0; j < m && rep.acute_free; ++j) {
            if (j == i) continue;
            for (int k = 0; k < m; ++k) {
                if (k == i || k == j) continue;
                Rational d = dot(points[i] - points[j], points[k] - points[j]);
                if (d.sign() < 0) {
                    rep.acute_free = false;
                    rep.witness = AngleWitness{i, j, k, d};
                    break;
                }
            }
        }
    return rep;
}

CardinalityReport cardinality_report(const AcuteCheck& checked) {
    if (!checked.acute_free)
        throw std::invalid_argument("cardinality bound applies to acute-free sets only");
    CardinalityReport rep;
    rep.m = checked.count;
    rep.bound = checked.bound;
    rep.margin = checked.bound - checked.count;
    rep.at_bound = checked.at_bound;
    rep.falsifies = checked.over_bound;
    return rep;
}

ShapeReport recognize_right_parallelepiped(const std::vector<VecQ>& points) {
    validate(points);
    int n = static_cast<int>(points[0].size());
    if (BigInt(points.size()) != (BigInt(1) << n))
        throw std::invalid_argument("shape recognition needs exactly 2^dim points");
    ShapeReport rep;
    if (n > 4) {
        rep.shape = BoxShape::kUnsupportedDim;
        return rep;
    }

    std::vector<VecQ> sorted = points;
    auto lex_less = [](const VecQ& x, const VecQ& y) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] < y[i]) return true;
            if (y[i] < x[i]) return false;
        }
        return false;
    };
    std::sort(sorted.begin(), sorted.end(), lex_less);
    const VecQ& p0 = sorted[0];
    std::vector<VecQ> diffs;
    for (std::size_t i = 1; i < sorted.size(); ++i) diffs.push_back(sorted[i] - p0);

    // Try every n-subset of the differences as an edge basis.
    int m = static_cast<int>(diffs.size());
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    while (true) {
        std::vector<VecQ> gen;
        gen.push_back(VecQ(n, Rational(0)));
        for (int i = 0; i < n; ++i) {
            std::size_t sz = gen.size();
            for (std::size_t k = 0; k < sz; ++k) gen.push_back(gen[k] + diffs[idx[i]]);
        }
        std::sort(gen.begin(), gen.end(), lex_less);
        bool generates = true;
        for (std::size_t k = 0; k < gen.size(); ++k)
            if (!(p0 + gen[k] == sorted[k])) {
                generates = false;
                break;
            }
        if (generates) {
            rep.is_parallelepiped = true;
            bool right = true;
            for (int i = 0; i < n && right; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (!dot(diffs[idx[i]], diffs[idx[j]]).is_zero()) {
                        right = false;
                        break;
                    }
            if (right) {
                rep.shape = BoxShape::kRightParallelepiped;
                for (int i = 0; i < n; ++i) rep.edges.push_back(diffs[idx[i]]);
                return rep;
            }
        }
        // next combination
        int i = n - 1;
        while (i >= 0 && idx[i] == m - n + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int k = i + 1; k < n; ++k) idx[k] = idx[k - 1] + 1;
    }
    rep.shape = BoxShape::kSkewOrOther;
    return rep;
}

}  // namespace nbox
