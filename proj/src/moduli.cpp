#include "nbox/moduli.hpp"

#include "nbox/rng.hpp"

#include <stdexcept>

namespace nbox {

ModuliBasis invariant_form_basis(const GroupSpec& g) {
    int n = g.n();
    ModuliBasis mb;
    mb.n = n;
    for (int i = 0; i < n; ++i) {
        SymFormQ e = SymFormQ::zero(n);
        e.set(i, i, Rational(1));
        mb.basis.push_back(e);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool survives = true;
            for (auto s : g.members()) {
                bool fi = s & (1u << i), fj = s & (1u << j);
                if (fi != fj) {  // eps_i * eps_j = -1 kills the pair
                    survives = false;
                    break;
                }
            }
            if (survives) {
                mb.pairs.emplace_back(i, j);
                SymFormQ e = SymFormQ::zero(n);
                e.set(i, j, Rational(1));
                mb.basis.push_back(e);
            }
        }
    mb.dim = static_cast<int>(mb.basis.size());
    return mb;
}

MetricSample repair_to_pd(SymFormQ start, const SymFormQ& add) {
    MetricSample ms;
    if (is_positive_definite(start)) {
        ms.g = std::move(start);
        ms.lambda = Rational(0);
        return ms;
    }
    Rational lambda(1);
    for (int iter = 0; iter < 64; ++iter) {
        SymFormQ cand = start;
        for (int i = 0; i < cand.n; ++i)
            for (int j = i; j < cand.n; ++j)
                cand.set(i, j, cand.at(i, j) + lambda * add.at(i, j));
        if (is_positive_definite(cand)) {
            ms.g = std::move(cand);
            ms.repaired = true;
            ms.lambda = lambda;
            return ms;
        }
        lambda *= Rational(2);
    }
    throw std::logic_error("positive definiteness repair did not terminate");
}

MetricSample sample_invariant_metric(const GroupSpec& g, std::uint64_t seed) {
    ModuliBasis mb = invariant_form_basis(g);
    Rng rng = Rng(seed).fork("invariant-metric");
    SymFormQ form = SymFormQ::zero(g.n());
    static constexpr long long kDens[3] = {1, 2, 4};
    for (int i = 0; i < g.n(); ++i) {
        // positive diagonal coefficients, small denominators
        Rational d(rng.range(1, 8), kDens[rng.below(3)]);
        form.set(i, i, d);
    }
    for (std::size_t p = 0; p < mb.pairs.size(); ++p) {
        auto [i, j] = mb.pairs[p];
        form.set(i, j, rng.small_rational(3));
    }
    MetricSample ms = repair_to_pd(std::move(form), SymFormQ::identity(g.n()));
    if (!is_invariant_form(g, ms.g))
        throw std::logic_error("sampled metric is not invariant");
    return ms;
}

bool is_invariant_form(const GroupSpec& g, const SymFormQ& form) {
    if (form.n != g.n()) return false;
    for (auto s : g.members())
        for (int i = 0; i < form.n; ++i)
            for (int j = 0; j < form.n; ++j) {
                Rational v = form.at(i, j);
                bool fi = s & (1u << i), fj = s & (1u << j);
                Rational w = (fi == fj) ? v : -v;  // (eps g eps)_ij = eps_i eps_j g_ij
                if (w != v) return false;
            }
    return true;
}

}  // namespace nbox
