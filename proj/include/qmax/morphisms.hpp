#pragma once

#include <optional>
#include <vector>

#include "qmax/ideal.hpp"
#include "qmax/lattice.hpp"
#include "qmax/ring.hpp"

namespace qmax {

// f^{-1}(J): always an ideal of the source.
inline Ideal contract_along(const RingMap& f, const Ideal& J) {
    require_same_ring(*f.target, J);
    return Ideal{f.source->id(), f.preimage(J.members)};
}

// I S: the ideal of the target generated by f(I).
inline Ideal extend_along(const RingMap& f, const Ideal& I) {
    require_same_ring(*f.source, I);
    std::vector<Elem> gens;
    I.members.for_each([&](Elem a) { gens.push_back(f.image[a]); });
    return ideal_generated_by(*f.target, gens);
}

struct MaxUpperResult {
    Ideal canonical;                // canonical-order greatest maximal member
    std::vector<Ideal> all_maximal; // every maximal member of the family
};

// Lemma 3.53: a maximal element of { K : J <= K (<= bound), f^{-1}(K) = I }
// where I := f^{-1}(J). The family is nonempty (J belongs to it).
inline MaxUpperResult max_upper(const RingMap& f, const Ideal& J,
                                const std::optional<Ideal>& bound = std::nullopt,
                                const Limits& lim = Limits::global()) {
    const Ring& S = *f.target;
    require_same_ring(S, J);
    Ideal I = contract_along(f, J);
    if (!is_proper(*f.source, I)) throw invalid_parameter("max_upper: f^{-1}(J) must be proper");
    auto L = lattice_of(S, lim);

    std::vector<int> family;
    for (int k = 0; k < static_cast<int>(L->ideals.size()); ++k) {
        const Ideal& K = L->ideals[k];
        if (!J.members.is_subset_of(K.members)) continue;
        if (bound && !K.members.is_subset_of(bound->members)) continue;
        if (contract_along(f, K) != I) continue;
        family.push_back(k);
    }
    require(!family.empty(), "max_upper: family unexpectedly empty");

    MaxUpperResult out{Ideal{}, {}};
    for (int k : family) {
        bool maximal = true;
        for (int k2 : family)
            if (k2 != k && L->ideals[k].members.is_proper_subset_of(L->ideals[k2].members))
                maximal = false;
        if (maximal) out.all_maximal.push_back(L->ideals[k]);
    }
    // canonical order is ascending; the greatest maximal member is canonical
    out.canonical = out.all_maximal.back();
    return out;
}

}  // namespace qmax
