#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmax/ideal.hpp"
#include "qmax/lattice.hpp"
#include "qmax/ring.hpp"

namespace qmax {

// The trichotomy of quasi-maximal ideals, plus None for everything else.
//
// Two section-2 facts are documentation only, with no operations behind
// them: every finite commutative ring is a Max-ring (every nonzero module
// has a maximal submodule), and an ideal of a finite ring is T-nilpotent
// exactly when it is nilpotent. Both are immediate from finiteness.
enum class QClass { Inert, Decomposed, Ramified, None };

inline const char* qclass_name(QClass c) {
    switch (c) {
        case QClass::Inert: return "inert";
        case QClass::Decomposed: return "decomposed";
        case QClass::Ramified: return "ramified";
        default: return "none";
    }
}

struct QMaxClass {
    QClass tag = QClass::None;
    // Decomposed: m1, m2 the two distinct maximal ideals with I = m1 /\ m2.
    // Ramified: m1 is the maximal M with M^2 <= I < M.
    std::optional<Ideal> m1, m2;
    // None: an element a (not in I) with I + Ra neither R nor maximal.
    std::optional<Elem> violator;

    bool is_qmax() const { return tag != QClass::None; }
};

inline bool homotypic(const QMaxClass& a, const QMaxClass& b) {
    return a.is_qmax() && b.is_qmax() && a.tag == b.tag;
}

// I + Ra as a bit-vector (an ideal: proof of Thm 2.3 uses this construction).
inline Ideal ideal_plus_principal(const Ring& R, const Ideal& I, Elem a) {
    Ideal P = principal_ideal(R, a);
    return ideal_sum(R, I, P);
}

struct DefinitionCheck {
    bool qmax = false;
    std::optional<Elem> violator;  // least a falsifying the definition
};

// The defining property: for every a outside I, I + Ra is R or maximal.
inline DefinitionCheck is_qmax_definition(const Ring& R, const Ideal& I, const IdealLattice& L) {
    require_same_ring(R, I);
    if (!is_proper(R, I)) throw invalid_parameter("is_qmax_definition: I must be proper");
    for (Elem a = 0; a < R.size(); ++a) {
        if (I.contains(a)) continue;
        Ideal J = ideal_plus_principal(R, I, a);
        if (J.count() == R.size()) continue;
        int j = L.index_of(J);
        require(j >= 0, "I + Ra missing from the lattice");
        if (!L.is_maximal_index(j)) return {false, a};
    }
    return {true, std::nullopt};
}

inline bool is_qmax(const Ring& R, const Ideal& I, const IdealLattice& L) {
    return is_qmax_definition(R, I, L).qmax;
}

// Type classification straight from Definition 2.2 / Proposition 2.70,
// computed without consulting the definition (the two computations are
// compared by classify_qmax and by the Theorem 2.3 suite).
inline QMaxClass classify_qmax_by_type(const Ring& R, const Ideal& I, const IdealLattice& L) {
    require_same_ring(R, I);
    if (!is_proper(R, I)) throw invalid_parameter("classify_qmax: I must be proper");
    int i = L.index_of_checked(I);
    QMaxClass out;
    if (L.is_maximal_index(i)) {
        out.tag = QClass::Inert;
        return out;
    }
    auto over = maximals_over(I, L);
    // decomposed: intersection of two distinct maximal ideals
    for (std::size_t a = 0; a < over.size(); ++a)
        for (std::size_t b = a + 1; b < over.size(); ++b) {
            const Ideal& M1 = L.ideals[over[a]];
            const Ideal& M2 = L.ideals[over[b]];
            if ((M1.members & M2.members) == I.members) {
                out.tag = QClass::Decomposed;
                out.m1 = M1;
                out.m2 = M2;
                return out;
            }
        }
    // ramified: M-primary with M^2 <= I < M, covered by M
    for (int m : over) {
        const Ideal& M = L.ideals[m];
        Ideal M2 = ideal_product(R, M, M);
        if (!M2.members.is_subset_of(I.members)) continue;
        if (!I.members.is_proper_subset_of(M.members)) continue;
        if (!L.is_cover(i, m)) continue;
        if (!is_primary(R, I)) continue;
        if (radical(R, I) != M) continue;
        out.tag = QClass::Ramified;
        out.m1 = M;
        return out;
    }
    out.tag = QClass::None;
    return out;
}

// Classification with witness data; cross-checked against the definition
// (they must agree by Theorem 2.3 -- disagreement is a falsified theorem).
inline QMaxClass classify_qmax(const Ring& R, const Ideal& I, const IdealLattice& L) {
    QMaxClass c = classify_qmax_by_type(R, I, L);
    DefinitionCheck d = is_qmax_definition(R, I, L);
    require(c.is_qmax() == d.qmax, "classification disagrees with the quasi-maximal definition");
    if (!c.is_qmax()) c.violator = d.violator;
    return c;
}

inline QMaxClass classify_qmax(const Ring& R, const Ideal& I) {
    return classify_qmax(R, I, *lattice_of(R));
}

// submaximal: some maximal ideal covers I (so I is itself not maximal)
inline bool is_submaximal(const Ring& R, const Ideal& I, const IdealLattice& L) {
    require_same_ring(R, I);
    int i = L.index_of_checked(I);
    for (int m : L.maximal_ideals)
        if (L.is_cover(i, m)) return true;
    return false;
}

// every proper ideal strictly containing I is maximal
inline bool strictly_below_only_maximals(const Ring& R, const Ideal& I, const IdealLattice& L) {
    require_same_ring(R, I);
    int i = L.index_of_checked(I);
    bool ok = true;
    L.above[i].for_each([&](int j) {
        if (j == i || j == L.unit_index) return;
        if (!L.is_maximal_index(j)) ok = false;
    });
    return ok;
}

// --- Theorem 2.3 --------------------------------------------------------

struct Theorem23Report {
    bool c1 = false;  // definition
    bool c2 = false;  // every proper ideal of R/I is quasi-maximal in R/I
    bool c3 = false;  // 0 quasi-maximal in R/I
    bool c4 = false;  // 1 <= L_R(R/I) <= 2 and |V_{R/I}(0)| <= 2
    bool c5 = false;  // O(R/I) <= 3, with = 3 iff |Max(R/I)| = 2
    bool c6 = false;  // o(I) <= 3, with = 3 iff |V_R(I) /\ Max(R)| = 2
    bool c7 = false;  // inert, decomposed or ramified
    bool v_in_max = false;  // V_R(I) subset of Max(R)
    int length = 0, o_count = 0, o_quotient = 0;
    QClass type = QClass::None;

    bool all_agree() const {
        return c1 == c2 && c2 == c3 && c3 == c4 && c4 == c5 && c5 == c6 && c6 == c7;
    }
    bool value() const { return c1; }
};

inline Theorem23Report theorem_2_3_report(const RingPtr& Rp, const Ideal& I,
                                          const IdealLattice& L) {
    const Ring& R = *Rp;
    require_same_ring(R, I);
    if (!is_proper(R, I)) throw invalid_parameter("theorem_2_3_report: I must be proper");
    Theorem23Report rep;

    rep.c1 = is_qmax_definition(R, I, L).qmax;

    auto Q = quotient_ring(Rp, I.members);
    const Ring& Qr = *Q.ring;
    auto LQ = lattice_of(Qr);

    rep.c2 = true;
    for (int qi = 0; qi < LQ->proper_count(); ++qi)
        rep.c2 = rep.c2 && is_qmax_definition(Qr, LQ->ideals[qi], *LQ).qmax;

    rep.c3 = is_qmax_definition(Qr, zero_ideal(Qr), *LQ).qmax;

    rep.length = length_of_quotient(Qr, zero_ideal(Qr), *LQ);
    int primes_q = static_cast<int>(LQ->prime_ideals.size());
    rep.c4 = rep.length >= 1 && rep.length <= 2 && primes_q <= 2;

    rep.o_quotient = count_O(Qr, *LQ);
    int max_q = static_cast<int>(LQ->maximal_ideals.size());
    rep.c5 = rep.o_quotient <= 3 && ((rep.o_quotient == 3) == (max_q == 2));

    rep.o_count = count_o(R, I, L);
    int max_over = static_cast<int>(maximals_over(I, L).size());
    rep.c6 = rep.o_count <= 3 && ((rep.o_count == 3) == (max_over == 2));

    QMaxClass cls = classify_qmax_by_type(R, I, L);
    rep.type = cls.tag;
    rep.c7 = cls.is_qmax();

    rep.v_in_max = true;
    int i = L.index_of_checked(I);
    for (int p : L.prime_ideals)
        if (L.leq(i, p) && !L.is_maximal_index(p)) rep.v_in_max = false;

    return rep;
}

// --- SPIR / Kasch -------------------------------------------------------

struct SpirData {
    Elem generator;       // t with M = Rt
    int nilpotency_index; // least p with M^p = 0 (>= 2; fields excluded)
};

// Special principal ideal ring: local, with unique *nonzero* prime M = Rt
// nilpotent. Follows the paper's wording, so fields are not SPIRs here.
inline std::optional<SpirData> is_spir(const Ring& R, const IdealLattice& L) {
    if (L.maximal_ideals.size() != 1) return std::nullopt;
    const Ideal& M = L.ideals[L.maximal_ideals[0]];
    if (M.count() == 1) return std::nullopt;  // field: no nonzero prime
    // principal maximal ideal, least generator
    Elem t = -1;
    for (Elem a = 0; a < R.size() && t < 0; ++a)
        if (M.contains(a) && principal_ideal(R, a) == M) t = a;
    if (t < 0) return std::nullopt;
    // all ideals principal
    for (const Ideal& I : L.ideals) {
        bool principal = false;
        for (Elem a = 0; a < R.size() && !principal; ++a)
            principal = principal_ideal(R, a) == I;
        if (!principal) return std::nullopt;
    }
    Ideal P = M;
    int p = 1;
    while (P.count() > 1) {
        P = ideal_product(R, P, M);
        ++p;
        if (p > R.size()) return std::nullopt;  // not nilpotent (cannot happen when local)
    }
    return SpirData{t, p};
}

// Prop 2.5: I ramified <=> R/I is a SPIR with maximal ideal nilpotent of
// index 2. Both sides computed independently; returns their agreement.
struct Prop25Result {
    bool ramified;
    bool spir_index2;
    bool agree() const { return ramified == spir_index2; }
};

inline Prop25Result prop_2_5_check(const RingPtr& Rp, const Ideal& I, const IdealLattice& L) {
    const Ring& R = *Rp;
    bool left = classify_qmax_by_type(R, I, L).tag == QClass::Ramified;
    auto Q = quotient_ring(Rp, I.members);
    auto sp = is_spir(*Q.ring, *lattice_of(*Q.ring));
    bool right = sp && sp->nilpotency_index == 2;
    return {left, right};
}

// Kasch: every maximal ideal is an annihilator (0 : x).
inline bool is_kasch(const Ring& R, const IdealLattice& L) {
    for (int m : L.maximal_ideals) {
        const Ideal& M = L.ideals[m];
        bool found = false;
        for (Elem x = 0; x < R.size() && !found; ++x) found = annihilator(R, x) == M;
        if (!found) return false;
    }
    return true;
}

// --- whole-ring sweeps ----------------------------------------------------

// classification of every proper ideal, in canonical lattice order
inline std::vector<std::pair<Ideal, QMaxClass>> qmax_all(const Ring& R, const IdealLattice& L) {
    std::vector<std::pair<Ideal, QMaxClass>> out;
    for (int i = 0; i < L.proper_count(); ++i)
        out.emplace_back(L.ideals[i], classify_qmax(R, L.ideals[i], L));
    return out;
}

struct KSandwich {
    Ideal k;           // intersection of all quasi-maximal ideals
    bool sandwich_ok;  // J(R)^2 <= /\ M^2 <= K <= J(R)
};

// Prop 2.11 data: K = /\ QMax(R) with the radical sandwich.
inline KSandwich k_intersection_and_sandwich(const Ring& R, const IdealLattice& L) {
    Bitset k(R.size());
    for (Elem a = 0; a < R.size(); ++a) k.set(a);
    for (int i = 0; i < L.proper_count(); ++i)
        if (classify_qmax_by_type(R, L.ideals[i], L).is_qmax()) k &= L.ideals[i].members;
    Ideal K{R.id(), k};

    Bitset msq(R.size());
    for (Elem a = 0; a < R.size(); ++a) msq.set(a);
    for (int m : L.maximal_ideals) {
        Ideal M2 = ideal_product(R, L.ideals[m], L.ideals[m]);
        msq &= M2.members;
    }
    const Ideal& J = L.jacobson;
    Ideal J2 = ideal_product(R, J, J);
    bool ok = J2.members.is_subset_of(msq) && msq.is_subset_of(K.members) &&
              K.members.is_subset_of(J.members);
    return {K, ok};
}

// Prop 2.9 (finite form): the canonically smallest quasi-maximal ideal
// strictly below a maximal M; empty exactly when R is a field.
inline std::optional<Ideal> find_qmax_below(const Ring& R, const Ideal& M,
                                            const IdealLattice& L) {
    int m = L.index_of_checked(M);
    if (!L.is_maximal_index(m)) throw invalid_parameter("find_qmax_below: M not maximal");
    for (int i = 0; i < L.proper_count(); ++i) {
        if (i == m || !L.leq(i, m)) continue;
        if (classify_qmax_by_type(R, L.ideals[i], L).is_qmax()) return L.ideals[i];
    }
    return std::nullopt;
}

// Cor 2.19 variant: smallest *ramified* ideal strictly below M; empty
// exactly when M^2 = M.
inline std::optional<Ideal> find_ramified_below(const Ring& R, const Ideal& M,
                                                const IdealLattice& L) {
    int m = L.index_of_checked(M);
    if (!L.is_maximal_index(m)) throw invalid_parameter("find_ramified_below: M not maximal");
    for (int i = 0; i < L.proper_count(); ++i) {
        if (i == m || !L.leq(i, m)) continue;
        QMaxClass c = classify_qmax_by_type(R, L.ideals[i], L);
        if (c.tag == QClass::Ramified && c.m1 && c.m1->members == M.members) return L.ideals[i];
    }
    return std::nullopt;
}

// Prop 2.14: QMax of a finite product equals the predicted shapes.
inline bool prop_2_14_product_check(const std::vector<RingPtr>& factors,
                                    const Limits& lim = Limits::global()) {
    if (factors.size() < 2) throw invalid_parameter("prop_2_14: need at least two factors");
    auto P = make_product(factors, lim);
    const Ring& R = *P.ring;
    auto L = lattice_of(R, lim);

    auto product_ideal = [&](const std::vector<const Bitset*>& comp) {
        Bitset b(R.size());
        for (Elem e = 0; e < R.size(); ++e) {
            bool in = true;
            for (std::size_t i = 0; i < factors.size() && in; ++i)
                in = comp[i]->test(P.projections[i].image[e]);
            if (in) b.set(e);
        }
        return Ideal{R.id(), b};
    };

    // predicted shapes
    std::vector<Bitset> predicted;
    std::vector<std::shared_ptr<const IdealLattice>> fl;
    std::vector<Bitset> full;
    for (auto& f : factors) {
        fl.push_back(lattice_of(*f, lim));
        full.push_back(unit_ideal(*f).members);
    }
    const std::size_t k = factors.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            for (int mi : fl[i]->maximal_ideals)
                for (int mj : fl[j]->maximal_ideals) {
                    std::vector<const Bitset*> comp(k);
                    for (std::size_t t = 0; t < k; ++t) comp[t] = &full[t];
                    comp[i] = &fl[i]->ideals[mi].members;
                    comp[j] = &fl[j]->ideals[mj].members;
                    predicted.push_back(product_ideal(comp).members);
                }
    for (std::size_t i = 0; i < k; ++i)
        for (int t = 0; t < fl[i]->proper_count(); ++t) {
            if (!classify_qmax_by_type(*factors[i], fl[i]->ideals[t], *fl[i]).is_qmax()) continue;
            std::vector<const Bitset*> comp(k);
            for (std::size_t s = 0; s < k; ++s) comp[s] = &full[s];
            comp[i] = &fl[i]->ideals[t].members;
            predicted.push_back(product_ideal(comp).members);
        }
    std::sort(predicted.begin(), predicted.end(),
              [](const Bitset& a, const Bitset& b) { return a.lex_before(b); });
    predicted.erase(std::unique(predicted.begin(), predicted.end()), predicted.end());

    // actual, by definition
    std::vector<Bitset> actual;
    for (int i = 0; i < L->proper_count(); ++i)
        if (is_qmax_definition(R, L->ideals[i], *L).qmax) actual.push_back(L->ideals[i].members);
    std::sort(actual.begin(), actual.end(),
              [](const Bitset& a, const Bitset& b) { return a.lex_before(b); });

    return predicted == actual;
}

}  // namespace qmax
