#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmax/absorbing.hpp"
#include "qmax/morphisms.hpp"
#include "qmax/qmax.hpp"

namespace qmax {

// A subring inclusion of finite rings, with the conductor and support
// cached at construction. Finite extensions are integral (every element of
// a finite ring satisfies a monic equation), hence satisfy LO and INC and
// have FCP; the transfer suite treats those as met hypotheses.
struct Extension {
    RingMap incl;   // injective unital R -> S
    Bitset image;   // iota(R) as a subset of S
    Ideal conductor;             // (R:S), an ideal of S contained in iota(R)
    std::vector<Ideal> support;  // MSupp_R(S/R): maximal ideals of R

    const Ring& R() const { return *incl.source; }
    const Ring& S() const { return *incl.target; }
    RingPtr Rp() const { return incl.source; }
    RingPtr Sp() const { return incl.target; }

    bool in_R(Elem s) const { return image.test(s); }
    Elem to_S(Elem r) const { return incl.image[r]; }

    // conductor seen inside R
    Ideal conductor_in_R() const { return contract_along(incl, conductor); }
};

inline Ideal extend_ideal(const Extension& E, const Ideal& I) { return extend_along(E.incl, I); }
inline Ideal contract_ideal(const Extension& E, const Ideal& J) { return contract_along(E.incl, J); }

// I is "shared": iota(I) is itself an ideal of S (the paper's I = IS).
inline bool is_shared_ideal(const Extension& E, const Ideal& I) {
    Bitset img = image_bits(E.incl, I.members);
    return extend_ideal(E, I).members == img;
}

inline Extension make_extension(RingMap f) {
    f.certify();
    if (!f.is_injective()) throw invalid_parameter("extension: map not injective");
    const Ring& S = *f.target;
    Bitset img = f.image_set();

    // conductor: largest subset that is an ideal of S and contained in R
    Bitset cbits(S.size());
    for (Elem x = 0; x < S.size(); ++x) {
        bool ok = true;
        for (Elem s = 0; s < S.size() && ok; ++s) ok = img.test(S.mul(x, s));
        if (ok) cbits.set(x);
    }
    Ideal cond{S.id(), cbits};
    require(is_ideal_set(S, cbits), "conductor is not an ideal of S");
    require(cbits.is_subset_of(img), "conductor not contained in R");

    // support via local factors: M in MSupp(S/R) iff iota(e_M) S != iota(e_M) iota(R)
    Extension E{std::move(f), std::move(img), std::move(cond), {}};
    auto lf = local_factors(E.Rp());
    auto LR = lattice_of(E.R());
    for (int m : LR->maximal_ideals) {
        const Ideal& M = LR->ideals[m];
        Elem e = lf.idempotents[lf.factor_of_maximal(E.R(), M)];
        Elem es = E.incl.image[e];
        Bitset eS(E.S().size()), eR(E.S().size());
        for (Elem s = 0; s < E.S().size(); ++s) eS.set(E.S().mul(es, s));
        E.image.for_each([&](Elem r) { eR.set(E.S().mul(es, r)); });
        if (eS != eR) E.support.push_back(M);
    }
    return E;
}

inline Extension extension_from_subring(const RingPtr& Sp, const Bitset& members,
                                        std::string label = "") {
    auto sub = make_subring(Sp, members, std::move(label));
    return make_extension(std::move(sub.inclusion));
}

// subring_generated: closure of the seeds inside S, as an extension
inline Extension subring_generated(const RingPtr& Sp, const std::vector<Elem>& seeds) {
    Bitset cl = subring_closure(*Sp, seeds);
    return extension_from_subring(Sp, cl);
}

// --- residual data --------------------------------------------------------

struct ResidualPair {
    Ideal prime_S;     // Q in Spec(S)
    Ideal contraction; // Q /\ R
    bool residue_iso;  // R/(Q/\R) -> S/Q bijective
    int residue_degree;  // [S/Q : R/(Q/\R)]
};

struct ResidualData {
    std::vector<ResidualPair> pairs;
    bool i_extension;     // spectral map injective
    bool infra_integral;  // all residual maps isomorphisms
    bool subintegral;     // infra-integral and i-extension
};

namespace detail {

// induced map R/(Q/\R) -> S/Q for a prime (or any ideal) Q of S
inline RingMap residue_map(const Extension& E, const Ideal& Q, const Ideal& QcapR) {
    auto QR = quotient_ring(E.Rp(), QcapR.members);
    auto QS = quotient_ring(E.Sp(), Q.members);
    RingMap f{QR.ring, QS.ring, std::vector<std::uint16_t>(QR.ring->size())};
    for (Elem a = 0; a < E.R().size(); ++a)
        f.image[QR.surjection.image[a]] = QS.surjection.image[E.incl.image[a]];
    f.certify();
    return f;
}

inline int residue_degree(int small, int big) {
    int d = 0;
    long acc = 1;
    while (acc < big) {
        acc *= small;
        ++d;
    }
    require(acc == big, "residue field size is not a power of the base residue size");
    return d;
}

}  // namespace detail

inline ResidualData residual_data(const Extension& E) {
    auto LS = lattice_of(E.S());
    ResidualData out{{}, true, true, true};
    std::vector<Bitset> contractions;
    for (int p : LS->prime_ideals) {
        const Ideal& Q = LS->ideals[p];
        Ideal P = contract_ideal(E, Q);
        RingMap rm = detail::residue_map(E, Q, P);
        require(rm.is_injective(), "residual map between fields must be injective");
        bool iso = rm.is_surjective();
        int deg = detail::residue_degree(rm.source->size(), rm.target->size());
        for (auto& c : contractions)
            if (c == P.members) out.i_extension = false;
        contractions.push_back(P.members);
        out.infra_integral = out.infra_integral && iso;
        out.pairs.push_back({Q, P, iso, deg});
    }
    out.subintegral = out.infra_integral && out.i_extension;
    return out;
}

inline bool is_i_extension(const Extension& E) { return residual_data(E).i_extension; }
inline bool is_infra_integral(const Extension& E) { return residual_data(E).infra_integral; }
inline bool is_subintegral(const Extension& E) { return residual_data(E).subintegral; }

// --- intermediate rings ----------------------------------------------------

struct IntermediateLattice {
    std::vector<Bitset> subrings;  // subsets of S containing iota(R), canonical order
    int length;                    // l[R,S]: longest chain length
    std::vector<Bitset> witness_chain;  // one maximal chain realizing it
};

inline IntermediateLattice intermediate_rings(const Extension& E,
                                              const Limits& lim = Limits::global()) {
    const Ring& S = E.S();
    if (S.size() > lim.max_intermediate_ring_size)
        throw resource_limit("intermediate_rings: |S| exceeds enumeration cap");
    std::vector<Bitset> found;
    std::unordered_map<Bitset, int, BitsetHash> seen;
    std::vector<std::size_t> work;
    auto push = [&](Bitset b) {
        if (seen.emplace(b, 0).second) {
            found.push_back(std::move(b));
            work.push_back(found.size() - 1);
        }
    };
    push(E.image);
    for (std::size_t k = 0; k < work.size(); ++k) {
        Bitset cur = found[work[k]];
        for (Elem q = 0; q < S.size(); ++q) {
            if (cur.test(q)) continue;
            std::vector<Elem> seeds = cur.members();
            seeds.push_back(q);
            push(subring_closure(S, seeds));
        }
    }
    std::sort(found.begin(), found.end(), [](const Bitset& a, const Bitset& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return a.lex_before(b);
    });

    // longest chain by DP over the containment DAG
    const int K = static_cast<int>(found.size());
    std::vector<int> best(K, 0), pred(K, -1);
    for (int j = 0; j < K; ++j)
        for (int i = 0; i < j; ++i)
            if (found[i].is_proper_subset_of(found[j]) && best[i] + 1 > best[j]) {
                best[j] = best[i] + 1;
                pred[j] = i;
            }
    int top = K - 1;  // S itself (largest)
    IntermediateLattice out{found, best[top], {}};
    for (int cur = top; cur >= 0; cur = pred[cur]) {
        out.witness_chain.push_back(found[cur]);
        if (pred[cur] < 0) break;
    }
    std::reverse(out.witness_chain.begin(), out.witness_chain.end());
    return out;
}

// minimality test without full enumeration: adjoining any single outside
// element must already generate S
inline bool is_minimal_extension(const Extension& E) {
    const Ring& S = E.S();
    if (E.image.count() == S.size()) return false;
    for (Elem q = 0; q < S.size(); ++q) {
        if (E.image.test(q)) continue;
        std::vector<Elem> seeds = E.image.members();
        seeds.push_back(q);
        if (subring_closure(S, seeds).count() != S.size()) return false;
    }
    return true;
}

// --- minimal extension typing ----------------------------------------------

enum class MinimalTag { Inert, Decomposed, Ramified, NotMinimal };

inline const char* minimal_tag_name(MinimalTag t) {
    switch (t) {
        case MinimalTag::Inert: return "inert";
        case MinimalTag::Decomposed: return "decomposed";
        case MinimalTag::Ramified: return "ramified";
        default: return "not-minimal";
    }
}

inline QClass to_qclass(MinimalTag t) {
    switch (t) {
        case MinimalTag::Inert: return QClass::Inert;
        case MinimalTag::Decomposed: return QClass::Decomposed;
        case MinimalTag::Ramified: return QClass::Ramified;
        default: return QClass::None;
    }
}

struct MinimalType {
    MinimalTag tag = MinimalTag::NotMinimal;
    std::optional<Ideal> conductor_S;  // M = (R:S) as an ideal of S
    std::optional<Ideal> m1, m2;       // decomposed: the two maximals of S over M
    std::optional<Ideal> m_ramified;   // ramified: M' with M'^2 <= M < M'
    std::optional<Elem> q;             // generator with S = R[q] (decomposed/ramified)
};

// Theorem minimal+ classification. Minimality is decided by enumeration;
// the type and the generator characterizations are then verified against
// the conductor's behavior in S.
inline MinimalType classify_minimal(const Extension& E, const Limits& lim = Limits::global()) {
    const Ring& R = E.R();
    const Ring& S = E.S();
    if (E.image.count() == S.size()) throw invalid_parameter("classify_minimal: R = S");
    MinimalType out;
    if (!is_minimal_extension(E)) return out;

    const Ideal& M = E.conductor;
    out.conductor_S = M;
    Ideal MR = E.conductor_in_R();
    auto LR = lattice_of(R, lim);
    auto LS = lattice_of(S, lim);
    require(is_maximal(R, MR, *LR), "minimal extension: (R:S) not maximal in R");
    require(E.support.size() == 1 && E.support[0].members == MR.members,
            "minimal extension: Supp(S/R) != {(R:S)}");

    auto find_generator = [&](bool ramified_case) -> std::optional<Elem> {
        for (Elem g = 0; g < S.size(); ++g) {
            if (E.image.test(g)) continue;
            Elem g2 = S.mul(g, g);
            Elem test = ramified_case ? g2 : S.sub(g2, g);
            if (!M.contains(test)) continue;
            bool mg = true;
            M.members.for_each([&](Elem m) {
                if (!M.contains(S.mul(m, g))) mg = false;
            });
            if (!mg) continue;
            std::vector<Elem> seeds = E.image.members();
            seeds.push_back(g);
            if (subring_closure(S, seeds).count() == S.size()) return g;
        }
        return std::nullopt;
    };

    int mi = LS->index_of_checked(M);
    if (LS->is_maximal_index(mi)) {
        // inert: residue extension is a minimal field extension
        RingMap rm = detail::residue_map(E, M, MR);
        int deg = detail::residue_degree(rm.source->size(), rm.target->size());
        require(deg > 1 && detail::is_prime_int(deg), "inert case: residue degree not prime");
        out.tag = MinimalTag::Inert;
        return out;
    }
    // decomposed: M = M1 /\ M2 with both residue maps isomorphisms
    for (std::size_t a = 0; a < LS->maximal_ideals.size(); ++a)
        for (std::size_t b = a + 1; b < LS->maximal_ideals.size(); ++b) {
            const Ideal& M1 = LS->ideals[LS->maximal_ideals[a]];
            const Ideal& M2 = LS->ideals[LS->maximal_ideals[b]];
            if ((M1.members & M2.members) != M.members) continue;
            RingMap r1 = detail::residue_map(E, M1, MR);
            RingMap r2 = detail::residue_map(E, M2, MR);
            require(r1.is_surjective() && r2.is_surjective(),
                    "decomposed case: residue maps are not isomorphisms");
            out.tag = MinimalTag::Decomposed;
            out.m1 = M1;
            out.m2 = M2;
            out.q = find_generator(false);
            require(out.q.has_value(), "decomposed case: no generator q with q^2-q in M");
            return out;
        }
    // ramified: M' with M'^2 <= M < M', [S/M : R/M] = 2, R/M ~ S/M'
    for (int m : LS->maximal_ideals) {
        const Ideal& Mp = LS->ideals[m];
        if (!M.members.is_proper_subset_of(Mp.members)) continue;
        Ideal Mp2 = ideal_product(S, Mp, Mp);
        if (!Mp2.members.is_subset_of(M.members)) continue;
        RingMap rp = detail::residue_map(E, Mp, MR);
        require(rp.is_surjective(), "ramified case: R/M -> S/M' not an isomorphism");
        auto QS = quotient_ring(E.Sp(), M.members);
        int smq = QS.ring->size();
        int rmq = quotient_ring(E.Rp(), MR.members).ring->size();
        require(smq == rmq * rmq, "ramified case: [S/M : R/M] != 2");
        require(QS.ring->characteristic() ==
                    quotient_ring(E.Sp(), Mp.members).ring->characteristic(),
                "ramified case: c(S/M') != c(S/M)");
        out.tag = MinimalTag::Ramified;
        out.m_ramified = Mp;
        out.q = find_generator(true);
        require(out.q.has_value(), "ramified case: no generator q with q^2 in M");
        return out;
    }
    throw internal_inconsistency("minimal extension matches none of the three types");
}

// Thm 4.1: the conductor of a minimal extension is quasi-maximal in S, of
// the same type as the extension.
inline bool thm_4_1_check(const Extension& E, const MinimalType& mt) {
    if (mt.tag == MinimalTag::NotMinimal)
        throw precondition_violation("thm_4_1_check: extension not minimal");
    QMaxClass c = classify_qmax(E.S(), E.conductor, *lattice_of(E.S()));
    return c.tag == to_qclass(mt.tag);
}

// --- seminormalization / t-closure -----------------------------------------

namespace detail {

inline Extension sub_extension(const Extension& E, const Bitset& Tbits) {
    // R -> T where T is an intermediate subring of S
    auto target = make_subring(E.Sp(), Tbits);
    std::vector<int> pos(E.S().size(), -1);
    auto mem = Tbits.members();
    for (int i = 0; i < static_cast<int>(mem.size()); ++i) pos[mem[i]] = i;
    RingMap f{E.Rp(), target.ring, std::vector<std::uint16_t>(E.R().size())};
    for (Elem a = 0; a < E.R().size(); ++a) {
        int p = pos[E.incl.image[a]];
        require(p >= 0, "intermediate ring does not contain R");
        f.image[a] = static_cast<std::uint16_t>(p);
    }
    f.certify();
    return make_extension(std::move(f));
}

}  // namespace detail

// greatest intermediate T with R <= T subintegral (resp. infra-integral),
// returned as a subset of S; existence and uniqueness verified on the
// enumerated lattice
inline Bitset closure_bits_in_S(const Extension& E, bool infra,
                                const Limits& lim = Limits::global()) {
    auto inter = intermediate_rings(E, lim);
    std::vector<Bitset> good;
    for (const Bitset& T : inter.subrings) {
        Extension RT = detail::sub_extension(E, T);
        ResidualData rd = residual_data(RT);
        if (infra ? rd.infra_integral : rd.subintegral) good.push_back(T);
    }
    require(!good.empty(), "closure: R <= R itself must qualify");
    // unique maximal element
    std::vector<Bitset> maximal;
    for (const Bitset& a : good) {
        bool top = true;
        for (const Bitset& b : good)
            if (a != b && a.is_proper_subset_of(b)) top = false;
        if (top) maximal.push_back(a);
    }
    require(maximal.size() == 1, "closure: maximal qualifying intermediate not unique");
    return maximal[0];
}

inline Extension seminormalization(const Extension& E, const Limits& lim = Limits::global()) {
    return detail::sub_extension(E, closure_bits_in_S(E, false, lim));
}
inline Extension t_closure(const Extension& E, const Limits& lim = Limits::global()) {
    return detail::sub_extension(E, closure_bits_in_S(E, true, lim));
}

// --- R-module lengths inside S ---------------------------------------------

// Length of upper/lower as an R-module (subsets of S closed under + and
// under multiplication by iota(R)). Composition series built by repeatedly
// adjoining an element with maximal annihilator; Jordan-Hoelder guarantees
// the count is choice-independent (cross-checked with a second chain).
inline int module_length(const Extension& E, const Bitset& lower, const Bitset& upper,
                         const IdealLattice& LR) {
    const Ring& R = E.R();
    const Ring& S = E.S();
    require(lower.is_subset_of(upper), "module_length: lower not inside upper");
    auto run = [&](bool take_least) {
        Bitset X = lower;
        int steps = 0;
        while (X != upper) {
            int chosen = -1;
            for (Elem x = 0; x < S.size(); ++x) {
                if (!upper.test(x) || X.test(x)) continue;
                Bitset ann(R.size());
                for (Elem a = 0; a < R.size(); ++a)
                    if (X.test(S.mul(E.incl.image[a], x))) ann.set(a);
                Ideal A{R.id(), ann};
                int ai = LR.index_of(A);
                if (ai >= 0 && LR.is_maximal_index(ai)) {
                    chosen = x;
                    if (take_least) break;
                }
            }
            require(chosen >= 0, "module_length: no simple submodule found");
            Bitset X2 = X;
            for (Elem a = 0; a < R.size(); ++a) {
                Elem y = S.mul(E.incl.image[a], chosen);
                X.for_each([&](Elem xi) { X2.set(S.add(y, xi)); });
            }
            X = X2;
            ++steps;
            require(steps <= S.size(), "module_length: runaway chain");
        }
        return steps;
    };
    int a = run(true), b = run(false);
    require(a == b, "module_length: two composition series disagree");
    return a;
}

// --- Theorem 4.62 / Lemma 4.61 ----------------------------------------------

struct Thm462Report {
    bool applicable_d = true, applicable_r = true;
    bool part1_left = false, part1_right = false;
    bool part2_left = false, part2_right = false;
    bool lemma_4_61_checked = false, lemma_4_61_ok = true;
    bool ok() const {
        return part1_left == part1_right && part2_left == part2_right && applicable_d &&
               applicable_r && (!lemma_4_61_checked || lemma_4_61_ok);
    }
};

inline Thm462Report thm_4_62_check(const Extension& E, const Limits& lim = Limits::global()) {
    const Ring& R = E.R();
    const Ring& S = E.S();
    Thm462Report rep;
    auto LR = lattice_of(R, lim);
    auto LS = lattice_of(S, lim);
    const Ideal& I = E.conductor;   // ideal of S
    Ideal IR = E.conductor_in_R();  // same set inside R
    if (!is_proper(S, I) || I.members == E.image)
        throw precondition_violation("thm_4_62_check: conductor must be proper");

    QMaxClass condS = classify_qmax_by_type(S, I, *LS);
    Bitset Tbits = closure_bits_in_S(E, true, lim);
    bool R_eq_T = Tbits == E.image;

    // (1) conductor decomposed in S
    rep.part1_left = condS.tag == QClass::Decomposed;
    int vR = static_cast<int>(maximals_over(IR, *LR).size());
    bool case_a = R_eq_T && vR == 2;
    bool case_b = false;
    if (!R_eq_T) {
        // R < T: is R < T minimal decomposed?
        Extension RT = detail::sub_extension(E, Tbits);
        MinimalType mt = classify_minimal(RT, lim);
        case_b = mt.tag == MinimalTag::Decomposed && vR == 1;
    }
    rep.part1_right = case_a || case_b;
    if (rep.part1_left) {
        QMaxClass condR = classify_qmax_by_type(R, IR, *LR);
        if (case_a) rep.applicable_d = condR.tag == QClass::Decomposed;
        if (case_b) rep.applicable_d = condR.tag == QClass::Inert;
    }

    // (2) conductor ramified in S
    rep.part2_left = condS.tag == QClass::Ramified;
    ResidualData rd = residual_data(E);
    bool right = rd.i_extension && E.support.size() == 1;
    if (right) {
        const Ideal& M = E.support[0];
        Ideal MS = extend_ideal(E, M);
        Ideal N = radical(S, MS);
        int ni = LS->index_of_checked(N);
        right = LS->is_maximal_index(ni);
        if (right) {
            RingMap rm = detail::residue_map(E, N, contract_ideal(E, N));
            int deg = detail::residue_degree(rm.source->size(), rm.target->size());
            int len = module_length(E, I.members, N.members, *LR);
            right = deg == len;
        }
    }
    rep.part2_right = right;

    // Lemma 4.61 on i-extensions with local R
    if (rd.i_extension && LR->maximal_ideals.size() == 1) {
        rep.lemma_4_61_checked = true;
        const Ideal& M = LR->ideals[LR->maximal_ideals[0]];
        require(LS->maximal_ideals.size() == 1, "lemma 4.61: S must be local over local R");
        const Ideal& N = LS->ideals[LS->maximal_ideals[0]];
        RingMap rm = detail::residue_map(E, N, contract_ideal(E, N));
        int deg = detail::residue_degree(rm.source->size(), rm.target->size());
        int lhs = module_length(E, I.members, image_bits(E.incl, M.members), *LR);
        int LS_len = length_of_quotient(S, I, *LS) - length_of_quotient(S, N, *LS);
        Extension RT = detail::sub_extension(E, Tbits);
        auto inter = intermediate_rings(RT, lim);
        rep.lemma_4_61_ok = lhs == LS_len * deg - inter.length;
    }
    return rep;
}

// --- Prop 4.13: lying over a ramified shared ideal ---------------------------

inline std::vector<Ideal> find_qmax_lying_over(const Extension& E, const Ideal& I,
                                               const Limits& lim = Limits::global()) {
    auto LS = lattice_of(E.S(), lim);
    std::vector<Ideal> out;
    for (int j = 0; j < LS->proper_count(); ++j) {
        const Ideal& J = LS->ideals[j];
        if (!classify_qmax_by_type(E.S(), J, *LS).is_qmax()) continue;
        if (contract_ideal(E, J) == I) out.push_back(J);
    }
    return out;
}

// R(+)Q for the cyclic module Q = R/M (needed for the Prop 4.13 dichotomy,
// where the module is a residue field, not an ideal).
inline RingPtr make_idealization_mod_quotient(const RingPtr& Rp, const Ideal& M) {
    const Ring& R = *Rp;
    auto Q = quotient_ring(Rp, M.members);
    const Ring& Qr = *Q.ring;
    const int nq = Qr.size();
    long n = static_cast<long>(R.size()) * nq;
    detail::check_size_cap(n, Limits::global());
    const int N = static_cast<int>(n);
    auto join = [&](Elem r, Elem e) { return r * nq + e; };
    std::vector<std::uint16_t> add(static_cast<std::size_t>(N) * N), mul(static_cast<std::size_t>(N) * N);
    for (Elem r1 = 0; r1 < R.size(); ++r1)
        for (Elem e1 = 0; e1 < nq; ++e1)
            for (Elem r2 = 0; r2 < R.size(); ++r2)
                for (Elem e2 = 0; e2 < nq; ++e2) {
                    int a = join(r1, e1), b = join(r2, e2);
                    add[static_cast<std::size_t>(a) * N + b] =
                        static_cast<std::uint16_t>(join(R.add(r1, r2), Qr.add(e1, e2)));
                    Elem me = Qr.add(Qr.mul(Q.surjection.image[r1], e2),
                                     Qr.mul(Q.surjection.image[r2], e1));
                    mul[static_cast<std::size_t>(a) * N + b] =
                        static_cast<std::uint16_t>(join(R.mul(r1, r2), me));
                }
    std::vector<std::string> names(N);
    for (Elem r = 0; r < R.size(); ++r)
        for (Elem e = 0; e < nq; ++e) names[join(r, e)] = "(" + R.name(r) + "|" + Qr.name(e) + ")";
    return std::make_shared<Ring>(std::move(add), std::move(mul), join(R.zero(), Qr.zero()),
                                  join(R.one(), Qr.zero()), R.label() + "(+)(R/M)",
                                  std::move(names));
}

// R'[X]/(tX, X^2 - tu): the second family in Dobbs' classification of
// minimal ramified extensions of a SPIR R' with M'^2 = 0, M' = R't.
inline RingPtr make_spir_type2(const RingPtr& Rp, Elem t, Elem u) {
    const Ring& R = *Rp;
    Ideal M = principal_ideal(R, t);
    auto Q = quotient_ring(Rp, M.members);  // R'/M', the coefficients of X
    const Ring& Qr = *Q.ring;
    const int nq = Qr.size();
    const int N = R.size() * nq;
    detail::check_size_cap(N, Limits::global());
    Elem tu = R.mul(t, u);
    auto join = [&](Elem r, Elem e) { return r * nq + e; };
    // lift of a coefficient class back into R (first preimage)
    std::vector<Elem> lift(nq, -1);
    for (Elem r = 0; r < R.size(); ++r) {
        Elem c = Q.surjection.image[r];
        if (lift[c] < 0) lift[c] = r;
    }
    std::vector<std::uint16_t> add(static_cast<std::size_t>(N) * N), mul(static_cast<std::size_t>(N) * N);
    for (Elem r1 = 0; r1 < R.size(); ++r1)
        for (Elem e1 = 0; e1 < nq; ++e1)
            for (Elem r2 = 0; r2 < R.size(); ++r2)
                for (Elem e2 = 0; e2 < nq; ++e2) {
                    int a = join(r1, e1), b = join(r2, e2);
                    add[static_cast<std::size_t>(a) * N + b] =
                        static_cast<std::uint16_t>(join(R.add(r1, r2), Qr.add(e1, e2)));
                    // (r1 + b1 y)(r2 + b2 y) = r1 r2 + b1 b2 t u + (r1 b2 + r2 b1) y
                    Elem cross = R.mul(R.mul(lift[e1], lift[e2]), tu);
                    Elem rpart = R.add(R.mul(r1, r2), cross);
                    Elem ypart = Qr.add(Qr.mul(Q.surjection.image[r1], e2),
                                        Qr.mul(Q.surjection.image[r2], e1));
                    mul[static_cast<std::size_t>(a) * N + b] =
                        static_cast<std::uint16_t>(join(rpart, ypart));
                }
    std::vector<std::string> names(N);
    for (Elem r = 0; r < R.size(); ++r)
        for (Elem e = 0; e < nq; ++e) names[join(r, e)] = "(" + R.name(r) + "|" + Qr.name(e) + "y)";
    return std::make_shared<Ring>(std::move(add), std::move(mul), join(R.zero(), Qr.zero()),
                                  join(R.one(), Qr.zero()),
                                  R.label() + "[X]/(tX,X^2-tu), u=" + R.name(u), std::move(names));
}

struct RamifiedQuotientType {
    bool idealization_type;  // true: S/I ~ R'(+)(R'/M');  false: type (**)
    std::string detail;
};

// Independent isomorphism classification of S/I for a minimal ramified
// R < S with ramified shared I (Dobbs' dichotomy as used by Prop 4.13).
inline RamifiedQuotientType classify_ramified_quotient(const Extension& E, const Ideal& I) {
    Bitset img = image_bits(E.incl, I.members);
    auto Sq = quotient_ring(E.Sp(), img);       // S' = S/I
    auto Rq = quotient_ring(E.Rp(), I.members); // R' = R/I
    auto LRq = lattice_of(*Rq.ring);
    auto sp = is_spir(*Rq.ring, *LRq);
    require(sp.has_value() && sp->nilpotency_index == 2,
            "classify_ramified_quotient: R/I is not a SPIR of index 2");
    Ideal Mq = principal_ideal(*Rq.ring, sp->generator);

    RingPtr star = make_idealization_mod_quotient(Rq.ring, Mq);
    if (are_isomorphic(Sq.ring, star)) return {true, "S/I ~ R'(+)(R'/M')"};
    for (Elem u = 0; u < Rq.ring->size(); ++u) {
        if (!Rq.ring->is_unit(u)) continue;
        RingPtr t2 = make_spir_type2(Rq.ring, sp->generator, u);
        if (are_isomorphic(Sq.ring, t2))
            return {false, "S/I ~ R'[X]/(tX,X^2-tu), u=" + Rq.ring->name(u)};
    }
    throw internal_inconsistency("S/I matches neither family of Dobbs' classification");
}

// --- Theorem 4.15: building R from (S, I) ------------------------------------

struct BuildResult {
    std::optional<Extension> ext;
    std::string failed_condition;  // empty on success
};

inline BuildResult build_minimal_from_qmax(const RingPtr& Sp, const Ideal& I,
                                           const Limits& lim = Limits::global()) {
    const Ring& S = *Sp;
    require_same_ring(S, I);
    auto LS = lattice_of(S, lim);
    QMaxClass cls = classify_qmax(S, I, *LS);
    if (!cls.is_qmax()) throw invalid_parameter("build_minimal_from_qmax: I not quasi-maximal");

    auto finish = [&](Bitset bits, MinimalTag want) -> BuildResult {
        Extension E = extension_from_subring(Sp, bits);
        require(E.conductor == I, "built subring has the wrong conductor");
        MinimalType mt = classify_minimal(E, lim);
        require(mt.tag == want, "built extension has the wrong minimal type");
        return {std::move(E), ""};
    };

    if (cls.tag == QClass::Inert) {
        auto Q = quotient_ring(Sp, I.members);
        const Ring& F = *Q.ring;
        require(F.is_field(), "inert: S/I must be a field");
        long p = F.characteristic();
        int k = detail::residue_degree(static_cast<int>(p), F.size());
        if (k == 1) return {std::nullopt, "no maximal subfield"};
        int spf = 2;
        while (k % spf != 0) ++spf;
        long qd = 1;
        for (int i = 0; i < k / spf; ++i) qd *= p;
        // maximal subfield = fixed points of x -> x^(p^(k/spf))
        Bitset kbits(F.size());
        for (Elem x = 0; x < F.size(); ++x)
            if (F.pow(x, qd) == x) kbits.set(x);
        require(kbits.count() == static_cast<int>(qd), "maximal subfield has the wrong size");
        return finish(Q.surjection.preimage(kbits), MinimalTag::Inert);
    }

    if (cls.tag == QClass::Decomposed) {
        const Ideal& M1 = *cls.m1;
        const Ideal& M2 = *cls.m2;
        auto F1 = quotient_ring(Sp, M1.members);
        auto F2 = quotient_ring(Sp, M2.members);
        if (F1.ring->size() != F2.ring->size()) return {std::nullopt, "residue-field mismatch"};
        auto iso = find_isomorphism(F1.ring, F2.ring);
        require(iso.has_value(), "finite fields of equal order must be isomorphic");
        Bitset bits(S.size());
        for (Elem x = 0; x < S.size(); ++x)
            if (iso->image[F1.surjection.image[x]] == F2.surjection.image[x]) bits.set(x);
        return finish(bits, MinimalTag::Decomposed);
    }

    // ramified
    const Ideal& M = *cls.m1;
    auto QI = quotient_ring(Sp, I.members);
    auto QM = quotient_ring(Sp, M.members);
    if (QI.ring->characteristic() != QM.ring->characteristic())
        return {std::nullopt, "characteristic mismatch"};
    const Ring& Q = *QI.ring;
    long q = QM.ring->size();  // |S/M|
    // coefficient field: fixed points of x -> x^q; re-verified as a subfield
    Bitset kbits(Q.size());
    for (Elem x = 0; x < Q.size(); ++x)
        if (Q.pow(x, q) == x) kbits.set(x);
    require(kbits.count() == static_cast<int>(q), "coefficient field has the wrong size");
    require(kbits.test(Q.zero()) && kbits.test(Q.one()), "coefficient field misses 0 or 1");
    kbits.for_each([&](Elem x) {
        kbits.for_each([&](Elem y) {
            require(kbits.test(Q.add(x, y)) && kbits.test(Q.mul(x, y)),
                    "coefficient field not closed under the operations");
        });
    });
    return finish(QI.surjection.preimage(kbits), MinimalTag::Ramified);
}

// --- Prop 4.21: idealization-built minimal ramified extensions ----------------

inline Extension idealization_minimal(const RingPtr& Rp, const Ideal& I, const Ideal& J,
                                      const Limits& lim = Limits::global()) {
    const Ring& R = *Rp;
    auto LR = lattice_of(R, lim);
    if (!covers(R, I, J, *LR))
        throw precondition_violation("idealization_minimal: requires I covered by J");
    auto A = make_idealization(Rp, I.members, lim);  // R(+)I
    auto B = make_idealization(Rp, J.members, lim);  // R(+)J
    // embed R(+)I into R(+)J
    std::vector<int> posJ(R.size(), -1);
    {
        auto jm = J.members.members();
        for (int i = 0; i < static_cast<int>(jm.size()); ++i) posJ[jm[i]] = i;
    }
    auto im = I.members.members();
    const int ni = static_cast<int>(im.size());
    const int nj = J.members.count();
    RingMap f{A.ring, B.ring, std::vector<std::uint16_t>(A.ring->size())};
    for (Elem r = 0; r < R.size(); ++r)
        for (int ii = 0; ii < ni; ++ii)
            f.image[r * ni + ii] = static_cast<std::uint16_t>(r * nj + posJ[im[ii]]);
    f.certify();
    Extension E = make_extension(std::move(f));

    MinimalType mt = classify_minimal(E, lim);
    require(mt.tag == MinimalTag::Ramified, "idealization extension is not minimal ramified");
    // conductor = N(+)I with N = (I:J), maximal in R
    Ideal N = colon(R, I, J);
    require(is_maximal(R, N, *LR), "(I:J) is not maximal");
    Bitset want(B.ring->size());
    N.members.for_each([&](Elem r) {
        for (auto i : im) want.set(r * nj + posJ[i]);
    });
    require(E.conductor.members == want, "conductor of R(+)I < R(+)J is not (I:J)(+)I");
    return E;
}

}  // namespace qmax
