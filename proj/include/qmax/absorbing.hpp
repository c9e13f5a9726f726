#pragma once

#include <array>
#include <optional>

#include "qmax/morphisms.hpp"
#include "qmax/qmax.hpp"

namespace qmax {

struct TwoAbsorbing {
    bool ok = false;
    std::optional<std::array<Elem, 3>> triple;  // lexicographically least violation
};

// abc in I forces ab, bc or ac into I. Exhaustive, symmetry-reduced to
// a <= b <= c; the scan order makes the reported violation the
// lexicographically least sorted triple.
inline TwoAbsorbing is_two_absorbing(const Ring& R, const Ideal& I) {
    require_same_ring(R, I);
    if (!is_proper(R, I)) throw invalid_parameter("is_two_absorbing: I must be proper");
    const int n = R.size();
    for (Elem a = 0; a < n; ++a)
        for (Elem b = a; b < n; ++b) {
            Elem ab = R.mul(a, b);
            if (I.contains(ab)) continue;  // condition holds for every c
            for (Elem c = b; c < n; ++c) {
                if (!I.contains(R.mul(ab, c))) continue;
                if (I.contains(R.mul(b, c)) || I.contains(R.mul(a, c))) continue;
                return {false, std::array<Elem, 3>{a, b, c}};
            }
        }
    return {true, std::nullopt};
}

struct AbsorbStructure {
    bool case_a = false;     // (a): sqrt I prime with P^2 <= I
    Ideal p1;                // case (a): P; case (b): P1
    std::optional<Ideal> p2; // case (b): P2
};

// Badawi's structure dichotomy for a 2-absorbing ideal: the minimal primes
// over I number 1 or 2; case (a) P = sqrt I with P^2 <= I, case (b)
// sqrt I = P1 /\ P2 with P1 P2 <= I. More than two minimal primes is an
// internal inconsistency (the theorem would be falsified).
inline AbsorbStructure badawi_structure(const Ring& R, const Ideal& I, const IdealLattice& L) {
    require_same_ring(R, I);
    if (!is_two_absorbing(R, I).ok)
        throw precondition_violation("badawi_structure: I is not 2-absorbing");
    int i = L.index_of_checked(I);
    std::vector<int> over;
    for (int p : L.prime_ideals)
        if (L.leq(i, p)) over.push_back(p);
    std::vector<int> minimal;
    for (int p : over) {
        bool min = true;
        for (int q : over)
            if (q != p && L.leq(q, p)) min = false;
        if (min) minimal.push_back(p);
    }
    Ideal rad = radical(R, I);
    if (minimal.size() == 1) {
        const Ideal& P = L.ideals[minimal[0]];
        require(rad == P, "badawi case (a): sqrt I is not the minimal prime");
        require(ideal_product(R, P, P).members.is_subset_of(I.members),
                "badawi case (a): P^2 not inside I");
        return {true, P, std::nullopt};
    }
    if (minimal.size() == 2) {
        const Ideal& P1 = L.ideals[minimal[0]];
        const Ideal& P2 = L.ideals[minimal[1]];
        require((P1.members & P2.members) == rad.members,
                "badawi case (b): sqrt I is not P1 /\\ P2");
        require(ideal_product(R, P1, P2).members.is_subset_of(I.members),
                "badawi case (b): P1 P2 not inside I");
        require(ideal_product(R, rad, rad).members.is_subset_of(I.members),
                "badawi case (b): (sqrt I)^2 not inside I");
        return {false, P1, P2};
    }
    throw internal_inconsistency("2-absorbing ideal with more than two minimal primes");
}

// Thm 5.2: quasi-maximal <=> 2-absorbing with V(I) in Max(R) and M/I
// principal in R/I for each maximal M over I. Both sides independent.
struct Theorem52Result {
    bool left;   // quasi-maximal (by type classification)
    bool right;  // 2-absorbing + V(I) in Max + principal M/I
    bool agree() const { return left == right; }
};

inline Theorem52Result theorem_5_2_check(const RingPtr& Rp, const Ideal& I,
                                         const IdealLattice& L) {
    const Ring& R = *Rp;
    bool left = classify_qmax_by_type(R, I, L).is_qmax();

    bool right = is_two_absorbing(R, I).ok;
    if (right) {
        int i = L.index_of_checked(I);
        for (int p : L.prime_ideals)
            if (L.leq(i, p) && !L.is_maximal_index(p)) right = false;
    }
    if (right) {
        auto Q = quotient_ring(Rp, I.members);
        const Ring& Qr = *Q.ring;
        auto LQ = lattice_of(Qr);
        for (int m : LQ->maximal_ideals) {
            const Ideal& N = LQ->ideals[m];
            bool principal = false;
            for (Elem t = 0; t < Qr.size() && !principal; ++t)
                principal = principal_ideal(Qr, t) == N;
            if (!principal) right = false;
        }
    }
    return {left, right};
}

// Cor 5.4 three-way equivalence for a maximal M with M^2 != M.
struct Cor54Result {
    bool m2_qmax;
    bool principal_quotient;  // M/M^2 principal in R/M^2
    bool length_one;          // L_R(M/M^2) = 1
    bool agree() const { return m2_qmax == principal_quotient && principal_quotient == length_one; }
};

inline Cor54Result cor_5_4_check(const RingPtr& Rp, const Ideal& M, const IdealLattice& L) {
    const Ring& R = *Rp;
    if (!is_maximal(R, M, L)) throw invalid_parameter("cor_5_4_check: M not maximal");
    Ideal M2 = ideal_product(R, M, M);
    if (M2 == M) throw precondition_violation("cor_5_4_check: requires M^2 != M");

    bool a = is_qmax_definition(R, M2, L).qmax;

    auto Q = quotient_ring(Rp, M2.members);
    const Ring& Qr = *Q.ring;
    Ideal Mq{Qr.id(), image_bits(Q.surjection, M.members)};
    bool b = false;
    for (Elem t = 0; t < Qr.size() && !b; ++t) b = principal_ideal(Qr, t) == Mq;

    bool c = covers(R, M2, M, L);
    return {a, b, c};
}

// --- Lambda(I) machinery (Appendix) --------------------------------------

struct LambdaSet {
    std::uint64_t ring_id = 0;
    Bitset members;  // { x : (I : x) = I }, the saturated multiplicative set
};

inline LambdaSet lambda_set(const Ring& R, const Ideal& I) {
    require_same_ring(R, I);
    if (!is_proper(R, I)) throw invalid_parameter("lambda_set: I must be proper");
    Bitset lam(R.size());
    for (Elem x = 0; x < R.size(); ++x)
        if (colon_by_element(R, I, x) == I) lam.set(x);
    return {R.id(), std::move(lam)};
}

// The invariants carried by Lambda(I): contains 1, multiplicative,
// disjoint from I, saturated, and equal to the set of elements whose image
// in R/I is regular.
inline bool lambda_invariants_hold(const RingPtr& Rp, const Ideal& I, const LambdaSet& lam) {
    const Ring& R = *Rp;
    if (!lam.members.test(R.one())) return false;
    if (lam.members.intersects(I.members)) return false;
    auto mem = lam.members.members();
    for (Elem x : mem)
        for (Elem y : mem)
            if (!lam.members.test(R.mul(x, y))) return false;
    for (Elem x = 0; x < R.size(); ++x)
        for (Elem y = 0; y < R.size(); ++y)
            if (lam.members.test(R.mul(x, y)) && !(lam.members.test(x) && lam.members.test(y)))
                return false;
    // regular-image characterization
    auto Q = quotient_ring(Rp, I.members);
    Bitset reg(Q.ring->size());
    Bitset zd = Q.ring->zero_divisors();
    for (Elem a = 0; a < Q.ring->size(); ++a)
        if (!zd.test(a)) reg.set(a);
    return lam.members == Q.surjection.preimage(reg);
}

// primal: R \ Lambda(I) is a prime ideal
inline bool is_primal(const Ring& R, const Ideal& I) {
    LambdaSet lam = lambda_set(R, I);
    Bitset comp(R.size());
    for (Elem a = 0; a < R.size(); ++a)
        if (!lam.members.test(a)) comp.set(a);
    if (!is_ideal_set(R, comp)) return false;
    Ideal P{R.id(), comp};
    return is_proper(R, P) && is_prime(R, P);
}

// semi-primal: R \ Lambda(I) is a finite union of prime ideals
inline bool is_semi_primal(const Ring& R, const Ideal& I, const IdealLattice& L) {
    LambdaSet lam = lambda_set(R, I);
    Bitset comp(R.size());
    for (Elem a = 0; a < R.size(); ++a)
        if (!lam.members.test(a)) comp.set(a);
    Bitset covered(R.size());
    for (int p : L.prime_ideals)
        if (L.ideals[p].members.is_subset_of(comp)) covered |= L.ideals[p].members;
    return covered == comp;
}

// Cor 2.83 + Cor 5.3: the value of (I : x) for every x, by type, for a
// submaximal quasi-maximal ideal.
inline bool colon_behavior_check(const Ring& R, const Ideal& I, const IdealLattice& L) {
    QMaxClass c = classify_qmax_by_type(R, I, L);
    if (c.tag != QClass::Ramified && c.tag != QClass::Decomposed)
        throw precondition_violation("colon_behavior_check: I must be submaximal quasi-maximal");
    for (Elem x = 0; x < R.size(); ++x) {
        Ideal got = colon_by_element(R, I, x);
        Ideal want = I;
        if (I.contains(x)) {
            want = unit_ideal(R);
        } else if (c.tag == QClass::Ramified) {
            const Ideal& M = *c.m1;
            want = M.contains(x) ? M : I;  // Cor 5.3 / Cor 2.83(1)
        } else {
            const Ideal& M1 = *c.m1;
            const Ideal& M2 = *c.m2;
            if (M1.contains(x) && !M2.contains(x))
                want = M2;  // Cor 2.83(2)(a), roles swapped
            else if (M2.contains(x) && !M1.contains(x))
                want = M1;
            else
                want = I;  // x outside both maximals
        }
        if (got != want) return false;
    }
    return true;
}

// Props 2.84 / 2.85 / 2.86 along a certified morphism.
struct LambdaMorphismReport {
    bool containment = false;       // f^{-1}[Lambda(J)] inside Lambda[f^{-1}(J)]
    bool equality_if_surjective = true;
    bool colon_preimage = false;    // f^{-1}(J : f(x)) = I for x in Lambda(I)
    bool max_upper_equality = false; // Lambda-equality at a Max-upper K
    bool all_ok() const {
        return containment && equality_if_surjective && colon_preimage && max_upper_equality;
    }
};

inline LambdaMorphismReport lambda_morphism_checks(const RingMap& f, const Ideal& J) {
    const Ring& R = *f.source;
    const Ring& S = *f.target;
    require_same_ring(S, J);
    if (!is_proper(S, J)) throw invalid_parameter("lambda_morphism_checks: J must be proper");
    Ideal I = contract_along(f, J);
    if (!is_proper(R, I)) throw invalid_parameter("lambda_morphism_checks: f^{-1}(J) = R");
    LambdaMorphismReport rep;

    LambdaSet lamJ = lambda_set(S, J);
    LambdaSet lamI = lambda_set(R, I);
    Bitset pre = f.preimage(lamJ.members);
    rep.containment = pre.is_subset_of(lamI.members);
    if (f.is_surjective()) rep.equality_if_surjective = (pre == lamI.members);

    rep.colon_preimage = true;
    lamI.members.for_each([&](Elem x) {
        Ideal colx = colon_by_element(S, J, f.image[x]);
        if (contract_along(f, colx) != I) rep.colon_preimage = false;
    });

    MaxUpperResult K = max_upper(f, J);
    rep.max_upper_equality = true;
    for (const Ideal& k : K.all_maximal) {
        LambdaSet lamK = lambda_set(S, k);
        Ideal Ik = contract_along(f, k);
        LambdaSet lamIk = lambda_set(R, Ik);
        if (f.preimage(lamK.members) != lamIk.members) rep.max_upper_equality = false;
    }
    return rep;
}

}  // namespace qmax
