#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "qmax/extensions.hpp"

namespace qmax {

enum class CheckStatus { Pass, Fail, HypothesisNotMet };

inline const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        default: return "hypothesis-not-met";
    }
}

struct PropInstance {
    std::string prop;
    std::string instance;
    CheckStatus status;
    std::string detail;
};

namespace transfer_detail {

struct Ctx {
    const Extension& E;
    const Ring& R;
    const Ring& S;
    std::shared_ptr<const IdealLattice> LR, LS;
    std::vector<PropInstance>& out;

    void emit(const std::string& prop, const std::string& inst, bool ok,
              const std::string& detail = "") {
        out.push_back({prop, inst, ok ? CheckStatus::Pass : CheckStatus::Fail, detail});
    }
    void hyp(const std::string& prop, const std::string& inst, const std::string& detail = "") {
        out.push_back({prop, inst, CheckStatus::HypothesisNotMet, detail});
    }

    QMaxClass clR(const Ideal& I) const { return classify_qmax_by_type(R, I, *LR); }
    QMaxClass clS(const Ideal& J) const { return classify_qmax_by_type(S, J, *LS); }
    std::string iR(const Ideal& I) const { return ideal_to_string(R, I); }
    std::string iS(const Ideal& J) const { return ideal_to_string(S, J); }
    bool supp_hits(const Ideal& I) const {
        // V_R(I) /\ Supp(S/R) nonempty?
        int i = LR->index_of_checked(I);
        for (const Ideal& M : E.support)
            if (LR->leq(i, LR->index_of_checked(M))) return true;
        return false;
    }
};

// Lemma 3.25 (LO holds: finite extensions are integral): sqrt_R(I) =
// sqrt_S(IS) /\ R for every ideal of R.
inline void lem_3_25(Ctx& c) {
    for (const Ideal& I : c.LR->ideals) {
        Ideal lhs = radical(c.R, I);
        Ideal rhs = contract_ideal(c.E, radical(c.S, extend_ideal(c.E, I)));
        c.emit("lem3.25", c.iR(I), lhs == rhs);
    }
}

// Lemma 3.26: if I = IS /\ R then sqrt I = sqrt(IS) /\ R = sqrt(sqrt(I) S) /\ R.
inline void lem_3_26(Ctx& c) {
    for (const Ideal& I : c.LR->ideals) {
        Ideal IS = extend_ideal(c.E, I);
        if (contract_ideal(c.E, IS) != I) {
            c.hyp("lem3.26", c.iR(I), "I != IS /\\ R");
            continue;
        }
        Ideal sI = radical(c.R, I);
        bool ok = sI == contract_ideal(c.E, radical(c.S, IS)) &&
                  sI == contract_ideal(c.E, radical(c.S, extend_ideal(c.E, sI)));
        c.emit("lem3.26", c.iR(I), ok);
    }
}

// Cor 3.27: if sqrt I = sqrt(IS) /\ R then sqrt I = sqrt(sqrt(I) S) /\ R.
inline void cor_3_27(Ctx& c) {
    for (const Ideal& I : c.LR->ideals) {
        Ideal sI = radical(c.R, I);
        if (sI != contract_ideal(c.E, radical(c.S, extend_ideal(c.E, I)))) {
            c.hyp("cor3.27", c.iR(I), "sqrt I != sqrt(IS) /\\ R");
            continue;
        }
        bool ok = sI == contract_ideal(c.E, radical(c.S, extend_ideal(c.E, sI)));
        c.emit("cor3.27", c.iR(I), ok);
    }
}

// Prop 3.28: I quasi-maximal with MS maximal for every maximal M over I.
inline void prop_3_28(Ctx& c) {
    for (int i = 0; i < c.LR->proper_count(); ++i) {
        const Ideal& I = c.LR->ideals[i];
        QMaxClass cr = c.clR(I);
        if (!cr.is_qmax()) continue;
        bool hyp_ok = true;
        for (int m : maximals_over(I, *c.LR)) {
            Ideal MS = extend_ideal(c.E, c.LR->ideals[m]);
            if (!is_maximal(c.S, MS, *c.LS)) hyp_ok = false;
        }
        if (!hyp_ok) {
            c.hyp("prop3.28", c.iR(I), "MS not maximal for some M over I");
            continue;
        }
        Ideal IS = extend_ideal(c.E, I);
        QMaxClass cs = c.clS(IS);
        bool ok = cs.is_qmax();
        ok = ok && radical(c.R, I) == contract_ideal(c.E, radical(c.S, IS));
        bool exceptional = cr.tag == QClass::Ramified && radical(c.S, IS) == IS;
        if (exceptional)
            ok = ok && cs.tag == QClass::Inert && contract_ideal(c.E, IS) == radical(c.R, I);
        else
            ok = ok && cs.tag == cr.tag && contract_ideal(c.E, IS) == I;
        c.emit("prop3.28", c.iR(I), ok, qclass_name(cs.tag));
    }
}

// Cor 3.2: I ramified with sqrt(I) S maximal: I = IS /\ R iff IS ramified.
inline void cor_3_2(Ctx& c) {
    for (int i = 0; i < c.LR->proper_count(); ++i) {
        const Ideal& I = c.LR->ideals[i];
        if (c.clR(I).tag != QClass::Ramified) continue;
        Ideal Mext = extend_ideal(c.E, radical(c.R, I));
        if (!is_maximal(c.S, Mext, *c.LS)) {
            c.hyp("cor3.2", c.iR(I), "sqrt(I) S not maximal");
            continue;
        }
        Ideal IS = extend_ideal(c.E, I);
        bool lhs = contract_ideal(c.E, IS) == I;
        bool rhs = c.clS(IS).tag == QClass::Ramified;
        c.emit("cor3.2", c.iR(I), lhs == rhs);
    }
}

// Cor 3.3: I quasi-maximal with V(I) /\ Supp(S/R) empty.
inline void cor_3_3(Ctx& c) {
    for (int i = 0; i < c.LR->proper_count(); ++i) {
        const Ideal& I = c.LR->ideals[i];
        QMaxClass cr = c.clR(I);
        if (!cr.is_qmax()) continue;
        if (c.supp_hits(I)) {
            c.hyp("cor3.3", c.iR(I), "V(I) meets Supp(S/R)");
            continue;
        }
        Ideal IS = extend_ideal(c.E, I);
        QMaxClass cs = c.clS(IS);
        bool ok = contract_ideal(c.E, IS) == I && cs.is_qmax() && cs.tag == cr.tag;
        if (is_submaximal(c.R, I, *c.LR)) {
            for (int m : maximals_over(I, *c.LR)) {
                Ideal MS = extend_ideal(c.E, c.LR->ideals[m]);
                ok = ok && is_maximal(c.S, MS, *c.LS) && covers(c.S, IS, MS, *c.LS);
            }
        }
        c.emit("cor3.3", c.iR(I), ok);
    }
}

// Lemma 3.46: M maximal outside the support: MS is the unique prime over M
// and is maximal.
inline void lem_3_46(Ctx& c) {
    for (int m : c.LR->maximal_ideals) {
        const Ideal& M = c.LR->ideals[m];
        bool in_supp = false;
        for (const Ideal& sm : c.E.support) in_supp |= sm.members == M.members;
        if (in_supp) {
            c.hyp("lem3.46", c.iR(M), "M in Supp(S/R)");
            continue;
        }
        Ideal MS = extend_ideal(c.E, M);
        bool ok = is_maximal(c.S, MS, *c.LS);
        for (int p : c.LS->prime_ideals) {
            const Ideal& Q = c.LS->ideals[p];
            bool lies_over = contract_ideal(c.E, Q) == M;
            if (lies_over != (Q == MS)) ok = false;
        }
        c.emit("lem3.46", c.iR(M), ok);
    }
}

// Prop 3.4 (LO+INC): inert or decomposed I lifts to a homotypic J with
// J /\ R = I.
inline void prop_3_4(Ctx& c) {
    for (int i = 0; i < c.LR->proper_count(); ++i) {
        const Ideal& I = c.LR->ideals[i];
        QMaxClass cr = c.clR(I);
        if (cr.tag != QClass::Inert && cr.tag != QClass::Decomposed) continue;
        bool found = false;
        for (int j = 0; j < c.LS->proper_count() && !found; ++j) {
            const Ideal& J = c.LS->ideals[j];
            if (contract_ideal(c.E, J) != I) continue;
            found = c.clS(J).tag == cr.tag;
        }
        c.emit("prop3.4", c.iR(I), found);
    }
}

// Lemma 3.53: I = f^{-1}(I S) and Max-uppers exist (plus bounded variant).
inline void lem_3_53(Ctx& c) {
    for (int j = 0; j < c.LS->proper_count(); ++j) {
        const Ideal& J = c.LS->ideals[j];
        Ideal I = contract_ideal(c.E, J);
        bool ok = contract_ideal(c.E, extend_ideal(c.E, I)) == I;
        MaxUpperResult mu = max_upper(c.E.incl, J);
        ok = ok && !mu.all_maximal.empty();
        for (const Ideal& K : mu.all_maximal)
            ok = ok && J.members.is_subset_of(K.members) && contract_ideal(c.E, K) == I;
        for (int m : c.LS->maximal_ideals) {
            const Ideal& N = c.LS->ideals[m];
            if (!J.members.is_subset_of(N.members)) continue;
            MaxUpperResult mb = max_upper(c.E.incl, J, N);
            ok = ok && !mb.all_maximal.empty();
            for (const Ideal& K : mb.all_maximal) ok = ok && K.members.is_subset_of(N.members);
        }
        c.emit("lem3.53", c.iS(J), ok);
    }
}

// Prop 3.52: J ideal of S, I = J /\ R submaximal under M with MS maximal
// and J inside MS.
inline void prop_3_52(Ctx& c) {
    for (int j = 0; j < c.LS->proper_count(); ++j) {
        const Ideal& J = c.LS->ideals[j];
        Ideal I = contract_ideal(c.E, J);
        if (!is_proper(c.R, I)) continue;
        int ii = c.LR->index_of_checked(I);
        bool any_hyp = false;
        for (int m : maximals_over(I, *c.LR)) {
            if (!c.LR->is_cover(ii, m)) continue;
            const Ideal& M = c.LR->ideals[m];
            Ideal N = extend_ideal(c.E, M);
            if (!is_maximal(c.S, N, *c.LS) || !J.members.is_subset_of(N.members)) continue;
            any_hyp = true;
            std::string inst = c.iS(J) + " under M=" + c.iR(M);

            MaxUpperResult mu = max_upper(c.E.incl, J, N);
            Ideal IS = extend_ideal(c.E, I);
            QMaxClass cr = c.clR(I);
            bool ok = true;
            for (const Ideal& K : mu.all_maximal) {
                QMaxClass ck = c.clS(K);
                ok = ok && ck.is_qmax();
                if (cr.tag == QClass::Ramified)
                    ok = ok && K == IS && ck.tag == QClass::Ramified;
                else if (cr.tag == QClass::Decomposed) {
                    // name the second maximal over I: the one different from M
                    const Ideal* M2 = nullptr;
                    for (int m2 : maximals_over(I, *c.LR))
                        if (m2 != m) M2 = &c.LR->ideals[m2];
                    require(M2 != nullptr, "decomposed I with a single maximal over it");
                    Ideal N2 = extend_ideal(c.E, *M2);
                    ok = ok && is_proper(c.S, N2);
                    if (is_maximal(c.S, N2, *c.LS))
                        ok = ok && K == IS && ck.tag == QClass::Decomposed;
                    else
                        ok = ok && IS.members.is_proper_subset_of(K.members) &&
                             !c.clS(IS).is_qmax();
                }
            }
            bool is_neq_k = false;
            for (const Ideal& K : mu.all_maximal) is_neq_k |= K != IS;
            c.emit("prop3.52", inst, ok, is_neq_k ? "IS-strictly-below-K" : "");
        }
        if (!any_hyp && is_submaximal(c.R, I, *c.LR))
            c.hyp("prop3.52", c.iS(J), "no covering M with MS maximal containing J");
    }
}

// Prop 3.1: contraction of a quasi-maximal ideal of S.
inline void prop_3_1(Ctx& c) {
    for (int j = 0; j < c.LS->proper_count(); ++j) {
        const Ideal& J = c.LS->ideals[j];
        QMaxClass cs = c.clS(J);
        if (!cs.is_qmax()) continue;
        Ideal I = contract_ideal(c.E, J);
        std::string inst = c.iS(J);
        if (cs.tag == QClass::Inert) {
            c.emit("prop3.1", inst, c.clR(I).tag == QClass::Inert, "inert");
        } else if (cs.tag == QClass::Decomposed) {
            Ideal M1 = contract_ideal(c.E, *cs.m1);
            Ideal M2 = contract_ideal(c.E, *cs.m2);
            if (M1 == M2) {
                bool ok = c.clR(I).tag == QClass::Inert;
                if (!ok)
                    for (const Ideal& sm : c.E.support) ok |= sm.members == I.members;
                c.emit("prop3.1", inst, ok, "decomposed, equal contractions");
            } else {
                c.emit("prop3.1", inst, c.clR(I).tag == QClass::Decomposed,
                       "decomposed, distinct contractions");
            }
        } else {
            Ideal N = radical(c.S, J);
            Ideal M = contract_ideal(c.E, N);
            auto Q = quotient_ring(c.E.Rp(), I.members);
            auto LQ = lattice_of(*Q.ring);
            bool local = LQ->maximal_ideals.size() == 1;
            bool ok = local;
            if (local) {
                const Ideal& Mq = LQ->ideals[LQ->maximal_ideals[0]];
                ok = Mq.members == image_bits(Q.surjection, M.members);
                bool principal = false;
                for (Elem t = 0; t < Q.ring->size() && !principal; ++t)
                    principal = principal_ideal(*Q.ring, t) == Mq;
                // M' = 0 degenerates to I = N /\ R maximal, hence inert
                if (ok && principal)
                    ok = c.clR(I).tag ==
                         (Mq.count() == 1 ? QClass::Inert : QClass::Ramified);
            }
            c.emit("prop3.1", inst, ok, "ramified");
        }
    }
}

// The remaining checks assume a minimal extension.

inline void minimal_props(Ctx& c, const MinimalType& mt) {
    if (mt.tag == MinimalTag::NotMinimal) return;
    const Ideal& MS = *mt.conductor_S;          // conductor as ideal of S
    Ideal MR = c.E.conductor_in_R();            // same set inside R

    // Prop 4.5: decomposed I < M in any minimal extension
    for (int i = 0; i < c.LR->proper_count(); ++i) {
        const Ideal& I = c.LR->ideals[i];
        if (c.clR(I).tag != QClass::Decomposed) continue;
        if (!I.members.is_proper_subset_of(MR.members)) continue;
        QMaxClass cr = c.clR(I);
        // I = M /\ M' with M' != M
        const Ideal* other = nullptr;
        if (cr.m1->members == MR.members) other = &*cr.m2;
        if (cr.m2->members == MR.members) other = &*cr.m1;
        bool ok = other != nullptr && is_shared_ideal(c.E, I);
        if (ok) {
            bool found = false;
            for (int j = 0; j < c.LS->proper_count() && !found; ++j) {
                const Ideal& J = c.LS->ideals[j];
                QMaxClass cs = c.clS(J);
                if (cs.tag != QClass::Decomposed || contract_ideal(c.E, J) != I) continue;
                Ideal c1 = contract_ideal(c.E, *cs.m1);
                Ideal c2 = contract_ideal(c.E, *cs.m2);
                found = (c1 == MR && c2 == *other) || (c2 == MR && c1 == *other);
            }
            ok = found;
            Ideal Iimg{c.S.id(), image_bits(c.E.incl, I.members)};
            bool IinS = c.clS(Iimg).tag == QClass::Decomposed;
            ok = ok && (IinS == (mt.tag == MinimalTag::Inert));
            if (mt.tag == MinimalTag::Inert) {
                // uniqueness: the only quasi-maximal of S inside MS lying over I
                int hits = 0;
                for (int j = 0; j < c.LS->proper_count(); ++j) {
                    const Ideal& J = c.LS->ideals[j];
                    if (!J.members.is_subset_of(MS.members)) continue;
                    if (!c.clS(J).is_qmax()) continue;
                    if (contract_ideal(c.E, J) == I) ++hits;
                }
                ok = ok && hits == 1;
            }
            if (!is_maximal(c.S, MS, *c.LS)) {
                bool some_J_differs = false;
                for (int j = 0; j < c.LS->proper_count(); ++j) {
                    const Ideal& J = c.LS->ideals[j];
                    if (c.clS(J).tag == QClass::Decomposed && contract_ideal(c.E, J) == I &&
                        J.members != Iimg.members)
                        some_J_differs = true;
                }
                ok = ok && some_J_differs;
            }
        }
        c.emit("prop4.5", c.iR(I), ok);
    }

    // Lemma 4.3: submaximal I of R: I = IS iff I < (R:S) and I contracts
    // from some ideal of S.
    for (int i = 0; i < c.LR->proper_count(); ++i) {
        const Ideal& I = c.LR->ideals[i];
        if (!is_submaximal(c.R, I, *c.LR)) continue;
        bool lhs = is_shared_ideal(c.E, I);
        bool sub = I.members.is_proper_subset_of(MR.members);
        bool contracts = false;
        for (int j = 0; j < static_cast<int>(c.LS->ideals.size()) && !contracts; ++j)
            contracts = contract_ideal(c.E, c.LS->ideals[j]) == I;
        c.emit("lem4.3", c.iR(I), lhs == (sub && contracts));
    }

    // Prop 4.11: J quasi-maximal in S whose contraction escapes (R:S)
    for (int j = 0; j < c.LS->proper_count(); ++j) {
        const Ideal& J = c.LS->ideals[j];
        QMaxClass cs = c.clS(J);
        if (!cs.is_qmax()) continue;
        Ideal I = contract_ideal(c.E, J);
        if (I.members.is_subset_of(MR.members)) continue;
        QMaxClass cr = c.clR(I);
        bool ok = extend_ideal(c.E, I) == J && cr.is_qmax() && cr.tag == cs.tag;
        c.emit("prop4.11", c.iS(J), ok);
    }

    // Prop 4.81: submaximal J of S strictly inside the conductor
    for (int j = 0; j < c.LS->proper_count(); ++j) {
        const Ideal& J = c.LS->ideals[j];
        if (!is_submaximal(c.S, J, *c.LS)) continue;
        if (!J.members.is_proper_subset_of(MS.members)) continue;
        QMaxClass cs = c.clS(J);
        Ideal JR = contract_ideal(c.E, J);
        QMaxClass cr = c.clR(JR);
        bool case1 = cr.tag == QClass::Decomposed && cs.tag == QClass::Decomposed;
        bool case2 = cs.tag == QClass::Ramified && !cr.is_qmax();
        bool ok = (case1 || case2) && mt.tag == MinimalTag::Inert;
        c.emit("prop4.81", c.iS(J), ok);
    }

    if (mt.tag == MinimalTag::Inert) {
        // Cor 4.8: ramified I < (R:S) admits no J < (R:S) over it
        for (int i = 0; i < c.LR->proper_count(); ++i) {
            const Ideal& I = c.LR->ideals[i];
            if (c.clR(I).tag != QClass::Ramified) continue;
            if (!I.members.is_proper_subset_of(MR.members)) continue;
            bool none = true;
            for (int j = 0; j < c.LS->proper_count(); ++j) {
                const Ideal& J = c.LS->ideals[j];
                if (!c.clS(J).is_qmax()) continue;
                if (!J.members.is_proper_subset_of(MS.members)) continue;
                if (contract_ideal(c.E, J) == I) none = false;
            }
            c.emit("cor4.8", c.iR(I), none);
        }
        // Prop 4.82: ramified J not inside (R:S)
        for (int j = 0; j < c.LS->proper_count(); ++j) {
            const Ideal& J = c.LS->ideals[j];
            if (c.clS(J).tag != QClass::Ramified) continue;
            if (J.members.is_subset_of(MS.members)) continue;
            Ideal I = contract_ideal(c.E, J);
            bool ok = c.clR(I).tag == QClass::Ramified && extend_ideal(c.E, I) == J;
            c.emit("prop4.82", c.iS(J), ok);
        }
    }

    if (mt.tag == MinimalTag::Decomposed) {
        // Prop 4.111: quasi-maximal I < M: existence of J not inside M over I
        for (int i = 0; i < c.LR->proper_count(); ++i) {
            const Ideal& I = c.LR->ideals[i];
            QMaxClass cr = c.clR(I);
            if (!cr.is_qmax()) continue;
            if (!I.members.is_proper_subset_of(MR.members)) continue;
            bool lhs = false;
            for (int j = 0; j < c.LS->proper_count() && !lhs; ++j) {
                const Ideal& J = c.LS->ideals[j];
                if (!c.clS(J).is_qmax()) continue;
                if (J.members.is_subset_of(MS.members)) continue;
                lhs = contract_ideal(c.E, J) == I;
            }
            bool shared = is_shared_ideal(c.E, I);
            bool form = false;
            if (cr.tag == QClass::Decomposed)
                form = cr.m1->members == MR.members || cr.m2->members == MR.members;
            else if (cr.tag == QClass::Ramified)
                form = radical(c.R, I) == MR;
            bool rhs = shared && form;
            bool ok = lhs == rhs;
            if (lhs) {
                bool homot = false;
                for (int j = 0; j < c.LS->proper_count() && !homot; ++j) {
                    const Ideal& J = c.LS->ideals[j];
                    QMaxClass cs = c.clS(J);
                    if (!cs.is_qmax() || J.members.is_subset_of(MS.members)) continue;
                    homot = contract_ideal(c.E, J) == I && cs.tag == cr.tag;
                }
                ok = ok && homot;
            }
            c.emit("prop4.111", c.iR(I), ok);
        }
        // Prop 4.12: J quasi-maximal not inside M contracts homotypically
        for (int j = 0; j < c.LS->proper_count(); ++j) {
            const Ideal& J = c.LS->ideals[j];
            QMaxClass cs = c.clS(J);
            if (!cs.is_qmax()) continue;
            if (J.members.is_subset_of(MS.members)) continue;
            Ideal I = contract_ideal(c.E, J);
            QMaxClass cr = c.clR(I);
            c.emit("prop4.12", c.iS(J), cr.is_qmax() && cr.tag == cs.tag);
        }
    }

    if (mt.tag == MinimalTag::Ramified) {
        Ideal N = radical(c.S, MS);
        // Prop 4.18: shared submaximal ideals of R are never quasi-maximal in S
        for (int i = 0; i < c.LR->proper_count(); ++i) {
            const Ideal& I = c.LR->ideals[i];
            if (!is_submaximal(c.R, I, *c.LR) || !is_shared_ideal(c.E, I)) continue;
            Ideal Iimg{c.S.id(), image_bits(c.E.incl, I.members)};
            c.emit("prop4.18", c.iR(I), !c.clS(Iimg).is_qmax());
        }
        // Prop 4.16: J quasi-maximal, J <= N, J not inside M
        for (int j = 0; j < c.LS->proper_count(); ++j) {
            const Ideal& J = c.LS->ideals[j];
            QMaxClass cs = c.clS(J);
            if (!cs.is_qmax()) continue;
            if (!J.members.is_subset_of(N.members)) continue;
            if (J.members.is_subset_of(MS.members)) continue;
            Ideal I = contract_ideal(c.E, J);
            QMaxClass cr = c.clR(I);
            bool ok = is_shared_ideal(c.E, I) && cr.is_qmax() && cr.tag == cs.tag;
            c.emit("prop4.16", c.iS(J), ok);
        }
        // Cor 4.19: any quasi-maximal J not inside M contracts homotypically
        for (int j = 0; j < c.LS->proper_count(); ++j) {
            const Ideal& J = c.LS->ideals[j];
            QMaxClass cs = c.clS(J);
            if (!cs.is_qmax()) continue;
            if (J.members.is_subset_of(MS.members)) continue;
            Ideal I = contract_ideal(c.E, J);
            QMaxClass cr = c.clR(I);
            c.emit("cor4.19", c.iS(J), cr.is_qmax() && cr.tag == cs.tag);
        }
    }
}

// Prop 3.35 covering transfer, both directions.
inline void prop_3_35(Ctx& c) {
    // (1) covers in R
    for (auto [i, j] : c.LR->cover_pairs) {
        if (j == static_cast<int>(c.LR->ideals.size()) - 1) continue;  // upper = R itself
        const Ideal& I = c.LR->ideals[i];
        const Ideal& J = c.LR->ideals[j];
        std::string inst = c.iR(I) + " < " + c.iR(J);
        if (c.supp_hits(I)) {
            c.hyp("prop3.35(1)", inst, "V(I) meets Supp(S/R)");
            continue;
        }
        Ideal IS = extend_ideal(c.E, I);
        Ideal JS = extend_ideal(c.E, J);
        bool ok = covers(c.S, IS, JS, *c.LS) && contract_ideal(c.E, IS) == I &&
                  contract_ideal(c.E, JS) == J;
        c.emit("prop3.35(1)", inst, ok);
    }
    // (2) covers in S
    for (auto [i, j] : c.LS->cover_pairs) {
        if (j == static_cast<int>(c.LS->ideals.size()) - 1) continue;
        const Ideal& Ip = c.LS->ideals[i];
        const Ideal& Jp = c.LS->ideals[j];
        std::string inst = c.iS(Ip) + " < " + c.iS(Jp);
        Ideal I = contract_ideal(c.E, Ip);
        if (!is_proper(c.R, I) || c.supp_hits(I)) {
            c.hyp("prop3.35(2)", inst, "V(I' /\\ R) meets Supp(S/R)");
            continue;
        }
        Ideal J = contract_ideal(c.E, Jp);
        bool ok = covers(c.R, I, J, *c.LR) && extend_ideal(c.E, I) == Ip &&
                  extend_ideal(c.E, J) == Jp;
        c.emit("prop3.35(2)", inst, ok);
    }
}

}  // namespace transfer_detail

// The full per-extension transfer suite. Deterministic: instances sorted by
// (proposition, instance key).
inline std::vector<PropInstance> transfer_suite(const Extension& E,
                                                const Limits& lim = Limits::global()) {
    std::vector<PropInstance> out;
    transfer_detail::Ctx c{E, E.R(), E.S(), lattice_of(E.R(), lim), lattice_of(E.S(), lim), out};
    transfer_detail::lem_3_25(c);
    transfer_detail::lem_3_26(c);
    transfer_detail::cor_3_27(c);
    transfer_detail::prop_3_28(c);
    transfer_detail::cor_3_2(c);
    transfer_detail::cor_3_3(c);
    transfer_detail::lem_3_46(c);
    transfer_detail::prop_3_4(c);
    transfer_detail::lem_3_53(c);
    transfer_detail::prop_3_52(c);
    transfer_detail::prop_3_1(c);
    transfer_detail::prop_3_35(c);
    MinimalType mt;
    try {
        mt = classify_minimal(E, lim);
    } catch (const invalid_parameter&) {
        mt.tag = MinimalTag::NotMinimal;  // R = S
    }
    transfer_detail::minimal_props(c, mt);
    std::sort(out.begin(), out.end(), [](const PropInstance& a, const PropInstance& b) {
        if (a.prop != b.prop) return a.prop < b.prop;
        return a.instance < b.instance;
    });
    return out;
}

// Prop 3.161 via the local-factor decomposition (the finite-ring stand-in
// for localization at a maximal ideal).
inline std::vector<PropInstance> prop_3_161_check(const RingPtr& Rp,
                                                  const Limits& lim = Limits::global()) {
    std::vector<PropInstance> out;
    const Ring& R = *Rp;
    auto LR = lattice_of(R, lim);
    auto lf = local_factors(Rp);
    std::vector<std::shared_ptr<const IdealLattice>> fl;
    for (auto& F : lf.factors) fl.push_back(lattice_of(*F, lim));

    for (int i = 0; i < LR->proper_count(); ++i) {
        const Ideal& I = LR->ideals[i];
        QMaxClass cr = classify_qmax_by_type(R, I, *LR);
        bool lhs = cr.is_qmax();

        auto over = maximals_over(I, *LR);
        bool v_in_max = true;
        for (int p : LR->prime_ideals)
            if (LR->leq(i, p) && !LR->is_maximal_index(p)) v_in_max = false;
        bool rhs = v_in_max && static_cast<int>(over.size()) <= 2;
        std::vector<QMaxClass> local_cls;
        for (int m : over) {
            int fi = lf.factor_of_maximal(R, LR->ideals[m]);
            const Ring& F = *lf.factors[fi];
            Ideal IM{F.id(), image_bits(lf.projections[fi], I.members)};
            if (!is_proper(F, IM)) {
                rhs = false;
                continue;
            }
            QMaxClass cm = classify_qmax_by_type(F, IM, *fl[fi]);
            local_cls.push_back(cm);
            rhs = rhs && cm.is_qmax();
            if (over.size() == 2) rhs = rhs && cm.tag == QClass::Inert;
        }
        bool ok = lhs == rhs;
        if (lhs) {
            // homotypy claims
            for (auto& cm : local_cls) {
                if (cr.tag == QClass::Decomposed)
                    ok = ok && cm.tag == QClass::Inert;
                else
                    ok = ok && cm.tag == cr.tag;
            }
        }
        out.push_back({"prop3.161", ideal_to_string(R, I),
                       ok ? CheckStatus::Pass : CheckStatus::Fail, ""});
    }
    return out;
}

// Prop 2.18 instantiated with the minimal idempotents (R = sum R e_i):
// localization at e_i is the corresponding local factor.
inline std::vector<PropInstance> prop_2_18_check(const RingPtr& Rp,
                                                 const Limits& lim = Limits::global()) {
    std::vector<PropInstance> out;
    const Ring& R = *Rp;
    auto LR = lattice_of(R, lim);
    auto lf = local_factors(Rp);
    for (std::size_t fi = 0; fi < lf.factors.size(); ++fi) {
        const Ring& F = *lf.factors[fi];
        auto LF = lattice_of(F, lim);
        for (int i = 0; i < LR->proper_count(); ++i) {
            const Ideal& I = LR->ideals[i];
            bool hyp = false;  // some maximal over I avoids e_i
            for (int m : maximals_over(I, *LR))
                if (!LR->ideals[m].contains(lf.idempotents[fi])) hyp = true;
            std::string inst = ideal_to_string(R, I) + " @e=" + R.name(lf.idempotents[fi]);
            if (!hyp) {
                out.push_back({"prop2.18", inst, CheckStatus::HypothesisNotMet,
                               "no maximal over I avoids the idempotent"});
                continue;
            }
            Ideal IM{F.id(), image_bits(lf.projections[fi], I.members)};
            bool ok = true;
            bool lhs = classify_qmax_by_type(R, I, *LR).is_qmax();
            if (lhs) ok = is_proper(F, IM) && classify_qmax_by_type(F, IM, *LF).is_qmax();
            // converse under saturation
            bool saturated = lf.projections[fi].preimage(IM.members) == I.members;
            if (saturated && is_proper(F, IM) &&
                classify_qmax_by_type(F, IM, *LF).is_qmax())
                ok = ok && lhs;
            out.push_back({"prop2.18", inst, ok ? CheckStatus::Pass : CheckStatus::Fail, ""});
        }
    }
    return out;
}

// Cor 3.7 on the idealization retract S = R(+)E.
inline std::vector<PropInstance> retract_transfer_check(const RingPtr& Rp, const Ideal& Eid,
                                                        const Limits& lim = Limits::global()) {
    std::vector<PropInstance> out;
    auto idz = make_idealization(Rp, Eid.members, lim);
    const Ring& R = *Rp;
    const Ring& S = *idz.ring;
    auto LR = lattice_of(R, lim);
    auto LS = lattice_of(S, lim);
    Bitset ker = idz.retraction.preimage(zero_ideal(R).members);

    for (int i = 0; i < LR->proper_count(); ++i) {
        const Ideal& I = LR->ideals[i];
        if (!classify_qmax_by_type(R, I, *LR).is_qmax()) continue;
        Ideal J{S.id(), idz.retraction.preimage(I.members)};
        bool ok = classify_qmax_by_type(S, J, *LS).is_qmax();
        ok = ok && contract_along(idz.inclusion, J) == I;
        // J = I + Ker(f)
        Ideal IplusKer = ideal_sum(S, Ideal{S.id(), image_bits(idz.inclusion, I.members)},
                                   Ideal{S.id(), ker});
        ok = ok && J == IplusKer;
        out.push_back({"cor3.7(2)", ideal_to_string(R, I),
                       ok ? CheckStatus::Pass : CheckStatus::Fail, ""});
    }
    for (int j = 0; j < LS->proper_count(); ++j) {
        const Ideal& J = LS->ideals[j];
        if (!classify_qmax_by_type(S, J, *LS).is_qmax()) continue;
        if (!ker.is_subset_of(J.members)) continue;
        Ideal fJ{R.id(), image_bits(idz.retraction, J.members)};
        bool ok = is_proper(R, fJ) && classify_qmax_by_type(R, fJ, *LR).is_qmax();
        ok = ok && contract_along(idz.inclusion, J) == fJ;
        Ideal IplusKer = ideal_sum(S, Ideal{S.id(), image_bits(idz.inclusion, fJ.members)},
                                   Ideal{S.id(), ker});
        ok = ok && J == IplusKer;
        out.push_back({"cor3.7(3)", ideal_to_string(S, J),
                       ok ? CheckStatus::Pass : CheckStatus::Fail, ""});
    }
    return out;
}

// Prop 3.11 for a local R and monic f: I quasi-maximal in R iff its
// extension to R[X]/(f) is, homotypically; requires M R' maximal, which is
// verified first and reported as hypothesis-not-met otherwise.
inline std::vector<PropInstance> monic_quotient_transfer_check(
    const RingPtr& Rp, const std::vector<Elem>& monic, const Limits& lim = Limits::global()) {
    std::vector<PropInstance> out;
    const Ring& R = *Rp;
    auto LR = lattice_of(R, lim);
    if (LR->maximal_ideals.size() != 1)
        throw precondition_violation("monic_quotient_transfer_check: R must be local");
    auto pq = make_poly_quotient(Rp, monic, lim);
    Extension E = make_extension(pq.inclusion);
    const Ring& S = E.S();
    auto LS = lattice_of(S, lim);

    const Ideal& M = LR->ideals[LR->maximal_ideals[0]];
    Ideal MS = extend_ideal(E, M);
    bool hyp = is_maximal(S, MS, *LS);
    for (int i = 0; i < LR->proper_count(); ++i) {
        const Ideal& I = LR->ideals[i];
        std::string inst = ideal_to_string(R, I) + " in " + S.label();
        if (!hyp) {
            out.push_back({"prop3.11", inst, CheckStatus::HypothesisNotMet, "MS not maximal"});
            continue;
        }
        QMaxClass cr = classify_qmax_by_type(R, I, *LR);
        Ideal IS = extend_ideal(E, I);
        QMaxClass cs = classify_qmax_by_type(S, IS, *LS);
        bool ok = cr.is_qmax() == cs.is_qmax();
        if (cr.is_qmax()) ok = ok && cr.tag == cs.tag;
        out.push_back({"prop3.11", inst, ok ? CheckStatus::Pass : CheckStatus::Fail, ""});
    }
    return out;
}

// Prop 4.6: FCP infra-integral with quasi-maximal conductor is minimal of
// the matching type, with conductor maximal in R.
inline std::optional<PropInstance> prop_4_6_check(const Extension& E,
                                                  const Limits& lim = Limits::global()) {
    if (E.image.count() == E.S().size()) return std::nullopt;
    if (!is_infra_integral(E)) return std::nullopt;
    auto LS = lattice_of(E.S(), lim);
    if (!is_proper(E.S(), E.conductor)) return std::nullopt;
    QMaxClass cs = classify_qmax_by_type(E.S(), E.conductor, *LS);
    if (!cs.is_qmax()) return std::nullopt;
    MinimalType mt = classify_minimal(E, lim);
    bool ok = mt.tag != MinimalTag::NotMinimal && to_qclass(mt.tag) == cs.tag;
    Ideal MR = E.conductor_in_R();
    ok = ok && is_maximal(E.R(), MR, *lattice_of(E.R(), lim));
    return PropInstance{"prop4.6", E.R().label() + " < " + E.S().label(),
                        ok ? CheckStatus::Pass : CheckStatus::Fail, ""};
}

// Prop 4.7: for integral extensions whose conductor is maximal in R:
// conductor maximal in S iff the extension is t-closed.
inline std::optional<PropInstance> prop_4_7_check(const Extension& E,
                                                  const Limits& lim = Limits::global()) {
    if (E.image.count() == E.S().size()) return std::nullopt;
    Ideal MR = E.conductor_in_R();
    if (!is_maximal(E.R(), MR, *lattice_of(E.R(), lim))) return std::nullopt;
    bool lhs = is_maximal(E.S(), E.conductor, *lattice_of(E.S(), lim));
    bool rhs = closure_bits_in_S(E, true, lim) == E.image;
    return PropInstance{"prop4.7", E.R().label() + " < " + E.S().label(),
                        (lhs == rhs) ? CheckStatus::Pass : CheckStatus::Fail, ""};
}

}  // namespace qmax
