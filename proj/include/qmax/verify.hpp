#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qmax/absorbing.hpp"
#include "qmax/corpus.hpp"
#include "qmax/transfer.hpp"
#include "qmax/z_dedekind.hpp"

namespace qmax {

// Aggregated result of one verification suite. A suite is green when no
// instance failed; hypothesis-not-met instances are informational.
struct SuiteReport {
    SuiteReport() = default;
    explicit SuiteReport(std::string name) : suite(std::move(name)) {}
    std::string suite;
    long instances = 0, passed = 0, failed = 0, hyp_not_met = 0;
    std::vector<std::string> failures;  // first few, for diagnosis
    std::map<std::string, long> counters;
    std::vector<std::string> notes;

    bool ok() const { return failed == 0; }
    void add(bool pass, const std::string& what) {
        ++instances;
        if (pass)
            ++passed;
        else {
            ++failed;
            if (failures.size() < 25) failures.push_back(what);
        }
    }
    void add(const PropInstance& pi) {
        ++instances;
        ++counters["prop:" + pi.prop];
        if (!pi.detail.empty() && pi.status == CheckStatus::Pass)
            ++counters["detail:" + pi.prop + ":" + pi.detail];
        switch (pi.status) {
            case CheckStatus::Pass: ++passed; break;
            case CheckStatus::HypothesisNotMet:
                ++hyp_not_met;
                ++counters["hyp:" + pi.prop];
                break;
            case CheckStatus::Fail:
                ++failed;
                if (failures.size() < 25)
                    failures.push_back(pi.prop + " @ " + pi.instance +
                                       (pi.detail.empty() ? "" : " [" + pi.detail + "]"));
                break;
        }
    }
};

// --- independent lattice oracle ---------------------------------------------

// Brute-force ideal enumeration: every additive subgroup (grown one
// generator at a time) that is closed under ambient multiplication. Fully
// independent of the sum-closure path in compute_all_ideals.
inline std::vector<Bitset> enumerate_ideals_bruteforce(const Ring& R) {
    std::vector<Bitset> groups;
    std::unordered_map<Bitset, int, BitsetHash> seen;
    std::vector<std::size_t> work;
    auto additive_closure = [&](Bitset b) {
        std::vector<Elem> mem;
        b.for_each([&](Elem x) { mem.push_back(x); });
        for (std::size_t k = 0; k < mem.size(); ++k)
            for (std::size_t j = 0; j <= k; ++j) {
                Elem s = R.add(mem[k], mem[j]);
                if (!b.test(s)) {
                    b.set(s);
                    mem.push_back(s);
                }
            }
        return b;
    };
    auto push = [&](Bitset b) {
        if (seen.emplace(b, 0).second) {
            groups.push_back(b);
            work.push_back(groups.size() - 1);
        }
    };
    Bitset z(R.size());
    z.set(R.zero());
    push(z);
    for (std::size_t k = 0; k < work.size(); ++k) {
        Bitset cur = groups[work[k]];
        for (Elem x = 0; x < R.size(); ++x) {
            if (cur.test(x)) continue;
            Bitset b = cur;
            b.set(x);
            push(additive_closure(std::move(b)));
        }
    }
    std::vector<Bitset> ideals;
    for (const Bitset& g : groups) {
        bool closed = true;
        g.for_each([&](Elem x) {
            for (Elem r = 0; r < R.size() && closed; ++r) closed = g.test(R.mul(r, x));
        });
        if (closed) ideals.push_back(g);
    }
    std::sort(ideals.begin(), ideals.end(), [](const Bitset& a, const Bitset& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return a.lex_before(b);
    });
    return ideals;
}

// --- suites -----------------------------------------------------------------

namespace suites {

inline SuiteReport thm2_3(const CorpusOptions& opt = {}) {
    SuiteReport rep("thm2.3");
    for (auto& item : ring_corpus(opt)) {
        RingPtr R = item.build();
        auto L = lattice_of(*R);
        ++rep.counters["rings"];
        for (int i = 0; i < L->proper_count(); ++i) {
            ++rep.counters["ideals"];
            Theorem23Report r = theorem_2_3_report(R, L->ideals[i], *L);
            bool ok = r.all_agree() && (!r.value() || r.v_in_max);
            rep.add(ok, item.label + " ideal " + ideal_to_string(*R, L->ideals[i]));
        }
        clear_lattice_cache();
    }
    return rep;
}

inline SuiteReport thm2_6(const CorpusOptions& opt = {}) {
    SuiteReport rep("thm2.6");
    for (auto& item : ring_corpus(opt)) {
        RingPtr R = item.build();
        auto L = lattice_of(*R);
        for (int i = 0; i < L->proper_count(); ++i) {
            const Ideal& I = L->ideals[i];
            bool qm = is_qmax_definition(*R, I, *L).qmax;
            bool sub_or_max = L->is_maximal_index(i) || is_submaximal(*R, I, *L);
            bool only_max = strictly_below_only_maximals(*R, I, *L);
            bool ok = (qm == sub_or_max) && (qm == only_max);
            // Prop 2.71: a submaximal ideal is covered by every maximal above it
            if (is_submaximal(*R, I, *L))
                for (int m : maximals_over(I, *L)) ok = ok && L->is_cover(i, m);
            rep.add(ok, item.label + " ideal " + ideal_to_string(*R, I));
        }
        clear_lattice_cache();
    }
    return rep;
}

inline SuiteReport prop2_5(const CorpusOptions& opt = {}) {
    SuiteReport rep("prop2.5");
    for (auto& item : ring_corpus(opt)) {
        RingPtr R = item.build();
        auto L = lattice_of(*R);
        for (int i = 0; i < L->proper_count(); ++i) {
            Prop25Result r = prop_2_5_check(R, L->ideals[i], *L);
            rep.add(r.agree(), item.label + " ideal " + ideal_to_string(*R, L->ideals[i]));
        }
        clear_lattice_cache();
    }
    return rep;
}

// Structural facts of section 2 beyond the headline theorems.
inline SuiteReport qmax_extra(const CorpusOptions& opt = {}) {
    SuiteReport rep("qmax-extra");
    for (auto& item : ring_corpus(opt)) {
        RingPtr R = item.build();
        auto L = lattice_of(*R);

        // Prop 2.11 sandwich
        KSandwich ks = k_intersection_and_sandwich(*R, *L);
        rep.add(ks.sandwich_ok, item.label + " K-sandwich");
        // Remark 2.13 finite analogue: probe (and only count) the relative
        // position of K and Nil(R); in a finite ring Nil = J(R), so
        // incomparability cannot occur, and the counter stays zero.
        bool k_in_nil = ks.k.members.is_subset_of(L->nilradical.members);
        bool nil_in_k = L->nilradical.members.is_subset_of(ks.k.members);
        if (!k_in_nil && !nil_in_k) ++rep.counters["K-Nil-incomparable"];

        for (int i = 0; i < L->proper_count(); ++i) {
            const Ideal& I = L->ideals[i];
            QMaxClass c = classify_qmax_by_type(*R, I, *L);
            if (!c.is_qmax()) continue;
            // Remark 2.4(3)
            Ideal rad = radical(*R, I);
            bool ok = ideal_product(*R, rad, rad).members.is_subset_of(I.members) &&
                      classify_qmax_by_type(*R, rad, *L).is_qmax();
            rep.add(ok, item.label + " rem2.4(3) " + ideal_to_string(*R, I));
            // Prop 2.8: R/I Kasch, regular elements of R/I are units
            auto Q = quotient_ring(R, I.members);
            bool kasch = is_kasch(*Q.ring, *lattice_of(*Q.ring));
            Bitset zd = Q.ring->zero_divisors();
            Bitset un = Q.ring->units();
            bool reg_unit = true;
            for (Elem a = 0; a < Q.ring->size(); ++a)
                if (!zd.test(a) && !un.test(a)) reg_unit = false;
            rep.add(kasch && reg_unit, item.label + " prop2.8 " + ideal_to_string(*R, I));
        }

        for (int m : L->maximal_ideals) {
            const Ideal& M = L->ideals[m];
            // Prop 2.9 / Cor 2.20 (finite): exists qmax strictly below M unless R is a field
            auto below = find_qmax_below(*R, M, *L);
            rep.add(below.has_value() != R->is_field(), item.label + " prop2.9 below " +
                                                            ideal_to_string(*R, M));
            // Cor 2.19: ramified strictly below M iff M^2 != M
            Ideal M2 = ideal_product(*R, M, M);
            bool exists_ram = find_ramified_below(*R, M, *L).has_value();
            rep.add(exists_ram == (M2 != M), item.label + " cor2.19 " + ideal_to_string(*R, M));
            // Prop 2.12: for M-primary J strictly below M, some ramified I with J <= I < M
            for (int j = 0; j < L->proper_count(); ++j) {
                const Ideal& J = L->ideals[j];
                if (!J.members.is_proper_subset_of(M.members)) continue;
                if (!is_primary(*R, J) || radical(*R, J) != M) continue;
                bool found = false;
                for (int t = 0; t < L->proper_count() && !found; ++t) {
                    const Ideal& I = L->ideals[t];
                    if (!J.members.is_subset_of(I.members)) continue;
                    if (!I.members.is_proper_subset_of(M.members)) continue;
                    QMaxClass ct = classify_qmax_by_type(*R, I, *L);
                    found = ct.tag == QClass::Ramified;
                }
                rep.add(found, item.label + " prop2.12 J=" + ideal_to_string(*R, J));
            }
        }
        clear_lattice_cache();
    }

    // Prop 2.14 on explicit products
    const std::vector<std::vector<std::string>> prods = {
        {"GF(2)", "GF(2)"},        {"Z/4", "GF(3)"},  {"GF(2)", "GF(2)", "GF(2)"},
        {"Z/4", "Z/9"},            {"Z/6", "GF(5)"},  {"Z/8", "Z/3"},
        {"GF(4)", "Z/4", "GF(3)"}, {"Z/12", "GF(2)"},
    };
    for (auto& fac : prods) {
        std::vector<RingPtr> fs;
        std::string lbl;
        for (auto& f : fac) {
            fs.push_back(corpus_detail::cached_spec(f));
            lbl += (lbl.empty() ? "" : " x ") + f;
        }
        rep.add(prop_2_14_product_check(fs), "prop2.14 " + lbl);
    }
    return rep;
}

// Lattice-level invariants: Prop 2.7, Jordan-Hoelder gradedness, radical
// identities, local-factor reassembly.
inline SuiteReport lattice_extra(const CorpusOptions& opt = {}) {
    SuiteReport rep("lattice-extra");
    for (auto& item : ring_corpus(opt)) {
        RingPtr R = item.build();
        if (R->size() > 64) continue;
        auto L = lattice_of(*R);

        // exhaustive ring-axiom check for every constructed ring (O(n^3))
        if (R->size() <= 40) {
            std::string why;
            rep.add(check_ring_axioms(*R, &why), item.label + " axioms: " + why);
        }

        // Prop 2.7: no prime covers a prime (vacuous unless comparable primes exist)
        for (int p : L->prime_ideals)
            for (int q : L->prime_ideals)
                if (p != q && L->leq(p, q)) {
                    ++rep.counters["comparable-prime-pairs"];
                    rep.add(!L->is_cover(p, q), item.label + " prop2.7");
                }

        // gradedness: length is consistent along every cover (Jordan-Hoelder)
        for (auto [i, j] : L->cover_pairs) {
            int li = (i == L->unit_index) ? 0 : length_of_quotient(*R, L->ideals[i], *L);
            int lj = (j == L->unit_index) ? 0 : length_of_quotient(*R, L->ideals[j], *L);
            rep.add(li == lj + 1, item.label + " graded cover");
        }
        // and, on small lattices, by full enumeration of the maximal chains
        if (L->ideals.size() <= 14) {
            for (int start = 0; start < L->proper_count(); ++start) {
                int want = -1;
                bool equal = true;
                std::function<void(int, int)> walk = [&](int cur, int steps) {
                    if (cur == L->unit_index) {
                        if (want < 0) want = steps;
                        equal = equal && steps == want;
                        return;
                    }
                    L->covers_up[cur].for_each([&](int nxt) { walk(nxt, steps + 1); });
                };
                walk(start, 0);
                rep.add(want >= 1 && equal, item.label + " all-chains-equal");
            }
        }

        // radical identities on ideal pairs
        for (int i = 0; i < static_cast<int>(L->ideals.size()); ++i)
            for (int j = i; j < static_cast<int>(L->ideals.size()); ++j) {
                const Ideal& I = L->ideals[i];
                const Ideal& J = L->ideals[j];
                Ideal rp = radical(*R, ideal_product(*R, I, J));
                Ideal ri = radical(*R, ideal_intersection(*R, I, J));
                rep.add(rp == ri, item.label + " radical(IJ)=radical(I/\\J)");
            }
        // sqrt I via powers = intersection of primes over I
        for (int i = 0; i < L->proper_count(); ++i) {
            Bitset inter(R->size());
            for (Elem a = 0; a < R->size(); ++a) inter.set(a);
            bool any = false;
            for (int p : L->prime_ideals)
                if (L->leq(i, p)) {
                    inter &= L->ideals[p].members;
                    any = true;
                }
            if (!any) continue;
            rep.add(radical(*R, L->ideals[i]).members == inter, item.label + " sqrt=prime-cap");
        }

        // local factor reassembly
        auto lf = local_factors(R);
        if (lf.factors.size() > 1) {
            auto P = make_product(lf.factors);
            rep.add(are_isomorphic(P.ring, R), item.label + " local reassembly iso");
        }
        for (int i = 0; i < static_cast<int>(L->ideals.size()); ++i) {
            long prod = 1;
            bool componentwise = true;
            for (std::size_t f = 0; f < lf.factors.size(); ++f) {
                Bitset img = image_bits(lf.projections[f], L->ideals[i].members);
                prod *= img.count();
                // membership must be componentwise
            }
            componentwise = prod == L->ideals[i].count();
            rep.add(componentwise, item.label + " ideal factorizes");
        }
        clear_lattice_cache();
    }
    return rep;
}

// Criterion 11: sum-closure enumeration vs brute-force subgroup scan.
inline SuiteReport lattice_oracle(const CorpusOptions& opt = {}) {
    SuiteReport rep("lattice-oracle");
    for (auto& item : ring_corpus(opt)) {
        RingPtr R = item.build();
        if (R->size() > 64) continue;
        ++rep.counters["rings"];
        auto L = lattice_of(*R);
        std::vector<Bitset> brute = enumerate_ideals_bruteforce(*R);
        bool ok = brute.size() == L->ideals.size();
        if (ok)
            for (std::size_t k = 0; k < brute.size(); ++k)
                ok = ok && brute[k] == L->ideals[k].members;
        rep.add(ok, item.label + " oracle equivalence");
        clear_lattice_cache();
    }
    return rep;
}

inline SuiteReport thm4_1(const CorpusOptions& opt = {}) {
    SuiteReport rep("thm4.1");
    for (auto& item : extension_corpus(opt)) {
        Extension E = item.build();
        if (E.image.count() == E.S().size()) continue;
        MinimalType mt = classify_minimal(E);
        if (mt.tag == MinimalTag::NotMinimal) {
            ++rep.counters["not-minimal"];
            continue;
        }
        ++rep.counters["minimal"];
        ++rep.counters[std::string("type-") + minimal_tag_name(mt.tag)];
        rep.add(thm_4_1_check(E, mt), item.label);
        clear_lattice_cache();
    }
    for (auto& item : prop_4_13_corpus()) {
        Extension E = item.build();
        MinimalType mt = classify_minimal(E);
        if (mt.tag == MinimalTag::NotMinimal) continue;
        ++rep.counters["minimal"];
        ++rep.counters[std::string("type-") + minimal_tag_name(mt.tag)];
        rep.add(thm_4_1_check(E, mt), item.label);
        clear_lattice_cache();
    }
    return rep;
}

inline SuiteReport thm4_15(const CorpusOptions& opt = {}) {
    SuiteReport rep("thm4.15");
    for (auto& item : ring_corpus(opt)) {
        RingPtr S = item.build();
        if (S->size() > 64) continue;
        auto L = lattice_of(*S);
        for (int i = 0; i < L->proper_count(); ++i) {
            const Ideal& I = L->ideals[i];
            if (!classify_qmax_by_type(*S, I, *L).is_qmax()) continue;
            ++rep.counters["qmax-ideals"];
            try {
                BuildResult br = build_minimal_from_qmax(S, I);
                if (br.ext) {
                    ++rep.counters["built"];
                    rep.add(true, "");
                } else {
                    ++rep.counters["declined:" + br.failed_condition];
                    bool named = br.failed_condition == "no maximal subfield" ||
                                 br.failed_condition == "residue-field mismatch" ||
                                 br.failed_condition == "characteristic mismatch";
                    rep.add(named, item.label + " " + ideal_to_string(*S, I) + " -> " +
                                       br.failed_condition);
                }
            } catch (const std::exception& e) {
                rep.add(false,
                        item.label + " " + ideal_to_string(*S, I) + " threw: " + e.what());
            }
        }
        clear_lattice_cache();
    }
    return rep;
}

inline SuiteReport sec5(const CorpusOptions& opt = {}) {
    SuiteReport rep("sec5");
    for (auto& item : ring_corpus(opt)) {
        RingPtr R = item.build();
        auto L = lattice_of(*R);
        for (int i = 0; i < L->proper_count(); ++i) {
            const Ideal& I = L->ideals[i];
            QMaxClass c = classify_qmax_by_type(*R, I, *L);
            // qmax => 2-absorbing
            if (c.is_qmax()) {
                ++rep.counters["qmax-ideals"];
                rep.add(is_two_absorbing(*R, I).ok,
                        item.label + " qmax=>2abs " + ideal_to_string(*R, I));
                // Badawi structure must resolve
                badawi_structure(*R, I, *L);
            }
            // Thm 5.2 agreement, both sides independent
            rep.add(theorem_5_2_check(R, I, *L).agree(),
                    item.label + " thm5.2 " + ideal_to_string(*R, I));
        }
        // Cor 5.4 for every maximal with M^2 != M
        for (int m : L->maximal_ideals) {
            const Ideal& M = L->ideals[m];
            if (ideal_product(*R, M, M) == M) continue;
            ++rep.counters["cor5.4-instances"];
            rep.add(cor_5_4_check(R, M, *L).agree(), item.label + " cor5.4 " +
                                                         ideal_to_string(*R, M));
        }
        clear_lattice_cache();
    }
    // Cor 5.6(1) over Z, desk scale
    for (long n = 2; n <= 500; ++n) {
        ZClassification zc = classify_z_ideal(n);
        bool brute_two_abs = !z_two_absorbing_violation(n).has_value();
        bool ok = z_crosscheck(n) && brute_two_abs == zc.two_absorbing;
        rep.add(ok, "Z-ideal (" + std::to_string(n) + ")");
        ++rep.counters["z-ideals"];
        if (n % 50 == 0) clear_lattice_cache();
    }
    clear_lattice_cache();
    // Prop 5.5 instance
    rep.add(prop_5_5_witness(50).all_pass, "prop5.5 bound 50");
    clear_lattice_cache();
    return rep;
}

inline SuiteReport appendix(const CorpusOptions& opt = {}) {
    SuiteReport rep("appendix");
    for (auto& item : ring_corpus(opt)) {
        RingPtr R = item.build();
        auto L = lattice_of(*R);
        auto lf = local_factors(R);
        for (int i = 0; i < L->proper_count(); ++i) {
            const Ideal& I = L->ideals[i];
            LambdaSet lam = lambda_set(*R, I);
            rep.add(lambda_invariants_hold(R, I, lam),
                    item.label + " lambda-invariants " + ideal_to_string(*R, I));
            QMaxClass c = classify_qmax_by_type(*R, I, *L);
            if (c.is_qmax()) {
                // Prop 2.82 closed forms
                Bitset want(R->size());
                if (c.tag == QClass::Decomposed) {
                    Bitset uni = c.m1->members | c.m2->members;
                    for (Elem a = 0; a < R->size(); ++a)
                        if (!uni.test(a)) want.set(a);
                } else {
                    const Ideal& M = c.tag == QClass::Inert ? I : *c.m1;
                    for (Elem a = 0; a < R->size(); ++a)
                        if (!M.contains(a)) want.set(a);
                }
                rep.add(lam.members == want, item.label + " prop2.82 " + ideal_to_string(*R, I));
                // Prop 2.87 / Remark 2.88(1)
                if (c.tag == QClass::Decomposed)
                    rep.add(is_semi_primal(*R, I, *L),
                            item.label + " rem2.88 " + ideal_to_string(*R, I));
                else
                    rep.add(is_primal(*R, I), item.label + " prop2.87 " + ideal_to_string(*R, I));
                // Cor 2.83 / Cor 5.3 colon behavior for submaximal quasi-maximal
                if (c.tag != QClass::Inert)
                    rep.add(colon_behavior_check(*R, I, *L),
                            item.label + " colon-behavior " + ideal_to_string(*R, I));
            }
            // Remark 6.1: 2-absorbing with I != sqrt I is primal
            if (radical(*R, I) != I && is_two_absorbing(*R, I).ok)
                rep.add(is_primal(*R, I), item.label + " rem6.1 " + ideal_to_string(*R, I));
            // Cor 5.12(1): M-primary I is 2-absorbing iff its local image is
            if (is_primary(*R, I)) {
                Ideal M = radical(*R, I);
                int mi = L->index_of_checked(M);
                if (L->is_maximal_index(mi)) {
                    int fi = lf.factor_of_maximal(*R, M);
                    const Ring& F = *lf.factors[fi];
                    Ideal IM{F.id(), image_bits(lf.projections[fi], I.members)};
                    if (is_proper(F, IM)) {
                        bool lhs = is_two_absorbing(*R, I).ok;
                        bool rhs = is_two_absorbing(F, IM).ok;
                        rep.add(lhs == rhs, item.label + " cor5.12 " + ideal_to_string(*R, I));
                        ++rep.counters["cor5.12-instances"];
                    }
                }
            }
        }
        clear_lattice_cache();
    }
    // Props 2.84-2.86 across morphisms
    for (auto& m : map_corpus(opt)) {
        RingMap f = m.build();
        auto LT = lattice_of(*f.target);
        int taken = 0;
        for (int j = 0; j < LT->proper_count() && taken < 4; ++j) {
            const Ideal& J = LT->ideals[j];
            Ideal I = contract_along(f, J);
            if (!is_proper(*f.source, I)) continue;
            ++taken;
            ++rep.counters[m.surjective ? "surjection-instances" : "inclusion-instances"];
            LambdaMorphismReport r = lambda_morphism_checks(f, J);
            rep.add(r.all_ok(), m.label + " J=" + ideal_to_string(*f.target, J));
        }
        ++rep.counters[m.surjective ? "surjections" : "inclusions"];
        clear_lattice_cache();
    }
    return rep;
}

// Criterion 8: Example 4.22 end to end.
inline SuiteReport ex4_22(const CorpusOptions& = {}) {
    SuiteReport rep("ex4.22");
    for (const std::string k : {"GF(2)", "GF(3)"}) {
        RingPtr T = corpus_detail::cached_spec("mvq(" + k + ", x^2, y^2, xy)");
        RingPtr kf = corpus_detail::cached_spec(k);
        long q = kf->size();
        rep.add(T->size() == q * q * q, k + ": |T| = q^3");

        Elem x = parse_element(*T, "x");
        Elem y = parse_element(*T, "y");
        Extension RinT = extension_from_subring(T, subring_closure(*T, {x}));
        Extension SinT = extension_from_subring(T, subring_closure(*T, {y}));
        rep.add(RinT.R().size() == q * q && SinT.R().size() == q * q, k + ": |R| = |S| = q^2");

        // 0 is ramified quasi-maximal in R and in S
        for (auto* Ep : {&RinT, &SinT}) {
            const Ring& Rr = Ep->R();
            QMaxClass c = classify_qmax(Rr, zero_ideal(Rr), *lattice_of(Rr));
            rep.add(c.tag == QClass::Ramified, k + ": 0 in Q_rMax of coordinate subring");
        }
        // the four minimal ramified extensions: k < R, k < S, R < T, S < T
        Extension kR = subring_generated(RinT.Rp(), {});
        Extension kS = subring_generated(SinT.Rp(), {});
        for (auto* Ep : {&kR, &kS, &RinT, &SinT}) {
            MinimalType mt = classify_minimal(*Ep);
            rep.add(mt.tag == MinimalTag::Ramified, k + ": minimal ramified leg");
        }
        // conductors: (k:R) = (k:S) = 0; (R:T) = M = kx, (S:T) = N = ky
        rep.add(kR.conductor.count() == 1 && kS.conductor.count() == 1,
                k + ": (k:R) = (k:S) = 0");
        Ideal Mx = ideal_generated_by(*T, {x});
        Ideal Ny = ideal_generated_by(*T, {y});
        rep.add(RinT.conductor == Mx && SinT.conductor == Ny, k + ": (R:T)=kx, (S:T)=ky");
        // M, N in Q_rMax(T); 0 not in QMax(T)
        auto LT = lattice_of(*T);
        rep.add(classify_qmax(*T, Mx, *LT).tag == QClass::Ramified, k + ": M in Q_rMax(T)");
        rep.add(classify_qmax(*T, Ny, *LT).tag == QClass::Ramified, k + ": N in Q_rMax(T)");
        rep.add(!classify_qmax(*T, zero_ideal(*T), *LT).is_qmax(), k + ": 0 not in QMax(T)");
        clear_lattice_cache();
    }
    return rep;
}

inline SuiteReport transfer(const CorpusOptions& opt = {},
                            const std::string& prop_filter = "") {
    SuiteReport rep("transfer");
    auto want = [&](const std::string& p) {
        return prop_filter.empty() || p.find(prop_filter) != std::string::npos;
    };
    for (auto& item : extension_corpus(opt)) {
        Extension E = item.build();
        if (E.image.count() == E.S().size()) continue;
        for (const PropInstance& pi : transfer_suite(E))
            if (want(pi.prop)) rep.add(pi);
        if (E.S().size() <= Limits::global().max_intermediate_ring_size) {
            if (auto pi = prop_4_6_check(E); pi && want(pi->prop)) rep.add(*pi);
            if (auto pi = prop_4_7_check(E); pi && want(pi->prop)) rep.add(*pi);
        }
        clear_lattice_cache();
    }
    // ring-level localization transfers
    for (const std::string rs :
         {"Z/12", "Z/30", "Z/8", "Z/36", "Z/24", "GF(2) x GF(2)", "Z/4 x GF(3)", "Z/60",
          "Z/9", "poly(Z/2, x^3)", "Z/49", "mvq(GF(2), x^2, y^2, xy)"}) {
        RingPtr R = corpus_detail::cached_spec(rs);
        for (const PropInstance& pi : prop_3_161_check(R))
            if (want(pi.prop)) rep.add(pi);
        for (const PropInstance& pi : prop_2_18_check(R))
            if (want(pi.prop)) rep.add(pi);
        clear_lattice_cache();
    }
    // Cor 3.7 idealization retracts
    for (const std::string rs : {"Z/4", "Z/9", "GF(2)", "GF(3)", "Z/6", "Z/12", "Z/8"}) {
        RingPtr R = corpus_detail::cached_spec(rs);
        auto L = lattice_of(*R);
        for (std::size_t ii = 1; ii < L->ideals.size(); ++ii) {
            const Ideal& Eid = L->ideals[ii];
            if (R->size() * Eid.count() > 64) continue;
            for (const PropInstance& pi : retract_transfer_check(R, Eid))
                if (want(pi.prop)) rep.add(pi);
        }
        clear_lattice_cache();
    }
    // Prop 3.11 monic quotients over local rings
    const std::pair<const char*, const char*> monics[] = {
        {"Z/4", "x^2+x+1"}, {"GF(2)", "x^2+x+1"}, {"Z/4", "x^2"},   {"GF(3)", "x^2+1"},
        {"Z/9", "x^2+1"},   {"GF(2)", "x^2"},     {"GF(5)", "x^2"}, {"Z/8", "x^2+x+1"},
        {"poly(Z/2, x^2)", "y^2+y+1"}, {"GF(4)", "y^2+y+x"}};
    for (auto [rs, f] : monics) {
        RingPtr R = corpus_detail::cached_spec(rs);
        for (const PropInstance& pi :
             monic_quotient_transfer_check(R, parse_detail::parse_monic(*R, f)))
            if (want(pi.prop)) rep.add(pi);
        clear_lattice_cache();
    }
    // Thm 4.62 over the extension corpus (small ambients)
    for (auto& item : extension_corpus(opt)) {
        Extension E = item.build();
        if (E.image.count() == E.S().size()) continue;
        if (E.S().size() > Limits::global().max_intermediate_ring_size) continue;
        if (!is_proper(E.S(), E.conductor) || E.conductor.members == E.image) continue;
        if (want("thm4.62")) {
            Thm462Report r = thm_4_62_check(E);
            PropInstance pi{"thm4.62", item.label,
                            r.ok() ? CheckStatus::Pass : CheckStatus::Fail, ""};
            rep.add(pi);
        }
        clear_lattice_cache();
    }
    return rep;
}

// Criterion 10: Prop 4.13 dichotomy.
inline SuiteReport prop4_13(const CorpusOptions& = {}) {
    SuiteReport rep("prop4.13");
    for (auto& item : prop_4_13_corpus()) {
        Extension E = item.build();
        MinimalType mt = classify_minimal(E);
        bool pre = mt.tag == MinimalTag::Ramified;
        Ideal I = zero_ideal(E.R());
        pre = pre && classify_qmax_by_type(E.R(), I, *lattice_of(E.R())).tag == QClass::Ramified;
        pre = pre && is_shared_ideal(E, I);
        if (!pre) {
            rep.add(false, item.label + " precondition");
            continue;
        }
        ++rep.counters["instances"];
        auto lying = find_qmax_lying_over(E, I);
        RamifiedQuotientType t = classify_ramified_quotient(E, I);
        bool ok = lying.empty() == !t.idealization_type;
        ++rep.counters[t.idealization_type ? "type-star" : "type-2"];
        rep.add(ok, item.label + " (" + t.detail + ", lifts=" +
                        std::to_string(lying.size()) + ")");
        clear_lattice_cache();
    }
    return rep;
}

}  // namespace suites

inline std::vector<std::string> suite_names() {
    return {"thm2.3",  "thm2.6",   "prop2.5",  "qmax-extra", "lattice-extra",
            "lattice-oracle", "thm4.1",   "thm4.15",  "sec5",       "appendix",
            "ex4.22",  "transfer", "prop4.13"};
}

inline SuiteReport run_suite(const std::string& name, const CorpusOptions& opt = {},
                             const std::string& prop_filter = "") {
    if (name == "thm2.3") return suites::thm2_3(opt);
    if (name == "thm2.6") return suites::thm2_6(opt);
    if (name == "prop2.5") return suites::prop2_5(opt);
    if (name == "qmax-extra") return suites::qmax_extra(opt);
    if (name == "lattice-extra") return suites::lattice_extra(opt);
    if (name == "lattice-oracle") return suites::lattice_oracle(opt);
    if (name == "thm4.1") return suites::thm4_1(opt);
    if (name == "thm4.15") return suites::thm4_15(opt);
    if (name == "sec5") return suites::sec5(opt);
    if (name == "appendix") return suites::appendix(opt);
    if (name == "ex4.22") return suites::ex4_22(opt);
    if (name == "transfer") return suites::transfer(opt, prop_filter);
    if (name == "prop4.13") return suites::prop4_13(opt);
    throw invalid_parameter("unknown suite: " + name);
}

}  // namespace qmax
