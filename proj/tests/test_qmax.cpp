#include <catch2/catch_amalgamated.hpp>

#include "qmax/qmax.hpp"
#include "qmax/spec_parse.hpp"

using namespace qmax;

namespace {
Ideal zp(const Ring& R, int a) { return principal_ideal(R, a); }
}  // namespace

TEST_CASE("the defining property", "[qmax]") {
    auto z8 = make_zmod(8);
    auto L8 = lattice_of(*z8);
    REQUIRE(is_qmax_definition(*z8, zp(*z8, 4), *L8).qmax);

    auto z30 = make_zmod(30);
    auto L30 = lattice_of(*z30);
    auto d = is_qmax_definition(*z30, zero_ideal(*z30), *L30);
    REQUIRE_FALSE(d.qmax);
    REQUIRE(d.violator.has_value());
    // the witness really falsifies the definition
    Ideal J = ideal_plus_principal(*z30, zero_ideal(*z30), *d.violator);
    REQUIRE(is_proper(*z30, J));
    REQUIRE_FALSE(is_maximal(*z30, J, *L30));

    REQUIRE(is_qmax_definition(*z8, zp(*z8, 2), *L8).qmax);  // maximal
    REQUIRE_THROWS_AS(is_qmax_definition(*z8, unit_ideal(*z8), *L8), invalid_parameter);
}

TEST_CASE("classification with witnesses", "[qmax]") {
    auto z12 = make_zmod(12);
    auto L12 = lattice_of(*z12);
    QMaxClass c = classify_qmax(*z12, zp(*z12, 6), *L12);
    REQUIRE(c.tag == QClass::Decomposed);
    REQUIRE((c.m1->members & c.m2->members) == zp(*z12, 6).members);
    REQUIRE(c.m1->members != c.m2->members);

    auto z8 = make_zmod(8);
    QMaxClass r = classify_qmax(*z8, zp(*z8, 4), *lattice_of(*z8));
    REQUIRE(r.tag == QClass::Ramified);
    REQUIRE(r.m1->members == zp(*z8, 2).members);
    Ideal m2 = ideal_product(*z8, *r.m1, *r.m1);
    REQUIRE(m2.members.is_subset_of(zp(*z8, 4).members));

    auto T = parse_ring_spec("mvq(GF(2), x^2, y^2, xy)");
    QMaxClass n = classify_qmax(*T, zero_ideal(*T), *lattice_of(*T));
    REQUIRE(n.tag == QClass::None);
    REQUIRE(n.violator.has_value());
}

TEST_CASE("submaximality", "[qmax]") {
    auto z8 = make_zmod(8);
    auto L = lattice_of(*z8);
    REQUIRE(is_submaximal(*z8, zp(*z8, 4), *L));
    REQUIRE_FALSE(is_submaximal(*z8, zp(*z8, 2), *L));  // maximal, not submaximal
    REQUIRE_FALSE(is_submaximal(*z8, zero_ideal(*z8), *L));
}

TEST_CASE("Theorem 2.3 report", "[qmax]") {
    auto z12 = make_zmod(12);
    auto L12 = lattice_of(*z12);
    Theorem23Report a = theorem_2_3_report(z12, zp(*z12, 6), *L12);
    REQUIRE(a.all_agree());
    REQUIRE(a.value());
    REQUIRE(a.o_count == 3);
    REQUIRE(maximals_over(zp(*z12, 6), *L12).size() == 2);

    auto z8 = make_zmod(8);
    Theorem23Report b = theorem_2_3_report(z8, zero_ideal(*z8), *lattice_of(*z8));
    REQUIRE(b.all_agree());
    REQUIRE_FALSE(b.value());
    REQUIRE(b.o_count == 3);  // (0),(4),(2) -- but only one maximal, so c6 fails

    auto f4 = make_gf(2, 2);
    Theorem23Report c = theorem_2_3_report(f4, zero_ideal(*f4), *lattice_of(*f4));
    REQUIRE(c.all_agree());
    REQUIRE(c.value());
    REQUIRE(c.o_quotient == 1);
}

TEST_CASE("SPIR detection", "[qmax]") {
    auto z8 = make_zmod(8);
    auto sp = is_spir(*z8, *lattice_of(*z8));
    REQUIRE(sp.has_value());
    REQUIRE(sp->generator == 2);
    REQUIRE(sp->nilpotency_index == 3);

    auto dual = make_poly_quotient(make_zmod(2), {0, 0, 1});
    auto sd = is_spir(*dual.ring, *lattice_of(*dual.ring));
    REQUIRE(sd.has_value());
    REQUIRE(sd->generator == dual.var);
    REQUIRE(sd->nilpotency_index == 2);

    REQUIRE_FALSE(is_spir(*make_zmod(12), *lattice_of(*make_zmod(12))).has_value());
    // fields carry no nonzero prime, so they are not SPIRs here
    REQUIRE_FALSE(is_spir(*make_gf(5, 1), *lattice_of(*make_gf(5, 1))).has_value());
}

TEST_CASE("Prop 2.5 agreement", "[qmax]") {
    auto z8 = make_zmod(8);
    auto r1 = prop_2_5_check(z8, zp(*z8, 4), *lattice_of(*z8));
    REQUIRE(r1.ramified);
    REQUIRE(r1.spir_index2);

    auto z12 = make_zmod(12);
    auto r2 = prop_2_5_check(z12, zp(*z12, 6), *lattice_of(*z12));
    REQUIRE_FALSE(r2.ramified);
    REQUIRE_FALSE(r2.spir_index2);

    auto z16 = make_zmod(16);
    auto r3 = prop_2_5_check(z16, zp(*z16, 4), *lattice_of(*z16));
    REQUIRE(r3.agree());
    REQUIRE(r3.ramified);  // (4) under (2), with (2)^2 = (4)
}

TEST_CASE("Kasch rings", "[qmax]") {
    auto z6 = make_zmod(6);
    REQUIRE(is_kasch(*z6, *lattice_of(*z6)));
    REQUIRE(annihilator(*z6, 3) == zp(*z6, 2));
    REQUIRE(annihilator(*z6, 2) == zp(*z6, 3));

    // Remark 2.81 pattern: F2[x]/(x^3) is Kasch but 0 is not quasi-maximal
    auto cube = make_poly_quotient(make_zmod(2), {0, 0, 0, 1}).ring;
    auto L = lattice_of(*cube);
    REQUIRE(is_kasch(*cube, *L));
    REQUIRE_FALSE(is_qmax_definition(*cube, zero_ideal(*cube), *L).qmax);
}

TEST_CASE("qmax_all over sample rings", "[qmax]") {
    auto z12 = make_zmod(12);
    auto all12 = qmax_all(*z12, *lattice_of(*z12));
    std::vector<int> gens;
    for (auto& [I, c] : all12)
        if (c.is_qmax()) gens.push_back(I.members.members()[1]);  // second-least member
    std::sort(gens.begin(), gens.end());
    REQUIRE(gens == std::vector<int>{2, 3, 4, 6});

    auto f9 = make_gf(3, 2);
    auto allf = qmax_all(*f9, *lattice_of(*f9));
    REQUIRE(allf.size() == 1);
    REQUIRE(allf[0].second.tag == QClass::Inert);

    auto z30 = make_zmod(30);
    int qcount = 0;
    for (auto& [I, c] : qmax_all(*z30, *lattice_of(*z30)))
        if (c.is_qmax()) ++qcount;
    REQUIRE(qcount == 6);  // (2),(3),(5),(6),(10),(15)
}

TEST_CASE("K intersection and the radical sandwich", "[qmax]") {
    auto z12 = make_zmod(12);
    auto ks = k_intersection_and_sandwich(*z12, *lattice_of(*z12));
    REQUIRE(ks.sandwich_ok);
    REQUIRE(ks.k == zero_ideal(*z12));

    auto f5 = make_gf(5, 1);
    auto ksf = k_intersection_and_sandwich(*f5, *lattice_of(*f5));
    REQUIRE(ksf.sandwich_ok);
    REQUIRE(ksf.k == zero_ideal(*f5));

    auto cube = make_poly_quotient(make_zmod(2), {0, 0, 0, 1}).ring;
    auto ksc = k_intersection_and_sandwich(*cube, *lattice_of(*cube));
    REQUIRE(ksc.sandwich_ok);
    REQUIRE(ksc.k.count() == 2);  // (x^2)
}

TEST_CASE("existence searches below a maximal ideal", "[qmax]") {
    auto z8 = make_zmod(8);
    auto L8 = lattice_of(*z8);
    auto below = find_qmax_below(*z8, zp(*z8, 2), *L8);
    REQUIRE(below.has_value());
    REQUIRE(*below == zp(*z8, 4));

    auto p22 = make_product({make_gf(2, 1), make_gf(2, 1)});
    auto L22 = lattice_of(*p22.ring);
    const Ideal& M = L22->ideals[L22->maximal_ideals[0]];
    auto b2 = find_qmax_below(*p22.ring, M, *L22);
    REQUIRE(b2.has_value());
    REQUIRE(b2->count() == 1);  // (0), decomposed

    auto f4 = make_gf(2, 2);
    REQUIRE_FALSE(find_qmax_below(*f4, zero_ideal(*f4), *lattice_of(*f4)).has_value());

    // Cor 2.19 variant
    REQUIRE(find_ramified_below(*z8, zp(*z8, 2), *L8).has_value());
    REQUIRE_FALSE(
        find_ramified_below(*p22.ring, M, *L22).has_value());  // M^2 = M in a product of fields
}

TEST_CASE("Prop 2.14 product shapes", "[qmax]") {
    REQUIRE(prop_2_14_product_check({make_gf(2, 1), make_gf(2, 1)}));
    REQUIRE(prop_2_14_product_check({make_zmod(4), make_gf(3, 1)}));
    REQUIRE(prop_2_14_product_check({make_zmod(6), make_zmod(10)}));
    REQUIRE_THROWS_AS(prop_2_14_product_check({make_zmod(4)}), invalid_parameter);
}
