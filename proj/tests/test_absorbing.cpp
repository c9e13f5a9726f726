#include <catch2/catch_amalgamated.hpp>

#include "qmax/absorbing.hpp"
#include "qmax/spec_parse.hpp"

using namespace qmax;

namespace {
Ideal zp(const Ring& R, int a) { return principal_ideal(R, a); }
}  // namespace

TEST_CASE("2-absorbing triples", "[absorbing]") {
    auto z30 = make_zmod(30);
    auto t = is_two_absorbing(*z30, zero_ideal(*z30));
    REQUIRE_FALSE(t.ok);
    REQUIRE(*t.triple == std::array<Elem, 3>{2, 3, 5});

    auto z8 = make_zmod(8);
    REQUIRE(is_two_absorbing(*z8, zp(*z8, 4)).ok);
    auto z12 = make_zmod(12);
    REQUIRE(is_two_absorbing(*z12, zp(*z12, 6)).ok);
    REQUIRE_THROWS_AS(is_two_absorbing(*z8, unit_ideal(*z8)), invalid_parameter);
}

TEST_CASE("Badawi structure dichotomy", "[absorbing]") {
    auto z8 = make_zmod(8);
    auto L8 = lattice_of(*z8);
    AbsorbStructure a = badawi_structure(*z8, zp(*z8, 4), *L8);
    REQUIRE(a.case_a);
    REQUIRE(a.p1 == zp(*z8, 2));

    auto z12 = make_zmod(12);
    auto L12 = lattice_of(*z12);
    AbsorbStructure b = badawi_structure(*z12, zp(*z12, 6), *L12);
    REQUIRE_FALSE(b.case_a);
    REQUIRE(b.p2.has_value());

    AbsorbStructure m = badawi_structure(*z12, zp(*z12, 2), *L12);
    REQUIRE(m.case_a);
    REQUIRE(m.p1 == zp(*z12, 2));

    auto z30 = make_zmod(30);
    REQUIRE_THROWS_AS(badawi_structure(*z30, zero_ideal(*z30), *lattice_of(*z30)),
                      precondition_violation);
}

TEST_CASE("Theorem 5.2 both sides", "[absorbing]") {
    auto cube = make_poly_quotient(make_zmod(2), {0, 0, 0, 1}).ring;
    auto Lc = lattice_of(*cube);
    // (x,x,x): x^3 = 0 but x^2 not in (0): not 2-absorbing
    auto t = is_two_absorbing(*cube, zero_ideal(*cube));
    REQUIRE_FALSE(t.ok);
    Theorem52Result r = theorem_5_2_check(cube, zero_ideal(*cube), *Lc);
    REQUIRE_FALSE(r.left);
    REQUIRE_FALSE(r.right);

    auto z8 = make_zmod(8);
    Theorem52Result r2 = theorem_5_2_check(z8, zp(*z8, 4), *lattice_of(*z8));
    REQUIRE(r2.left);
    REQUIRE(r2.right);

    auto z30 = make_zmod(30);
    Theorem52Result r3 = theorem_5_2_check(z30, zp(*z30, 6), *lattice_of(*z30));
    REQUIRE(r3.left);
    REQUIRE(r3.right);
}

TEST_CASE("Cor 5.4 three-way equivalence", "[absorbing]") {
    auto z8 = make_zmod(8);
    Cor54Result a = cor_5_4_check(z8, zp(*z8, 2), *lattice_of(*z8));
    REQUIRE(a.agree());
    REQUIRE(a.m2_qmax);

    auto T = parse_ring_spec("mvq(GF(2), x^2, y^2, xy)");
    auto LT = lattice_of(*T);
    const Ideal& P = LT->ideals[LT->maximal_ideals[0]];
    Cor54Result b = cor_5_4_check(T, P, *LT);
    REQUIRE(b.agree());
    REQUIRE_FALSE(b.m2_qmax);  // M/M^2 is 2-dimensional

    auto z9 = make_zmod(9);
    Cor54Result c = cor_5_4_check(z9, zp(*z9, 3), *lattice_of(*z9));
    REQUIRE(c.agree());
    REQUIRE(c.m2_qmax);

    // precondition: M^2 != M
    auto p22 = make_product({make_gf(2, 1), make_gf(2, 1)});
    auto L22 = lattice_of(*p22.ring);
    REQUIRE_THROWS_AS(cor_5_4_check(p22.ring, L22->ideals[L22->maximal_ideals[0]], *L22),
                      precondition_violation);
}

TEST_CASE("Lambda sets and their closed forms", "[absorbing]") {
    auto z30 = make_zmod(30);
    LambdaSet lam = lambda_set(*z30, zp(*z30, 6));
    for (Elem x = 0; x < 30; ++x) {
        bool coprime_to_6 = (x % 2 != 0) && (x % 3 != 0);
        REQUIRE(lam.members.test(x) == coprime_to_6);
    }
    REQUIRE(lambda_invariants_hold(z30, zp(*z30, 6), lam));

    auto z8 = make_zmod(8);
    LambdaSet lam8 = lambda_set(*z8, zp(*z8, 4));
    for (Elem x = 0; x < 8; ++x) REQUIRE(lam8.members.test(x) == (x % 2 == 1));

    LambdaSet lamM = lambda_set(*z8, zp(*z8, 2));  // maximal ideal
    for (Elem x = 0; x < 8; ++x) REQUIRE(lamM.members.test(x) == (x % 2 == 1));
}

TEST_CASE("primal and semi-primal", "[absorbing]") {
    auto z8 = make_zmod(8);
    REQUIRE(is_primal(*z8, zp(*z8, 4)));

    auto z30 = make_zmod(30);
    auto L30 = lattice_of(*z30);
    REQUIRE_FALSE(is_primal(*z30, zp(*z30, 6)));
    REQUIRE(is_semi_primal(*z30, zp(*z30, 6), *L30));

    auto cube = make_poly_quotient(make_zmod(2), {0, 0, 0, 1}).ring;
    REQUIRE(is_primal(*cube, zero_ideal(*cube)));  // Z(R) = (x)
}

TEST_CASE("colon behavior per Cor 2.83 and Cor 5.3", "[absorbing]") {
    auto z8 = make_zmod(8);
    REQUIRE(colon_behavior_check(*z8, zp(*z8, 4), *lattice_of(*z8)));
    REQUIRE(colon_by_element(*z8, zp(*z8, 4), 2) == zp(*z8, 2));  // Cor 5.3 instance

    auto z30 = make_zmod(30);
    REQUIRE(colon_behavior_check(*z30, zp(*z30, 6), *lattice_of(*z30)));
    REQUIRE(colon_by_element(*z30, zp(*z30, 6), 3) == zp(*z30, 2));
    REQUIRE(colon_by_element(*z30, zp(*z30, 6), 7) == zp(*z30, 6));

    REQUIRE_THROWS_AS(colon_behavior_check(*z8, zp(*z8, 2), *lattice_of(*z8)),
                      precondition_violation);  // inert, not submaximal
}

TEST_CASE("Lambda along morphisms", "[absorbing]") {
    auto z12 = make_zmod(12);
    auto q = quotient_ring(z12, principal_ideal(*z12, 6).members);  // -> Z/6-like
    const Ring& Q = *q.ring;
    Ideal j2 = principal_ideal(Q, q.surjection.image[2]);
    LambdaMorphismReport r = lambda_morphism_checks(q.surjection, j2);
    REQUIRE(r.containment);
    REQUIRE(r.equality_if_surjective);
    REQUIRE(r.colon_preimage);
    REQUIRE(r.max_upper_equality);

    auto f2 = make_gf(2, 1);
    auto f4 = make_gf(2, 2);
    auto emb = find_embedding(f2, f4);
    LambdaMorphismReport r2 = lambda_morphism_checks(*emb, zero_ideal(*f4));
    REQUIRE(r2.all_ok());

    auto z4 = make_zmod(4);
    auto idz = make_idealization(z4, principal_ideal(*z4, 2).members);
    Bitset kerb = idz.retraction.preimage(zero_ideal(*z4).members);
    LambdaMorphismReport r3 = lambda_morphism_checks(idz.inclusion, Ideal{idz.ring->id(), kerb});
    REQUIRE(r3.containment);
    REQUIRE(r3.colon_preimage);
    REQUIRE(r3.max_upper_equality);
}
