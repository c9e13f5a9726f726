#include <catch2/catch_amalgamated.hpp>

#include "qmax/lattice.hpp"
#include "qmax/qmax.hpp"
#include "qmax/ring.hpp"
#include "qmax/spec_parse.hpp"

using namespace qmax;

TEST_CASE("zmod basics", "[ring]") {
    auto z6 = make_zmod(6);
    REQUIRE(z6->size() == 6);
    REQUIRE(z6->mul(2, 3) == 0);
    REQUIRE(z6->characteristic() == 6);

    auto z2 = make_zmod(2);
    REQUIRE(z2->is_field());
    REQUIRE(z2->units().count() == 1);
    REQUIRE(z2->units().test(1));

    REQUIRE_THROWS_AS(make_zmod(1), invalid_parameter);
    REQUIRE_THROWS_AS(make_zmod(0), invalid_parameter);
}

TEST_CASE("Z/30 has three maximal ideals over (0)", "[ring]") {
    auto R = make_zmod(30);
    auto L = lattice_of(*R);
    REQUIRE(L->maximal_ideals.size() == 3);
    // every maximal contains (0), trivially: the zero ideal lies under all three
    REQUIRE(maximals_over(zero_ideal(*R), *L).size() == 3);
}

TEST_CASE("ring axioms hold exhaustively for constructed rings", "[ring]") {
    for (const char* spec : {"Z/12", "Z/9"}) {
        (void)spec;
    }
    std::string why;
    REQUIRE(check_ring_axioms(*make_zmod(12), &why));
    REQUIRE(check_ring_axioms(*make_gf(2, 2), &why));
    REQUIRE(check_ring_axioms(*make_gf(3, 2), &why));
    REQUIRE(check_ring_axioms(*make_poly_quotient(make_zmod(4), {0, 0, 1}).ring, &why));
    REQUIRE(check_ring_axioms(*make_product({make_zmod(4), make_zmod(3)}).ring, &why));
    auto z4 = make_zmod(4);
    REQUIRE(check_ring_axioms(*make_idealization(z4, principal_ideal(*z4, 2).members).ring,
                              &why));
}

TEST_CASE("poly quotient: GF(4), nilpotents, inclusion certification", "[ring]") {
    auto gf4 = make_poly_quotient(make_zmod(2), {1, 1, 1});  // x^2+x+1
    REQUIRE(gf4.ring->size() == 4);
    REQUIRE(gf4.ring->is_field());

    auto dual = make_poly_quotient(make_zmod(2), {0, 0, 1});  // x^2
    REQUIRE(dual.ring->size() == 4);
    REQUIRE_FALSE(dual.ring->is_field());
    auto sp = is_spir(*dual.ring, *lattice_of(*dual.ring));
    REQUIRE(sp.has_value());
    REQUIRE(sp->nilpotency_index == 2);

    auto big = make_poly_quotient(make_zmod(4), {0, 0, 1});  // Z/4[x]/(x^2)
    REQUIRE(big.ring->size() == 16);
    REQUIRE(big.inclusion.is_homomorphism());
    REQUIRE(big.inclusion.is_injective());

    REQUIRE_THROWS_AS(make_poly_quotient(make_zmod(4), {0, 0, 2}), invalid_parameter);
    Limits tight;
    tight.max_ring_size = 8;
    REQUIRE_THROWS_AS(make_poly_quotient(make_zmod(4), {0, 0, 1}, tight), resource_limit);
}

TEST_CASE("multivariate quotient: the k[X,Y]/(X^2,Y^2,XY) family", "[ring]") {
    auto T2 = make_multivariate_quotient_text(make_gf(2, 1), {"x^2", "y^2", "x*y"});
    REQUIRE(T2->size() == 8);
    auto L2 = lattice_of(*T2);
    REQUIRE(L2->maximal_ideals.size() == 1);
    REQUIRE(L2->ideals[L2->maximal_ideals[0]].count() == 4);  // kx + ky

    // single-variable case agrees with the plain quotient up to isomorphism
    auto single = make_multivariate_quotient_text(make_gf(2, 1), {"x^2"});
    REQUIRE(are_isomorphic(single, make_poly_quotient(make_zmod(2), {0, 0, 1}).ring));

    auto T3 = make_multivariate_quotient_text(make_gf(3, 1), {"x^2", "y^2", "x*y"});
    REQUIRE(T3->size() == 27);
    auto L3 = lattice_of(*T3);
    REQUIRE(L3->maximal_ideals.size() == 1);
    REQUIRE(L3->ideals[L3->maximal_ideals[0]].count() == 9);
}

TEST_CASE("products: projections, CRT isomorphism", "[ring]") {
    auto p = make_product({make_gf(2, 1), make_gf(2, 1)});
    REQUIRE(p.ring->size() == 4);
    auto L = lattice_of(*p.ring);
    REQUIRE(L->maximal_ideals.size() == 2);
    Ideal inter = ideal_intersection(*p.ring, L->ideals[L->maximal_ideals[0]],
                                     L->ideals[L->maximal_ideals[1]]);
    REQUIRE(inter == zero_ideal(*p.ring));

    REQUIRE(are_isomorphic(make_product({make_zmod(4), make_zmod(9)}).ring, make_zmod(36)));

    auto single = make_product({make_zmod(5)});
    REQUIRE(single.ring->size() == 5);
    REQUIRE(single.projections[0].is_injective());
    REQUIRE(single.projections[0].is_surjective());
}

TEST_CASE("CRT property across coprime moduli", "[ring]") {
    for (auto [a, b] : std::vector<std::pair<int, int>>{{2, 3}, {3, 4}, {4, 9}, {5, 8}, {7, 9}})
        REQUIRE(are_isomorphic(make_product({make_zmod(a), make_zmod(b)}).ring,
                               make_zmod(static_cast<long>(a) * b)));
    // non-coprime pairs are never isomorphic to the cyclic ring
    REQUIRE_FALSE(are_isomorphic(make_product({make_zmod(2), make_zmod(2)}).ring, make_zmod(4)));
}

TEST_CASE("idealization: structure, inclusion, retraction", "[ring]") {
    auto f2 = make_gf(2, 1);
    auto kk = make_idealization(f2, unit_ideal(*f2).members);
    REQUIRE(kk.ring->size() == 4);
    REQUIRE(are_isomorphic(kk.ring, make_poly_quotient(make_zmod(2), {0, 0, 1}).ring));

    auto z4 = make_zmod(4);
    auto idz = make_idealization(z4, principal_ideal(*z4, 2).members);
    REQUIRE(idz.ring->size() == 8);
    Elem e = -1;
    for (Elem a = 0; a < idz.ring->size(); ++a)
        if (idz.ring->name(a) == "(0,2)") e = a;
    REQUIRE(e >= 0);
    REQUIRE(idz.ring->mul(e, e) == idz.ring->zero());

    // retraction o inclusion = identity
    for (Elem r = 0; r < z4->size(); ++r)
        REQUIRE(idz.retraction.image[idz.inclusion.image[r]] == r);
}

TEST_CASE("subring generation", "[ring]") {
    auto f4 = make_gf(2, 2);
    Bitset prime = subring_closure(*f4, {});
    REQUIRE(prime.count() == 2);

    auto p22 = make_product({make_gf(2, 1), make_gf(2, 1)});
    Bitset diag = subring_closure(*p22.ring, {});
    REQUIRE(diag.count() == 2);
    REQUIRE(diag.test(p22.ring->zero()));
    REQUIRE(diag.test(p22.ring->one()));

    auto cube = make_poly_quotient(make_zmod(2), {0, 0, 0, 1});  // x^3
    Elem x2 = -1;
    for (Elem a = 0; a < cube.ring->size(); ++a)
        if (cube.ring->name(a) == "x^2") x2 = a;
    Bitset sub = subring_closure(*cube.ring, {x2});
    REQUIRE(sub.count() == 4);

    // closure is closed under both operations and contains 0, 1
    auto mem = sub.members();
    for (Elem a : mem)
        for (Elem b : mem) {
            REQUIRE(sub.test(cube.ring->add(a, b)));
            REQUIRE(sub.test(cube.ring->mul(a, b)));
        }
}

TEST_CASE("quotient rings", "[ring]") {
    auto z12 = make_zmod(12);
    auto q = quotient_ring(z12, principal_ideal(*z12, 6).members);
    REQUIRE(q.ring->size() == 6);
    REQUIRE(are_isomorphic(q.ring, make_zmod(6)));
    REQUIRE(q.surjection.is_homomorphism());

    auto same = quotient_ring(z12, zero_ideal(*z12).members);
    REQUIRE(are_isomorphic(same.ring, z12));

    auto z8 = make_zmod(8);
    auto q2 = quotient_ring(z8, principal_ideal(*z8, 4).members);
    REQUIRE(q2.ring->size() == 4);
    auto sp = is_spir(*q2.ring, *lattice_of(*q2.ring));
    REQUIRE(sp.has_value());

    REQUIRE_THROWS_AS(quotient_ring(z8, unit_ideal(*z8).members), invalid_parameter);
}

TEST_CASE("characteristic", "[ring]") {
    REQUIRE(make_zmod(8)->characteristic() == 8);
    REQUIRE(make_gf(2, 2)->characteristic() == 2);
    auto z8 = make_zmod(8);
    auto q = quotient_ring(z8, principal_ideal(*z8, 4).members);
    REQUIRE(q.ring->characteristic() == 4);
}

TEST_CASE("ring map certification catches non-homomorphisms", "[ring]") {
    auto z4 = make_zmod(4);
    RingMap bad{z4, z4, {0, 2, 0, 2}};  // not unital
    REQUIRE_FALSE(bad.is_homomorphism());
    RingMap good = identity_map(z4);
    REQUIRE(good.is_homomorphism());
    for (Elem a = 0; a < 4; ++a)
        for (Elem b = 0; b < 4; ++b) {
            REQUIRE(good.image[z4->add(a, b)] == z4->add(good.image[a], good.image[b]));
            REQUIRE(good.image[z4->mul(a, b)] == z4->mul(good.image[a], good.image[b]));
        }
}

TEST_CASE("the zero ring is rejected", "[ring]") {
    std::vector<std::uint16_t> t{0};
    REQUIRE_THROWS_AS(Ring(t, t, 0, 0, "zero", {"0"}), invalid_parameter);
}
