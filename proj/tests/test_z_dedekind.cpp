#include <catch2/catch_amalgamated.hpp>

#include "qmax/z_dedekind.hpp"

using namespace qmax;

TEST_CASE("classification of (n) by factorization", "[zdedekind]") {
    REQUIRE(classify_z_ideal(7).tag == QClass::Inert);
    REQUIRE(classify_z_ideal(49).tag == QClass::Ramified);
    REQUIRE(classify_z_ideal(21).tag == QClass::Decomposed);
    auto c30 = classify_z_ideal(30);
    REQUIRE(c30.tag == QClass::None);
    REQUIRE_FALSE(c30.two_absorbing);
    REQUIRE(classify_z_ideal(8).tag == QClass::None);  // p^3

    REQUIRE_THROWS_AS(classify_z_ideal(1), invalid_parameter);
    REQUIRE_THROWS_AS(classify_z_ideal(0), invalid_parameter);
}

TEST_CASE("factorization invariants", "[zdedekind]") {
    for (long n : {2, 12, 30, 49, 360, 497}) {
        IntegerIdeal f = factor_integer(n);
        long prod = 1;
        long last = 0;
        for (auto [p, e] : f.factorization) {
            REQUIRE(p > last);
            last = p;
            for (int i = 0; i < e; ++i) prod *= p;
        }
        REQUIRE(prod == n);
    }
}

TEST_CASE("cross-checks against the table ring", "[zdedekind]") {
    REQUIRE(z_crosscheck(9));
    REQUIRE(z_crosscheck(6));
    REQUIRE(z_crosscheck(12));
    for (long n = 2; n <= 60; ++n) REQUIRE(z_crosscheck(n));
}

TEST_CASE("bounded triple search matches the factorization verdict", "[zdedekind]") {
    for (long n = 2; n <= 120; ++n) {
        bool brute = !z_two_absorbing_violation(n).has_value();
        REQUIRE(brute == classify_z_ideal(n).two_absorbing);
    }
    auto v = z_two_absorbing_violation(30);
    REQUIRE(v.has_value());
    REQUIRE(*v == std::array<long, 3>{2, 3, 5});
}

TEST_CASE("Prop 5.5 witness", "[zdedekind]") {
    Prop55Report rep = prop_5_5_witness(50);
    REQUIRE(rep.all_pass);
    REQUIRE(rep.primes_checked == 15);  // primes up to 50
    REQUIRE(classify_z_ideal(4).tag == QClass::Ramified);
    REQUIRE(classify_z_ideal(9).tag == QClass::Ramified);
}
