#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <numeric>
#include <thread>

#include "qmax/lattice.hpp"
#include "qmax/verify.hpp"

using namespace qmax;

namespace {

// independent oracle: the ideals of Z/n are exactly the sets of multiples
// of the divisors of n
std::vector<Bitset> zmod_ideals_oracle(int n) {
    std::vector<Bitset> out;
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        Bitset b(n);
        for (int k = 0; k < n; k += d) b.set(k);
        out.push_back(b);
    }
    std::sort(out.begin(), out.end(), [](const Bitset& a, const Bitset& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return a.lex_before(b);
    });
    return out;
}

Ideal zn_principal(const Ring& R, int a) { return principal_ideal(R, a); }

}  // namespace

TEST_CASE("principal ideals", "[ideal]") {
    auto z12 = make_zmod(12);
    Ideal p4 = zn_principal(*z12, 4);
    REQUIRE(p4.count() == 3);
    for (int m : {0, 4, 8}) REQUIRE(p4.contains(m));

    REQUIRE(principal_ideal(*z12, 0) == zero_ideal(*z12));

    auto dual = make_poly_quotient(make_zmod(2), {0, 0, 1});
    Ideal px = principal_ideal(*dual.ring, dual.var);
    REQUIRE(px.count() == 2);
}

TEST_CASE("ideal enumeration matches the divisor oracle for Z/n", "[ideal]") {
    for (int n : {6, 12, 16, 30, 36, 48, 60, 64, 97, 100}) {
        auto R = make_zmod(n);
        auto L = lattice_of(*R);
        auto expect = zmod_ideals_oracle(n);
        REQUIRE(L->ideals.size() == expect.size());
        for (std::size_t i = 0; i < expect.size(); ++i)
            REQUIRE(L->ideals[i].members == expect[i]);
    }
}

TEST_CASE("Z/12 lattice in canonical order", "[ideal]") {
    auto R = make_zmod(12);
    auto L = lattice_of(*R);
    REQUIRE(L->ideals.size() == 6);  // (0),(6),(4),(3),(2),(1)
    REQUIRE(L->ideals[0].count() == 1);
    REQUIRE(L->ideals[1].contains(6));
    REQUIRE(L->ideals[2].contains(4));
    REQUIRE(L->ideals[3].contains(3));
    REQUIRE(L->ideals[4].contains(2));
    REQUIRE(L->ideals[5].count() == 12);
}

TEST_CASE("field and Example-4.22 lattices", "[ideal]") {
    auto f4 = make_gf(2, 2);
    REQUIRE(lattice_of(*f4)->ideals.size() == 2);

    auto T = make_multivariate_quotient_text(make_gf(2, 1), {"x^2", "y^2", "x*y"});
    auto L = lattice_of(*T);
    REQUIRE(L->ideals.size() == 6);  // 0, kx, ky, k(x+y), kx+ky, T
    REQUIRE(L->maximal_ideals.size() == 1);
    int counts[6] = {1, 2, 2, 2, 4, 8};
    for (int i = 0; i < 6; ++i) REQUIRE(L->ideals[i].count() == counts[i]);
}

TEST_CASE("sum, product, intersection in Z/12", "[ideal]") {
    auto R = make_zmod(12);
    Ideal i4 = zn_principal(*R, 4), i6 = zn_principal(*R, 6), i2 = zn_principal(*R, 2),
          i3 = zn_principal(*R, 3);
    REQUIRE(ideal_sum(*R, i4, i6) == i2);  // gcd(4,6) = 2
    REQUIRE(ideal_product(*R, i2, i3) == i6);
    REQUIRE(ideal_intersection(*R, i2, i3) == i6);
    REQUIRE(ideal_sum(*R, i4, zero_ideal(*R)) == i4);
}

TEST_CASE("colon ideals", "[ideal]") {
    auto z8 = make_zmod(8);
    REQUIRE(colon_by_element(*z8, zn_principal(*z8, 4), 2) == zn_principal(*z8, 2));
    Ideal i4 = zn_principal(*z8, 4);
    REQUIRE(colon_by_element(*z8, i4, 1) == i4);

    auto z4 = make_zmod(4);
    REQUIRE(colon(*z4, zero_ideal(*z4), zn_principal(*z4, 2)) == zn_principal(*z4, 2));
    REQUIRE(annihilator(*z4, 2) == zn_principal(*z4, 2));
}

TEST_CASE("radicals", "[ideal]") {
    auto z8 = make_zmod(8);
    REQUIRE(radical(*z8, zn_principal(*z8, 4)) == zn_principal(*z8, 2));
    Ideal p2 = zn_principal(*z8, 2);
    REQUIRE(radical(*z8, p2) == p2);  // prime
    auto z12 = make_zmod(12);
    REQUIRE(radical(*z12, zn_principal(*z12, 4)) == zn_principal(*z12, 2));
}

TEST_CASE("prime / maximal / primary", "[ideal]") {
    auto z12 = make_zmod(12);
    auto L12 = lattice_of(*z12);
    Ideal i2 = zn_principal(*z12, 2);
    REQUIRE(is_prime(*z12, i2));
    REQUIRE(is_maximal(*z12, i2, *L12));

    auto z8 = make_zmod(8);
    Ideal i4 = zn_principal(*z8, 4);
    REQUIRE(is_primary(*z8, i4));
    REQUIRE_FALSE(is_prime(*z8, i4));
    REQUIRE(radical(*z8, i4) == zn_principal(*z8, 2));

    Ideal i6 = zn_principal(*z12, 6);
    REQUIRE_FALSE(is_primary(*z12, i6));  // 2*3 in (6), 2 not in, 3 not in sqrt=(6)
    REQUIRE(radical(*z12, i6) == i6);
}

TEST_CASE("covering relation", "[ideal]") {
    auto z8 = make_zmod(8);
    auto L = lattice_of(*z8);
    REQUIRE(covers(*z8, zn_principal(*z8, 4), zn_principal(*z8, 2), *L));
    REQUIRE_FALSE(covers(*z8, zero_ideal(*z8), zn_principal(*z8, 2), *L));
    REQUIRE_FALSE(covers(*z8, zn_principal(*z8, 4), zn_principal(*z8, 4), *L));
}

TEST_CASE("lengths of quotients", "[ideal]") {
    auto z8 = make_zmod(8);
    REQUIRE(length_of_quotient(*z8, zn_principal(*z8, 4), *lattice_of(*z8)) == 2);
    auto f4 = make_gf(2, 2);
    REQUIRE(length_of_quotient(*f4, zero_ideal(*f4), *lattice_of(*f4)) == 1);
    auto z12 = make_zmod(12);
    REQUIRE(length_of_quotient(*z12, zn_principal(*z12, 6), *lattice_of(*z12)) == 2);
}

TEST_CASE("o-counts", "[ideal]") {
    auto z8 = make_zmod(8);
    auto L8 = lattice_of(*z8);
    REQUIRE(count_o(*z8, zn_principal(*z8, 4), *L8) == 2);
    auto z12 = make_zmod(12);
    auto L12 = lattice_of(*z12);
    REQUIRE(count_o(*z12, zn_principal(*z12, 6), *L12) == 3);
    REQUIRE(count_o(*z12, zn_principal(*z12, 2), *L12) == 1);  // maximal
}

TEST_CASE("local factor decomposition", "[ideal]") {
    auto z12 = make_zmod(12);
    auto lf = local_factors(z12);
    REQUIRE(lf.factors.size() == 2);
    std::vector<int> sizes{lf.factors[0]->size(), lf.factors[1]->size()};
    std::sort(sizes.begin(), sizes.end());
    REQUIRE(sizes == std::vector<int>{3, 4});
    std::vector<Elem> idem = lf.idempotents;
    std::sort(idem.begin(), idem.end());
    REQUIRE(idem == std::vector<Elem>{4, 9});  // the idempotents of Z/12

    auto z9 = make_zmod(9);
    auto lf9 = local_factors(z9);
    REQUIRE(lf9.factors.size() == 1);
    REQUIRE(lf9.projections[0].is_injective());

    auto p3 = make_product({make_gf(2, 1), make_gf(2, 1), make_gf(2, 1)});
    REQUIRE(local_factors(p3.ring).factors.size() == 3);
}

TEST_CASE("brute-force subgroup oracle agrees on mixed rings", "[ideal]") {
    std::vector<RingPtr> rings = {
        make_zmod(12), make_zmod(16), make_gf(2, 4),
        make_multivariate_quotient_text(make_gf(2, 1), {"x^2", "y^2", "x*y"}),
        make_product({make_zmod(4), make_zmod(6)}).ring};
    for (auto& R : rings) {
        auto L = lattice_of(*R);
        auto brute = enumerate_ideals_bruteforce(*R);
        REQUIRE(brute.size() == L->ideals.size());
        for (std::size_t i = 0; i < brute.size(); ++i)
            REQUIRE(brute[i] == L->ideals[i].members);
    }
}

TEST_CASE("radical identities across random ideal pairs", "[ideal]") {
    for (int n : {24, 36, 54}) {
        auto R = make_zmod(n);
        auto L = lattice_of(*R);
        for (const Ideal& I : L->ideals)
            for (const Ideal& J : L->ideals) {
                REQUIRE(radical(*R, ideal_product(*R, I, J)) ==
                        radical(*R, ideal_intersection(*R, I, J)));
            }
    }
}

TEST_CASE("localize at an element", "[ideal]") {
    auto z12 = make_zmod(12);
    auto loc = localize_at_element(z12, 4);  // 4 is idempotent: the Z/4-ish factor? 4*4=4
    REQUIRE(loc.has_value());
    REQUIRE(loc->first->size() == 3);  // 4*Z/12 = {0,4,8}
    REQUIRE_FALSE(localize_at_element(make_zmod(8), 2).has_value());  // nilpotent
}

TEST_CASE("lattice cache is safe for concurrent readers", "[ideal]") {
    auto R = make_zmod(60);
    std::vector<std::thread> pool;
    std::atomic<int> total{0};
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&] {
            for (int k = 0; k < 50; ++k) {
                auto L = lattice_of(*R);
                total += L->proper_count();
            }
        });
    for (auto& th : pool) th.join();
    REQUIRE(total == 4 * 50 * (lattice_of(*R)->proper_count()));
}
