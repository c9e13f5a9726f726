#include <catch2/catch_amalgamated.hpp>

#include "qmax/spec_parse.hpp"

using namespace qmax;

TEST_CASE("basic ring specs", "[parse]") {
    REQUIRE(parse_ring_spec("Z/8")->size() == 8);
    REQUIRE(parse_ring_spec("GF(4)")->size() == 4);
    REQUIRE(parse_ring_spec("GF(2^3)")->size() == 8);
    REQUIRE(parse_ring_spec("GF(27)")->is_field());
    REQUIRE(parse_ring_spec("Z/4 x Z/9")->size() == 36);
    REQUIRE(parse_ring_spec("Z/2 x Z/2 x Z/2")->size() == 8);
    REQUIRE(parse_ring_spec("(Z/2 x Z/3) x Z/5")->size() == 30);

    REQUIRE_THROWS_AS(parse_ring_spec("GF(6)"), invalid_parameter);
    REQUIRE_THROWS_AS(parse_ring_spec("Z/"), invalid_parameter);
    REQUIRE_THROWS_AS(parse_ring_spec("wat(3)"), invalid_parameter);
    REQUIRE_THROWS_AS(parse_ring_spec("Z/8 trailing"), invalid_parameter);
}

TEST_CASE("polynomial quotient specs, both syntaxes", "[parse]") {
    auto a = parse_ring_spec("poly(Z/2, x^2+x+1)");
    REQUIRE(a->size() == 4);
    REQUIRE(a->is_field());
    auto b = parse_ring_spec("poly(Z/2, [1,1,1])");
    REQUIRE(are_isomorphic(a, b));
    REQUIRE(parse_ring_spec("poly(Z/3, x^3)")->size() == 27);
    REQUIRE_THROWS_AS(parse_ring_spec("poly(Z/4, 2*x^2+1)"), invalid_parameter);  // not monic
}

TEST_CASE("mvq, idealize, sub, quot", "[parse]") {
    auto T = parse_ring_spec("mvq(GF(2), x^2, y^2, xy)");
    REQUIRE(T->size() == 8);
    auto T2 = parse_ring_spec("mvq(GF(2), x^2, y^2, x*y)");
    REQUIRE(are_isomorphic(T, T2));

    REQUIRE(parse_ring_spec("idealize(Z/4, 2)")->size() == 8);
    REQUIRE(parse_ring_spec("sub(poly(Z/2, x^3), x^2)")->size() == 4);
    REQUIRE(parse_ring_spec("quot(Z/12, 6)")->size() == 6);
    REQUIRE(parse_ring_spec("quot(Z/12, 4, 6)")->size() == 2);  // (4,6) = (2)

    REQUIRE_THROWS_AS(parse_ring_spec("mvq(GF(2), x*y)"), resource_limit);  // no pure power
}

TEST_CASE("element expressions", "[parse]") {
    auto R = parse_ring_spec("poly(Z/2, x^3)");
    REQUIRE(R->name(parse_element(*R, "x^2")) == "x^2");
    REQUIRE(parse_element(*R, "#0") == 0);
    REQUIRE(parse_element(*R, "0") == R->zero());
    REQUIRE(parse_element(*R, "x+x") == R->zero());
    REQUIRE(parse_element(*R, "x*x") == parse_element(*R, "x^2"));

    auto P = parse_ring_spec("Z/2 x Z/3");
    REQUIRE(P->name(parse_element(*P, "(1,2)")) == "(1,2)");
    REQUIRE(parse_element(*P, "5") == parse_element(*P, "(1,2)"));  // 5*1 = (1,2)

    auto z12 = parse_ring_spec("Z/12");
    REQUIRE(parse_element(*z12, "-1") == 11);
    REQUIRE(parse_element(*z12, "2*5+3") == 1);
    REQUIRE_THROWS_AS(parse_element(*z12, "y"), invalid_parameter);

    Ideal I = parse_ideal(*z12, "4, 6");
    REQUIRE(I == principal_ideal(*z12, 2));
}

TEST_CASE("extension specs", "[parse]") {
    Extension a = parse_extension_spec("ext(GF(2), GF(4))");
    REQUIRE(a.R().size() == 2);
    REQUIRE(a.S().size() == 4);

    Extension b = parse_extension_spec("ext(sub(poly(Z/2, x^3), x^2), poly(Z/2, x^3))");
    REQUIRE(b.R().size() == 4);
    REQUIRE(b.conductor.count() == 2);

    REQUIRE_THROWS_AS(parse_extension_spec("ext(GF(3), GF(4))"), invalid_parameter);
}

TEST_CASE("parse-print-parse round trips on generated labels", "[parse]") {
    for (const char* spec :
         {"Z/8", "GF(4)", "Z/4 x GF(9)", "poly(Z/2, x^3)", "poly(Z/4, x^2+x+1)"}) {
        RingPtr r1 = parse_ring_spec(spec);
        RingPtr r2 = parse_ring_spec(r1->label());
        REQUIRE(r1->size() == r2->size());
        REQUIRE(are_isomorphic(r1, r2));
        // printing is stable
        REQUIRE(r2->label() == parse_ring_spec(r2->label())->label());
    }
}

TEST_CASE("parse errors carry positions", "[parse]") {
    try {
        parse_ring_spec("poly(Z/2 x^2)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        REQUIRE(std::string(e.what()).find("position") != std::string::npos);
    } catch (const invalid_parameter&) {
        SUCCEED();
    }
}
