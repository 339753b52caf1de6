#include "picodim/errors.hpp"
#include "picodim/poly_parser.hpp"

#include <doctest.h>

using namespace picodim;

namespace {

std::size_t error_position(std::string_view text) {
    try {
        parse_poly(text);
    } catch (const ParseError& e) {
        return e.position();
    }
    return std::string::npos;
}

}  // namespace

TEST_SUITE("poly_parser") {
    TEST_CASE("juxtaposition is left associative") {
        MultilinearPoly f = parse_poly("x1x2x3");
        REQUIRE(f.terms().size() == 1);
        CHECK(f.terms().begin()->first == Monomial{left_comb(3), {0, 1, 2}});
        MultilinearPoly g = parse_poly("x1(x2x3)");
        CHECK(g.terms().begin()->first == Monomial{"10100", {0, 1, 2}});
        CHECK(parse_poly("(x1x2)x3") == f);
        CHECK(parse_poly("x1 x2 x3") == f);
    }

    TEST_CASE("coefficients, signs and distribution") {
        MultilinearPoly f = parse_poly("-2/4*x2x1 + x1x2 - x1x2");
        REQUIRE(f.terms().size() == 1);
        CHECK(f.terms().begin()->second == Rational(-1, 2));
        CHECK(parse_poly("x1(x2x3 - 2*x3x2)") == parse_poly("x1(x2x3) - 2*x1(x3x2)"));
        CHECK(parse_poly("(x2x3 + x3x2)x1") == parse_poly("x2x3x1 + x3x2x1"));
        CHECK(parse_poly("0").is_zero());
        CHECK(parse_poly("x1(x2x3) - x1(x2x3)").is_zero());
    }

    TEST_CASE("multilinearity is enforced") {
        CHECK_THROWS_AS(parse_poly("x1x1"), ParseError);
        CHECK_THROWS_AS(parse_poly("x1x3"), ParseError);
        CHECK_THROWS_AS(parse_poly("x1x2 + x1"), ParseError);
        CHECK_THROWS_AS(parse_poly("x0"), ParseError);
    }

    TEST_CASE("error positions") {
        CHECK(error_position("x1 + ") == 5);
        CHECK(error_position("x1 + y2") == 5);
        CHECK(error_position("(x1x2") == 5);
        CHECK(error_position("x1x2)") == 4);
        CHECK(error_position("3/0*x1") == 2);
        CHECK(error_position("") == 0);
    }

    TEST_CASE("print then parse is the identity") {
        for (const char* text : {"x1", "x1x2 - x2x1", "x1(x2x3) + 5/3*x3x2x1", "(x1x2)(x3x4) - x1(x2(x3x4))",
                                 "x2(x1x3)x4 + x4x3(x2x1)", "-x1"}) {
            MultilinearPoly f = parse_poly(text);
            CHECK(parse_poly(format_poly(f)) == f);
        }
        CHECK(format_poly(parse_poly("x1(x2x3)")) == "x1(x2x3)");
        CHECK(format_poly(parse_poly("(x1x2)x3")) == "x1x2x3");
        CHECK(format_poly(parse_poly("0")) == "0");
    }

    TEST_CASE("limits") {
        PolyParseLimits lim;
        lim.max_depth = 3;
        CHECK_THROWS_AS(parse_poly("((((x1))))", lim), ParseError);
        lim = {};
        lim.max_variables = 2;
        CHECK_THROWS_AS(parse_poly("x1x2x3", lim), ParseError);
    }
}
