#include "picodim/errors.hpp"
#include "picodim/monomial.hpp"
#include "picodim/poly_parser.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace picodim;

TEST_SUITE("monomial") {
    TEST_CASE("shape codes") {
        CHECK(left_comb(1) == "0");
        CHECK(left_comb(3) == "11000");
        CHECK(is_left_comb("11000"));
        CHECK_FALSE(is_left_comb("10100"));
        CHECK(is_valid_shape("10100"));
        CHECK_FALSE(is_valid_shape("1100"));
        CHECK_FALSE(is_valid_shape("0100"));
        CHECK(shape_leaves("1101000") == 4);
        for (int n = 1; n <= 7; ++n) {
            const auto& s = shapes(n);
            CHECK(s.size() == catalan(n - 1));
            CHECK(s.front() == left_comb(n));
            CHECK(std::is_sorted(s.begin(), s.end(), std::greater<>()));
            CHECK(std::set<std::string>(s.begin(), s.end()).size() == s.size());
        }
    }

    TEST_CASE("enumeration counts and order") {
        CHECK(enumerate_monomials(2, MonomialMode::Full).size() == 2);
        CHECK(enumerate_monomials(3, MonomialMode::Full).size() == 12);
        CHECK(enumerate_monomials(4, MonomialMode::LeftNormed).size() == 24);
        for (int n = 1; n <= 5; ++n) {
            auto full = enumerate_monomials(n, MonomialMode::Full);
            CHECK(full.size() == dim_pn(n, MonomialMode::Full));
            CHECK(std::is_sorted(full.begin(), full.end(), MonomialLess{}));
            auto left = enumerate_monomials(n, MonomialMode::LeftNormed);
            CHECK(std::equal(left.begin(), left.end(), full.begin()));  // left comb shape comes first
        }
        CHECK(dim_pn(8, MonomialMode::LeftNormed) == 40320);
        CHECK_THROWS_AS(enumerate_monomials(7, MonomialMode::Full), ResourceLimit);
        CHECK_THROWS_AS(enumerate_monomials(9, MonomialMode::LeftNormed), ResourceLimit);
        MonomialCaps caps{9, 7};
        CHECK(enumerate_monomials(7, MonomialMode::Full, caps).size() == 132 * 5040);
    }

    TEST_CASE("permutation rank") {
        std::vector<int> p{0, 1, 2, 3};
        std::uint64_t r = 0;
        do CHECK(perm_rank(p) == r++);
        while (std::next_permutation(p.begin(), p.end()));
    }

    TEST_CASE("evaluation follows the table") {
        AlgebraSpec B = make_bt(2, 2);
        const auto z11 = *B.find(BasisLabel::z(1, 1)), a = *B.find(BasisLabel::a()), b = *B.find(BasisLabel::b());
        std::vector<std::uint32_t> s{z11, a, b};
        CHECK(evaluate(B, Monomial{left_comb(3), {0, 1, 2}}, s) == Element::basis(*B.find(BasisLabel::z(2, 1))));
        CHECK(evaluate(B, Monomial{"10100", {0, 1, 2}}, s).is_zero());
        CHECK(evaluate(B, Monomial{left_comb(3), {0, 2, 1}}, s).is_zero());
        MultilinearPoly f = parse_poly("x1x2x3 - 3*x1x3x2");
        CHECK(evaluate(B, f, s) == Element::basis(*B.find(BasisLabel::z(2, 1))));
        std::vector<std::uint32_t> t{z11, b, a};
        CHECK(evaluate(B, f, t) == Element::basis(*B.find(BasisLabel::z(2, 1)), -3));
    }

    TEST_CASE("polynomial terms") {
        MultilinearPoly f(2);
        f.add_term(Monomial{"100", {0, 1}}, 2);
        f.add_term(Monomial{"100", {0, 1}}, -2);
        CHECK(f.is_zero());
        CHECK_THROWS_AS(f.add_term(Monomial{"100", {0, 0}}, 1), InvalidParameter);
        CHECK_THROWS_AS(f.add_term(Monomial{"11000", {0, 1, 2}}, 1), InvalidParameter);
        CHECK(MultilinearPoly::constant(5).constant_term() == 5);
    }

    TEST_CASE("unital expansion") {
        // x1(x2x3) under x_j -> 1 + x_j: every proper subproduct survives
        auto comps = expand_unital(parse_poly("x1(x2x3)"));
        CHECK(comps.size() == 8);
        CHECK(comps.at({}).constant_term() == 1);
        CHECK(comps.at({1, 2, 3}) == parse_poly("x1(x2x3)"));
        CHECK(comps.at({2, 3}) == parse_poly("x1x2"));
        CHECK(comps.at({1, 3}) == parse_poly("x1x2"));
        CHECK(comps.at({2}) == parse_poly("x1"));

        // the commutator cancels on every partial unit substitution
        auto c = expand_unital(parse_poly("x1x2 - x2x1"));
        CHECK(c.size() == 1);
        CHECK(c.count({1, 2}) == 1);

        // relabelling is order preserving: x3 x1 with x2 removed becomes x2 x1
        auto r = expand_unital(parse_poly("x3x1x2"));
        CHECK(r.at({1, 3}) == parse_poly("x2x1"));
    }
}
