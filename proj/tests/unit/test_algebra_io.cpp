#include "picodim/algebra_io.hpp"
#include "picodim/errors.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>

using namespace picodim;

namespace {

bool same_algebra(const AlgebraSpec& x, const AlgebraSpec& y) {
    if (x.basis() != y.basis() || x.products().size() != y.products().size()) return false;
    for (std::size_t i = 0; i < x.products().size(); ++i) {
        const auto &p = x.products()[i], &q = y.products()[i];
        if (p.left != q.left || p.right != q.right || p.terms != q.terms) return false;
    }
    return true;
}

std::size_t error_position(std::string_view text) {
    try {
        parse_descriptor(text);
    } catch (const ParseError& e) {
        return e.position();
    }
    return std::string::npos;
}

}  // namespace

TEST_SUITE("algebra_io") {
    TEST_CASE("json round trip") {
        for (const auto& A : {make_bt(3, 2), make_qn(3), unitalize(make_btn(2, 3)), direct_sum(make_qn(2), make_bt(2, 1))}) {
            AlgebraSpec B = algebra_from_json(algebra_to_json(A));
            CHECK(same_algebra(A, B));
            CHECK(B.right_nilpotent() == A.right_nilpotent());
        }
        std::vector<BasisLabel> basis{BasisLabel::named("p")};
        AlgebraSpec R(basis, {{0, 0, {{0, Rational(-2, 3)}}}});
        CHECK(same_algebra(R, algebra_from_json(algebra_to_json(R))));
    }

    TEST_CASE("json file round trip") {
        const auto path = (std::filesystem::temp_directory_path() / "picodim_io_test.json").string();
        save_algebra_file(make_btn(2, 2), path);
        CHECK(same_algebra(load_algebra_file(path), make_btn(2, 2)));
        CHECK(same_algebra(parse_descriptor("json:" + path), make_btn(2, 2)));
        std::remove(path.c_str());
        CHECK_THROWS_AS(load_algebra_file(path), InvalidParameter);
    }

    TEST_CASE("malformed json documents") {
        using nlohmann::json;
        CHECK_THROWS_AS(algebra_from_json(json::object()), ParseError);
        CHECK_THROWS_AS(algebra_from_json(json{{"basis", {1, 2}}}), ParseError);
        CHECK_THROWS_AS(algebra_from_json(json{{"basis", {"p"}}, {"products", {{0, 0}}}}), ParseError);
        CHECK_THROWS_AS(algebra_from_json(json{{"basis", {"p"}}, {"products", {{0, 0, {{0, "1/0"}}}}}}), Error);
        CHECK_THROWS_AS(algebra_from_json(json{{"basis", {"p"}}, {"products", {{0, 3, {{0, "1"}}}}}}),
                        InvalidParameter);
    }

    TEST_CASE("descriptor shorthands") {
        CHECK(same_algebra(parse_descriptor("bt:T=2,cap=4"), make_bt(2, 4)));
        CHECK(same_algebra(parse_descriptor("bt:T=3"), make_bt(3, 3)));
        CHECK(same_algebra(parse_descriptor(" qn : N = 3 "), make_qn(3)));
        CHECK(same_algebra(parse_descriptor("btn:T=2,N=3"), make_btn(2, 3)));
        std::vector<Stage> st{{2, 3}, {5, 6}};
        CHECK(same_algebra(parse_descriptor("r:2,3,5,6"), make_r(st, 100)));
        CHECK(same_algebra(parse_descriptor("unital(bt:T=2,cap=1)"), unitalize(make_bt(2, 1))));
        CHECK(same_algebra(parse_descriptor("sum(qn:N=2;bt:T=2,cap=1)"), direct_sum(make_qn(2), make_bt(2, 1))));
        CHECK(same_algebra(parse_descriptor("tensor(bt:T=2,cap=1;qn:N=2)"), tensor(make_bt(2, 1), make_qn(2))));
        CHECK(parse_descriptor("zero:dim=3").dim() == 3);
    }

    TEST_CASE("descriptor errors carry positions") {
        CHECK(error_position("bogus:1") == 0);
        CHECK(error_position("bt:T=x") == 5);
        CHECK(error_position("bt:T=2,cap=3)") == 12);
        CHECK(error_position("bt:Q=2") == 3);
        CHECK(error_position("bt:T=2,T=3") == 7);
        CHECK(error_position("qn:") == 3);
        CHECK(error_position("r:2,3,5") != std::string::npos);
        CHECK(error_position("r:2,3,3,6") != std::string::npos);  // not interleaved
        CHECK(error_position("unital(unital(qn:N=1))") == 0);
        CHECK(error_position("bt:T=1") == 0);
        CHECK(error_position("") == 0);
        CHECK_THROWS_AS(parse_descriptor("bt:T=1000000,cap=1000000"), ResourceLimit);
    }
}
