#include "picodim/algebra.hpp"
#include "picodim/errors.hpp"

#include <doctest.h>

using namespace picodim;

namespace {

Element basis_of(const AlgebraSpec& A, const BasisLabel& l) { return Element::basis(*A.find(l)); }

Element times(const AlgebraSpec& A, const BasisLabel& x, const BasisLabel& y) {
    return multiply(A, basis_of(A, x), basis_of(A, y));
}

}  // namespace

TEST_SUITE("algebra") {
    TEST_CASE("labels print and parse back") {
        std::vector<BasisLabel> ls{BasisLabel::a(),
                                   BasisLabel::z(3, 2),
                                   BasisLabel::theta(4),
                                   BasisLabel::unit(),
                                   BasisLabel::pair(BasisLabel::z(1, 1), BasisLabel::theta(2)),
                                   BasisLabel::summand(2, BasisLabel::pair(BasisLabel::b(), BasisLabel::theta(1))),
                                   BasisLabel::named("u7")};
        for (const auto& l : ls) CHECK(BasisLabel::parse(l.str()) == l);
        CHECK(BasisLabel::z(1, 2).str() == "z[1,2]");
        CHECK(BasisLabel::parse("<a,th[3]>").right().power() == 3);
    }

    TEST_CASE("B_T table") {
        AlgebraSpec B = make_bt(3, 2);
        CHECK(B.dim() == 2 + 2 * 3);
        CHECK(times(B, BasisLabel::z(1, 1), BasisLabel::a()) == basis_of(B, BasisLabel::z(1, 2)));
        CHECK(times(B, BasisLabel::z(1, 3), BasisLabel::b()) == basis_of(B, BasisLabel::z(2, 1)));
        CHECK(times(B, BasisLabel::z(1, 3), BasisLabel::a()).is_zero());
        CHECK(times(B, BasisLabel::z(1, 2), BasisLabel::b()).is_zero());
        CHECK(times(B, BasisLabel::z(2, 3), BasisLabel::b()).is_zero());  // truncated
        CHECK(times(B, BasisLabel::a(), BasisLabel::z(1, 1)).is_zero());
        CHECK(times(B, BasisLabel::a(), BasisLabel::b()).is_zero());
        CHECK(B.right_nilpotent());
        CHECK(B.integral());
        CHECK_FALSE(B.has_unit());
        CHECK_THROWS_AS(make_bt(1, 2), InvalidParameter);
        CHECK_THROWS_AS(make_bt(2, 0), InvalidParameter);
    }

    TEST_CASE("Q_N table") {
        AlgebraSpec Q = make_qn(4);
        CHECK(Q.dim() == 4);
        CHECK(Q.nilpotency_index() == 5);
        CHECK(times(Q, BasisLabel::theta(1), BasisLabel::theta(3)) == basis_of(Q, BasisLabel::theta(4)));
        CHECK(times(Q, BasisLabel::theta(2), BasisLabel::theta(3)).is_zero());
        CHECK_FALSE(Q.right_nilpotent());  // th1 (th1 th1) = th3
        CHECK(make_qn(2).right_nilpotent());
    }

    TEST_CASE("tensor and direct sum") {
        AlgebraSpec B = make_bt(2, 2), Q = make_qn(3);
        AlgebraSpec BQ = tensor(B, Q);
        CHECK(BQ.dim() == B.dim() * Q.dim());
        CHECK(BQ.nilpotency_index() == 4);
        auto lab = [](BasisLabel x, int s) { return BasisLabel::pair(std::move(x), BasisLabel::theta(s)); };
        CHECK(times(BQ, lab(BasisLabel::z(1, 1), 1), lab(BasisLabel::a(), 2)) ==
              basis_of(BQ, lab(BasisLabel::z(1, 2), 3)));
        CHECK(times(BQ, lab(BasisLabel::z(1, 1), 2), lab(BasisLabel::a(), 2)).is_zero());
        CHECK(BQ.right_nilpotent());

        AlgebraSpec S = direct_sum(B, Q);
        CHECK(S.dim() == B.dim() + Q.dim());
        CHECK_FALSE(S.nilpotency_index().has_value());  // B_T is not nilpotent
        auto in = [](int k, BasisLabel l) { return BasisLabel::summand(k, std::move(l)); };
        CHECK(times(S, in(2, BasisLabel::theta(1)), in(2, BasisLabel::theta(1))) ==
              basis_of(S, in(2, BasisLabel::theta(2))));
        CHECK(times(S, in(1, BasisLabel::z(1, 1)), in(2, BasisLabel::theta(1))).is_zero());
        CHECK_FALSE(S.right_nilpotent());

        std::vector<AlgebraSpec> qs{make_qn(2), make_qn(5)};
        CHECK(direct_sum(qs).nilpotency_index() == 6);
    }

    TEST_CASE("unital hull") {
        AlgebraSpec H = unitalize(make_bt(2, 1));
        CHECK(H.has_unit());
        CHECK(H.dim() == 5);
        CHECK_FALSE(H.right_nilpotent());
        for (const auto& l : H.basis()) {
            CHECK(times(H, BasisLabel::unit(), l) == basis_of(H, l));
            CHECK(times(H, l, BasisLabel::unit()) == basis_of(H, l));
        }
        CHECK_THROWS_AS(unitalize(H), InvalidParameter);
    }

    TEST_CASE("structure constants are normalised") {
        std::vector<BasisLabel> basis{BasisLabel::named("p"), BasisLabel::named("q")};
        AlgebraSpec A(basis, {{0, 0, {{1, 2}, {1, -2}}}, {0, 1, {{1, Rational(1, 2)}, {1, Rational(1, 2)}}}});
        CHECK(A.product(0, 0).empty());
        REQUIRE(A.product(0, 1).size() == 1);
        CHECK(A.product(0, 1)[0].coeff == 1);
        CHECK_THROWS_AS(AlgebraSpec(basis, {{0, 2, {{0, 1}}}}), InvalidParameter);
        CHECK_THROWS_AS(AlgebraSpec(basis, {{0, 0, {{5, 1}}}}), InvalidParameter);
        CHECK_THROWS_AS(AlgebraSpec({BasisLabel::a(), BasisLabel::a()}, {}), InvalidParameter);
        AlgebraSpec R(basis, {{0, 0, {{1, Rational(1, 3)}}}});
        CHECK_FALSE(R.integral());
    }

    TEST_CASE("element arithmetic") {
        AlgebraSpec Q = make_qn(3);
        Element x = Element::from_terms({{0, 2}, {1, 1}, {0, -1}});
        CHECK(x.coeff(0) == 1);
        CHECK(x.size() == 2);
        Element y = x;
        y.add(x, -1);
        CHECK(y.is_zero());
        // (th1 + th2)^2 = th2 + 2 th3
        Element sq = multiply(Q, x, x);
        CHECK(sq == Element::from_terms({{1, 1}, {2, 2}}));
        CHECK(x.scaled(0).is_zero());
    }

    TEST_CASE("with_product replaces one entry") {
        AlgebraSpec B = make_bt(2, 2);
        AlgebraSpec M = with_product(B, 2, 0, {});
        CHECK(M.product(2, 0).empty());
        CHECK(M.products().size() + 1 == B.products().size());
        AlgebraSpec L = with_product(B, 0, 3, {{2, 1}});
        CHECK_FALSE(L.right_nilpotent());
        CHECK_THROWS_AS(with_product(B, 99, 0, {}), InvalidParameter);
    }

    TEST_CASE("sufficient level cap") {
        CHECK(sufficient_level_cap(2, 1) == 1);
        CHECK(sufficient_level_cap(2, 2) == 2);
        CHECK(sufficient_level_cap(3, 4) == 2);
        CHECK(sufficient_level_cap(3, 5) == 3);
        // a walk of n - 1 steps from z[1,T] reaches level 2 + floor((n-2)/T)
        for (int T = 2; T <= 5; ++T)
            for (int n = 2; n <= 12; ++n) {
                const int steps = n - 1;
                const int linear = (T - 1) + steps;  // 0-based position in the z chain
                CHECK(sufficient_level_cap(T, n) == linear / T + 1);
            }
    }

    TEST_CASE("staged algebra") {
        std::vector<Stage> st{{2, 3}, {5, 6}};
        AlgebraSpec R = make_r(st, 4);
        CHECK(R.dim() == make_btn(2, 3).dim() + make_btn(5, 6).dim());
        CHECK(make_r(st, 1).dim() == make_btn(2, 3).dim());
        std::vector<Stage> bad{{2, 3}, {3, 6}};
        CHECK_THROWS_AS(make_r(bad, 4), InvalidParameter);
        CHECK(make_zero(3).products().empty());
    }
}
