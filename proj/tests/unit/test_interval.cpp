#include "picodim/errors.hpp"
#include "picodim/interval.hpp"

#include <doctest.h>

#include <random>

using namespace picodim;

namespace {

bool contains(const Interval& x, const Rational& q) {
    return mpfr_cmp_q(x.lo(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(x.hi(), q.get_mpq_t()) >= 0;
}

Rational random_rational(std::mt19937_64& rng) {
    long p = static_cast<long>(rng() % 2001) - 1000;
    long q = 1 + static_cast<long>(rng() % 97);
    return Rational(p, q);
}

}  // namespace

TEST_SUITE("interval") {
    TEST_CASE("arithmetic encloses exact rational results") {
        std::mt19937_64 rng(1);
        for (int i = 0; i < 300; ++i) {
            Rational x = random_rational(rng), y = random_rational(rng);
            const mpfr_prec_t prec = 24 + static_cast<mpfr_prec_t>(rng() % 100);
            Interval X = Interval::from(x, prec), Y = Interval::from(y, prec);
            CHECK(contains(X, x));
            CHECK(contains(X + Y, x + y));
            CHECK(contains(X - Y, x - y));
            CHECK(contains(X * Y, x * y));
            CHECK(contains(-X, -x));
            if (y != 0) CHECK(contains(X / Y, x / y));
        }
    }

    TEST_CASE("points and widths") {
        Interval two = Interval::from(2L, 64);
        CHECK(two.is_point());
        CHECK_FALSE(Interval::from(Rational(1, 3), 64).is_point());
        CHECK(Interval::from(BigInt("123456789012345678901234567890"), 128).is_point());
        CHECK_THROWS_AS(two / Interval::from(0L, 64), InvalidParameter);
        Interval s = Interval::span(Interval::from(1L, 64), Interval::from(3L, 64));
        CHECK(contains(s, 2));
    }

    TEST_CASE("transcendental functions") {
        const mpfr_prec_t p = 128;
        Interval pi = Interval::pi(p);
        CHECK(pi.certainly_greater(Interval::from(Rational(314159265358979, 100000000000000), p)));
        CHECK(pi.certainly_less(Interval::from(Rational(22, 7), p)));
        CHECK(contains(Interval::from(4L, p).sqrt(), 2));
        CHECK(contains(Interval::from(27L, p).root(3), 3));
        CHECK(contains(Interval::from(Rational(5, 2), p).log().exp(), Rational(5, 2)));
        CHECK(contains(log_sum_exp(Interval::from(2L, p).log(), Interval::from(3L, p).log()).exp(), 5));
        // exp(1) lies between 2.718281828 and 2.718281829
        Interval e = Interval::from(1L, p).exp();
        CHECK(e.certainly_greater(Interval::from(Rational(2718281828, 1000000000), p)));
        CHECK(e.certainly_less(Interval::from(Rational(2718281829, 1000000000), p)));
        CHECK_THROWS_AS(Interval::from(0L, p).log(), InvalidParameter);
        CHECK_THROWS_AS(Interval::from(-1L, p).sqrt(), InvalidParameter);
    }

    TEST_CASE("comparisons") {
        Interval a = Interval::from(Rational(1, 3), 64), b = Interval::from(Rational(1, 2), 64);
        CHECK(a.certainly_less(b));
        CHECK(b.certainly_greater(a));
        CHECK(a.certainly_less_equal(b));
        Interval w = Interval::span(a, b);
        CHECK_FALSE(w.certainly_less(b));
        CHECK_FALSE(w.certainly_greater(a));
        CHECK(Interval::from(2L, 64).certainly_less_equal(Interval::from(2L, 64)));
    }

    TEST_CASE("rendering rounds outward") {
        Interval t = Interval::from(Rational(1, 3), 128);
        CHECK(t.lo_str(5).substr(0, 7) == "3.33333");
        CHECK(t.hi_str(5).substr(0, 7) == "3.33334");
        CHECK(t.str(5).front() == '[');
    }
}
