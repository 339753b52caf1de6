#include "picodim/errors.hpp"
#include "picodim/scalar.hpp"

#include <doctest.h>

using namespace picodim;

TEST_SUITE("scalar") {
    TEST_CASE("rational parsing") {
        CHECK(parse_rational("5/2") == Rational(5, 2));
        CHECK(parse_rational("-6/4") == Rational(-3, 2));
        CHECK(parse_rational("+7") == 7);
        CHECK(parse_rational("0/9") == 0);
        CHECK_THROWS_AS(parse_rational(""), ParseError);
        CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
        CHECK_THROWS_AS(parse_rational("2.5"), ParseError);
        try {
            parse_rational("12/x");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.position() == 3);
        }
    }

    TEST_CASE("factorial, binomial and powers against recurrences") {
        BigInt f = 1;
        for (unsigned long n = 0; n <= 40; ++n) {
            if (n > 0) f *= n;
            CHECK(factorial(n) == f);
        }
        // Pascal's rule
        for (unsigned long n = 1; n <= 30; ++n)
            for (unsigned long k = 1; k < n; ++k)
                CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
        CHECK(binomial(10, 11) == 0);
        CHECK(pow(BigInt(3), 5) == 243);
        CHECK(pow(Rational(5, 2), 3) == Rational(125, 8));
        CHECK(pow(Rational(-2, 3), 0) == 1);
    }

    TEST_CASE("catalan numbers") {
        const std::uint64_t want[] = {1, 1, 2, 5, 14, 42, 132, 429};
        for (int n = 0; n < 8; ++n) CHECK(catalan(n) == want[n]);
    }

    TEST_CASE("u64 range") {
        CHECK(fits_u64(BigInt(0)));
        CHECK(fits_u64(pow(BigInt(2), 64) - 1));
        CHECK_FALSE(fits_u64(pow(BigInt(2), 64)));
        CHECK_FALSE(fits_u64(BigInt(-1)));
    }
}
