#include "picodim/bounds.hpp"
#include "picodim/errors.hpp"

#include <doctest.h>

using namespace picodim;

namespace {

// Phi(k/n)^n = n^n / (k^k (n-k)^(n-k)), exact.
Rational phi_power(unsigned long n, unsigned long k) {
    return Rational(pow(BigInt(n), n), pow(BigInt(k), k) * pow(BigInt(n - k), n - k));
}

bool stage_exact(const Rational& alpha, unsigned long N, unsigned long n, int j) {
    Rational lhs = 2 * N * (N + 1) * pow(alpha, N) * phi_power(n, N) + Rational(2 * pow(BigInt(n), 3) * pow(BigInt(2), n));
    Rational base = 2 + Rational(1, pow(BigInt(2), static_cast<unsigned long>(j)));
    return lhs < pow(base, n);
}

bool overlaps(const Interval& x, const Interval& y) { return !x.certainly_less(y) && !x.certainly_greater(y); }

}  // namespace

TEST_SUITE("bounds") {
    TEST_CASE("verdict names") {
        for (Verdict v : {Verdict::Holds, Verdict::Fails, Verdict::Undecided, Verdict::NotApplicable})
            CHECK(verdict_from_string(to_string(v)) == v);
        CHECK(to_string(Verdict::NotApplicable) == "n/a");
        CHECK_THROWS(verdict_from_string("maybe"));
    }

    TEST_CASE("phi") {
        Interval h = phi(Rational(1, 2), 128);
        CHECK(h.is_point());
        CHECK(mpfr_cmp_ui(h.lo(), 2) == 0);
        // n log Phi(k/n) against the exact power
        for (unsigned long n = 2; n <= 30; ++n)
            for (unsigned long k = 1; k < n; ++k) {
                Interval l = log_phi_power(BigInt(n), BigInt(k), 128);
                Interval x = Interval::from(phi_power(n, k), 128).log();
                CHECK(overlaps(l, x));
            }
        CHECK_THROWS_AS(phi(Rational(3, 2), 64), InvalidParameter);
    }

    TEST_CASE("closed forms") {
        CHECK(factorial_lower_bound(2, 7) == 6);
        CHECK(factorial_lower_bound(3, 4) == 1);
        CHECK_THROWS_AS(factorial_lower_bound(2, 6), InvalidParameter);
        CHECK_THROWS_AS(factorial_lower_bound(3, 1), InvalidParameter);
        CHECK(iterated_upper_bound(2, 2) == 16);
        CHECK(iterated_upper_bound(2, 4) == 192);
        CHECK(iterated_upper_bound(5, 7) == BigInt(2 * 125) * 42);
        for (unsigned long n = 0; n <= 40; ++n) {
            BigInt s = 0;
            for (unsigned long k = 0; k <= n; ++k) s += binomial(n, k) * 2 * pow(BigInt(k), 3);
            CHECK(cubic_binomial_sum(n) == s);
        }
    }

    TEST_CASE("precision ladder") {
        long used = 0;
        int calls = 0;
        Verdict v = run_ladder({64, 1024}, [&](mpfr_prec_t p) {
            ++calls;
            return p >= 256 ? Verdict::Holds : Verdict::Undecided;
        }, &used);
        CHECK(v == Verdict::Holds);
        CHECK(used == 256);
        CHECK(calls == 3);
        CHECK_THROWS_AS(run_ladder({64, 512}, [](mpfr_prec_t) { return Verdict::Undecided; }), PrecisionExhausted);
    }

    TEST_CASE("cubic threshold against direct scan") {
        for (const Rational& alpha : {Rational(3), Rational(5, 2), Rational(4), Rational(21, 20), Rational(2)}) {
            // least T with 2m^3 < alpha^m on [T, 400]; the tail beyond is covered by the m^3 / alpha^m argument
            long last_bad = 0;
            for (long m = 1; m <= 400; ++m)
                if (!(Rational(2 * m * m * m) < pow(alpha, static_cast<unsigned long>(m)))) last_bad = m;
            if (last_bad == 400) continue;  // alpha too close to 1 for this scan
            CHECK(check_cubic_below_power(alpha, BigInt(last_bad + 1)).holds());
            if (last_bad > 0) {
                BoundCheck c = check_cubic_below_power(alpha, BigInt(last_bad));
                CHECK(c.verdict == Verdict::Fails);
            }
        }
        BoundCheck f = check_cubic_below_power(3, 5);
        CHECK(f.verdict == Verdict::Fails);
        CHECK(f.to_json()["witness"]["2m^3"] == "250");
        CHECK(f.to_json()["witness"]["alpha^m"] == "243");
        CHECK(cubic_tail_start(3) == 3);
        CHECK(check_cubic_point(Rational(3), BigInt(6)).holds());
    }

    TEST_CASE("stage inequality against exact rationals") {
        for (const Rational& alpha : {Rational(3), Rational(5, 2)})
            for (unsigned long N = 1; N <= 5; ++N)
                for (unsigned long n = 2 * N + 1; n <= 70; n += 3)
                    for (int j = 1; j <= 2; ++j) {
                        BoundCheck c = check_stage_inequality(alpha, BigInt(N), BigInt(n), j);
                        CHECK((c.verdict == Verdict::Holds) == stage_exact(alpha, N, n, j));
                    }
        CHECK_THROWS_AS(check_stage_inequality(3, 5, 10, 1), InvalidParameter);
        // large n takes the interval route and must agree with the exact answer near the crossing
        CHECK(check_stage_inequality(3, 11941, 42000, 1).holds());
    }

    TEST_CASE("crossings against exact integers") {
        const Rational alpha = 3;
        for (long T = 2; T <= 6; ++T)
            for (long n = T; n <= T + 12; ++n) {
                BigInt lhs = iterated_upper_bound(T, n);
                bool want = Rational(lhs) >= pow(alpha, static_cast<unsigned long>(n));
                CHECK(check_upper_bound_crossing(alpha, BigInt(T), BigInt(n)).holds() == want);
            }
        for (long T = 2; T <= 4; ++T)
            for (long k = 1; k <= 40; ++k) {
                bool want = Rational(factorial(static_cast<unsigned long>(k))) >=
                            pow(alpha, static_cast<unsigned long>(k * T + 1));
                CHECK(check_lower_bound_crossing(alpha, BigInt(T), BigInt(k)).holds() == want);
            }
    }

    TEST_CASE("binomial bounds") {
        for (unsigned long n = 3; n <= 40; ++n)
            for (unsigned long N = 1; 2 * N < n; ++N) {
                BigInt s = 0;
                for (unsigned long k = 0; k <= N; ++k) s += binomial(n, k);
                bool want = Rational(s) <= 2 * (N + 1) * phi_power(n, N);
                CHECK(want);
                CHECK(check_binomial_sum_bound(BigInt(N), BigInt(n)).holds());
            }
        for (unsigned long n = 2; n <= 40; ++n)
            for (unsigned long k = 1; k < n; ++k) CHECK(check_binomial_bound(n, k).holds());
        BoundCheck small = check_binomial_bound(10, 6);
        CHECK(small.holds());
        CHECK(check_binomial_bound(20, 3, 5).holds());
        for (long n = 1; n <= 30; ++n) CHECK(check_cubic_binomial_sum(BigInt(n)).holds());
    }

    TEST_CASE("stage left side grows with N") {
        for (unsigned long n = 20; n <= 60; n += 10)
            for (unsigned long lo = 1; lo + 1 < n / 2; lo += 2) {
                const unsigned long hi = lo + 1;
                Rational l = 2 * lo * (lo + 1) * pow(Rational(3), lo) * phi_power(n, lo);
                Rational h = 2 * hi * (hi + 1) * pow(Rational(3), hi) * phi_power(n, hi);
                CHECK(l <= h);
                CHECK(check_stage_lhs_monotone(3, BigInt(lo), BigInt(hi), BigInt(n)).holds());
            }
    }

    TEST_CASE("stirling and phi grid") {
        for (unsigned long m = 1; m <= 60; ++m) CHECK(check_stirling(m).holds());
        CHECK(check_phi_properties(64).holds());
        Interval lo = stirling_log_lower(BigInt(10), 128), hi = stirling_log_upper(BigInt(10), 128);
        Interval f = Interval::from(factorial(10), 128).log();
        CHECK(lo.certainly_less(f));
        CHECK(f.certainly_less(hi));
    }

    TEST_CASE("check json round trip") {
        BoundCheck c = check_stage_inequality(3, 7, 30, 1);
        BoundCheck d = BoundCheck::from_json(c.to_json());
        CHECK(d.to_json() == c.to_json());
        CHECK(d.name == c.name);
        CHECK(d.verdict == c.verdict);
    }
}
