#include "picodim/errors.hpp"
#include "picodim/sequence.hpp"

#include <doctest.h>

using namespace picodim;

namespace {

long scan_first_threshold(const Rational& alpha, long limit) {
    long last_bad = 0;
    for (long m = 1; m <= limit; ++m)
        if (!(Rational(2 * m * m * m) < pow(alpha, static_cast<unsigned long>(m)))) last_bad = m;
    return last_bad + 1;
}

// Exact left-hand side of the stage inequality.
bool stage_holds(const Rational& alpha, const BigInt& N, const BigInt& n, int j) {
    const unsigned long Nu = N.get_ui(), nu = n.get_ui();
    Rational phi_pow(pow(n, nu), pow(N, Nu) * pow(BigInt(n - N), nu - Nu));
    Rational lhs = Rational(2 * N * (N + 1)) * pow(alpha, Nu) * phi_pow + Rational(2 * n * n * n * pow(BigInt(2), nu));
    return lhs < pow(Rational(2) + Rational(1, pow(BigInt(2), static_cast<unsigned long>(j))), nu);
}

const SequencePlan& plan3() {
    static const SequencePlan plan = build_plan(Rational(3), 2, SequenceMode::Bound);
    return plan;
}

}  // namespace

TEST_SUITE("sequence") {
    TEST_CASE("first threshold against a direct scan") {
        Threshold t = find_first_threshold(Rational(3));
        CHECK(t.value == 6);
        CHECK(t.minimal);
        REQUIRE(t.certificates.size() >= 2);
        for (const auto& c : t.certificates) CHECK(c.passed());
        for (const Rational& a : {Rational(5, 2), Rational(4), Rational(2), Rational(7, 2), Rational(11, 10)})
            CHECK(find_first_threshold(a).value == scan_first_threshold(a, 600));
        CHECK_THROWS_AS(find_first_threshold(Rational(1)), InvalidParameter);
    }

    TEST_CASE("bound-mode crossing against exact integers") {
        Crossing c = find_crossing(Rational(3), BigInt(6), SequenceMode::Bound);
        // lo: least n >= T where 2T^3 n!/T! reaches 3^n
        long lo = 6;
        while (Rational(iterated_upper_bound(6, lo)) < pow(Rational(3), static_cast<unsigned long>(lo))) ++lo;
        CHECK(c.range.lo == lo);
        // hi: n = 6k + 1 for the least k with k! >= 3^n
        BigInt fact = 1;
        unsigned long k = 1;
        for (;; ++k) {
            fact *= k;
            if (fact >= pow(BigInt(3), 6 * k + 1)) break;
        }
        CHECK(k == 1979);
        CHECK(c.range.hi == BigInt(6 * k + 1));
        CHECK(c.range.lo_exact);
        CHECK(c.range.hi_minimal);
        for (const auto& cert : c.certificates) CHECK(cert.passed());
    }

    TEST_CASE("next threshold is minimal under exact evaluation") {
        const BigInt N = 11875;
        Threshold t = find_next_threshold(Rational(3), 1, N);
        CHECK(t.minimal);
        CHECK(t.value == 41300);
        CHECK(stage_holds(3, N, t.value, 1));
        CHECK_FALSE(stage_holds(3, N, t.value - 1, 1));
        CHECK_FALSE(stage_holds(3, N, 2 * N + 1, 1));
        CHECK_THROWS_AS(find_next_threshold(Rational(3), 0, N), InvalidParameter);
    }

    TEST_CASE("plan for alpha = 3") {
        const SequencePlan& p = plan3();
        REQUIRE(p.stages.size() == 3);
        CHECK(p.stages[0].T == 6);
        CHECK(p.stages[0].N->lo == 7);
        CHECK(p.stages[0].N->hi == 11875);
        CHECK(p.stages[1].T == 41300);
        CHECK(p.stages[1].T_minimal);
        CHECK(p.stages[1].N->lo == 46031);
        CHECK_FALSE(p.stages[2].N.has_value());
        // interleaving T_j < N_j < T_{j+1}
        for (std::size_t j = 0; j + 1 < p.stages.size(); ++j) {
            CHECK(p.stages[j].T < p.stages[j].N->lo);
            CHECK(p.stages[j].N->hi < p.stages[j + 1].T);
        }
        for (const auto& s : p.stages)
            for (const auto& c : s.certificates) CHECK_MESSAGE(c.passed(), c.role);
        CHECK(verify_plan(p).passed());
    }

    TEST_CASE("plan json round trip") {
        const SequencePlan& p = plan3();
        SequencePlan q = SequencePlan::from_json(p.to_json());
        CHECK(q.to_json() == p.to_json());
        CHECK(q.stages[2].T == p.stages[2].T);
        CHECK_THROWS_AS(SequencePlan::from_json(nlohmann::ordered_json::parse("{\"alpha\": 3}")), ParseError);
    }

    TEST_CASE("tampered plans are rejected") {
        SequencePlan p = plan3();
        p.stages[1].T += 1;
        CHECK_FALSE(verify_plan(p).passed());

        p = SequencePlan::from_json(plan3().to_json());
        p.stages[0].N->hi -= 6;
        CHECK_FALSE(verify_plan(p).passed());

        p = SequencePlan::from_json(plan3().to_json());
        p.stages[0].T = 5;
        CHECK_FALSE(verify_plan(p).passed());

        p = SequencePlan::from_json(plan3().to_json());
        p.stages[0].certificates[0].check.verdict =
            p.stages[0].certificates[0].expected == Verdict::Holds ? Verdict::Fails : Verdict::Holds;
        CHECK_FALSE(verify_plan(p).passed());
    }

    TEST_CASE("other parameters") {
        SequencePlan p = build_plan(Rational(5, 2), 1, SequenceMode::Bound);
        CHECK(p.stages[0].T == scan_first_threshold(Rational(5, 2), 600));
        CHECK(p.stages[0].N->lo == 9);
        CHECK(p.stages[0].N->hi == 33153);
        CHECK(verify_plan(p).passed());
        CHECK_THROWS_AS(build_plan(Rational(3), 0, SequenceMode::Bound), InvalidParameter);
        CHECK_THROWS_AS(build_plan(Rational(3), 17, SequenceMode::Bound), InvalidParameter);
        CHECK_THROWS_AS(build_plan(Rational(1), 1, SequenceMode::Bound), InvalidParameter);
        CHECK(sequence_mode_from_string("exact") == SequenceMode::Exact);
        CHECK_THROWS_AS(sequence_mode_from_string("fast"), InvalidParameter);
    }

    TEST_CASE("exact-mode toy plan") {
        SequenceOptions opt;
        opt.T1_override = BigInt(2);
        SequencePlan p = build_plan(Rational(2), 1, SequenceMode::Exact, opt);
        CHECK(p.toy);
        CHECK(p.stages[0].T == 2);
        // c_n(B_2) = 1, 2, 6, 12, 30, 60, 140 first reaches 2^n at n = 7
        CHECK(p.stages[0].N->lo == 7);
        CHECK(p.stages[0].N->hi == 7);
        CHECK(p.stages[1].T_minimal);
        CHECK(verify_plan(p).passed());
        // exact mode cannot reach the real first threshold for alpha = 3
        CHECK_THROWS_AS(build_plan(Rational(3), 1, SequenceMode::Exact), ResourceLimit);
    }
}
