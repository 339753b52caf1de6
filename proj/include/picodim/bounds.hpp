#pragma once

#include "picodim/interval.hpp"
#include "picodim/scalar.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace picodim {

enum class Verdict { Holds, Fails, Undecided, NotApplicable };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// Working precision starts at `start` bits and doubles on an undecided
/// comparison up to `cap`; undecided at the cap raises PrecisionExhausted.
struct PrecisionLadder {
    mpfr_prec_t start = 128;
    mpfr_prec_t cap = 8192;
};

/// Outcome of one certified inequality check. `route` is "exact" for pure
/// integer arithmetic and "interval" for MPFR enclosures, in which case
/// `precision` records the bits that separated the enclosures.
struct BoundCheck {
    std::string name;
    std::vector<std::pair<std::string, std::string>> inputs;
    Verdict verdict = Verdict::Undecided;
    std::vector<std::pair<std::string, std::string>> witness;
    std::string route = "exact";
    long precision = 0;
    std::string note;

    bool holds() const noexcept { return verdict == Verdict::Holds; }
    nlohmann::ordered_json to_json() const;
    static BoundCheck from_json(const nlohmann::ordered_json& j);
};

/// Runs `attempt` at successive precisions until it returns Holds or Fails.
/// Records the precision used. Throws PrecisionExhausted at the cap.
Verdict run_ladder(const PrecisionLadder& ladder, const std::function<Verdict(mpfr_prec_t)>& attempt,
                   long* used_precision = nullptr);

// ---------------------------------------------------------------- functions

/// Enclosure of Phi(x) = 1/(x^x (1-x)^(1-x)) for rational x in [0,1].
/// Exact points are returned where Phi(x) is rational (x = 0, 1/2, 1).
Interval phi(const Rational& x, mpfr_prec_t precision);

/// Enclosure of n * log Phi(k/n) = n log n - k log k - (n-k) log(n-k).
Interval log_phi_power(const BigInt& n, const BigInt& k, mpfr_prec_t precision);

/// Lower (theta = 1) and upper (theta = 0) Stirling enclosures of log m!.
Interval stirling_log_lower(const BigInt& m, mpfr_prec_t precision);
Interval stirling_log_upper(const BigInt& m, mpfr_prec_t precision);

/// k! for n = kT + 1; InvalidParameter unless n = 1 (mod T) with k >= 1.
BigInt factorial_lower_bound(long T, long n);

/// 2 T^3 n! / T!, the bound obtained from c_T(B_T) <= 2T^3 and c_n <= n c_{n-1}.
BigInt iterated_upper_bound(long T, long n);

/// sum_k C(n,k) 2k^3 in closed form: 2^(n-2) n^2 (n+3).
BigInt cubic_binomial_sum(unsigned long n);

// ------------------------------------------------------------------- checks

/// Phi increasing on the grid i/(2(g-1)), i < g, and Phi <= 2 on i/(g-1).
BoundCheck check_phi_properties(int grid_size, const PrecisionLadder& ladder = {});

/// sqrt(2 pi m)(m/e)^m e^(1/(12m+1)) < m! < sqrt(2 pi m)(m/e)^m e^(1/(12m)).
BoundCheck check_stirling(unsigned long m, const PrecisionLadder& ladder = {});

/// C(n,k) <= sqrt(n/(k(n-k))) n^n/(k^k (n-k)^(n-k)) exactly, and, when
/// n > 2 k_ref and k <= k_ref, C(n,k) < 2 Phi(k/n)^n <= 2 Phi(k_ref/n)^n.
/// k_ref defaults to k. The second part is NotApplicable otherwise.
BoundCheck check_binomial_bound(unsigned long n, unsigned long k, std::optional<unsigned long> k_ref = std::nullopt,
                                const PrecisionLadder& ladder = {});

/// 2m^3 < alpha^m for every m >= T: exact for T <= m <= m0 where
/// m0 >= 3 / log(alpha), after which alpha^m / m^3 increases.
/// Fails with the smallest violating m.
BoundCheck check_cubic_below_power(const Rational& alpha, const BigInt& T, const PrecisionLadder& ladder = {});

/// Smallest integer m0 >= 1 certified to satisfy m0 >= 3 / log(alpha).
BigInt cubic_tail_start(const Rational& alpha, const PrecisionLadder& ladder = {});

/// Single point of the cubic check: 2m^3 < alpha^m.
BoundCheck check_cubic_point(const Rational& alpha, const BigInt& m, const PrecisionLadder& ladder = {});

/// 2N(N+1) alpha^N Phi(N/n)^n + 2n^3 2^n < (2 + 2^-j)^n.
/// Requires n > 2N (InvalidParameter otherwise). Exact integer comparison
/// when the numbers are small enough, certified log-domain enclosures else.
BoundCheck check_stage_inequality(const Rational& alpha, const BigInt& N, const BigInt& n, int j,
                                  const PrecisionLadder& ladder = {});

/// Enclosure of log of the left side of check_stage_inequality.
Interval stage_lhs_log(const Rational& alpha, const BigInt& N, const BigInt& n, mpfr_prec_t precision);

/// Iterated upper bound reaches alpha^n: 2 T^3 n!/T! >= alpha^n.
BoundCheck check_upper_bound_crossing(const Rational& alpha, const BigInt& T, const BigInt& n,
                                      const PrecisionLadder& ladder = {});

/// Factorial lower bound reaches alpha^n at n = kT+1: k! >= alpha^(kT+1).
BoundCheck check_lower_bound_crossing(const Rational& alpha, const BigInt& T, const BigInt& k,
                                      const PrecisionLadder& ladder = {});

/// sum_{k<=N} C(n,k) <= 2(N+1) Phi(N/n)^n for n > 2N.
BoundCheck check_binomial_sum_bound(const BigInt& N, const BigInt& n, const PrecisionLadder& ladder = {});

/// sum_k C(n,k) 2k^3 <= 2 n^3 2^n.
BoundCheck check_cubic_binomial_sum(const BigInt& n);

/// The left side of the stage inequality does not decrease when N grows
/// from N_lo to N_hi at fixed n (requires N_hi < n/2).
BoundCheck check_stage_lhs_monotone(const Rational& alpha, const BigInt& N_lo, const BigInt& N_hi, const BigInt& n,
                                     const PrecisionLadder& ladder = {});

}  // namespace picodim
