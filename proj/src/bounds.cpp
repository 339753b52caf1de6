#include "picodim/bounds.hpp"

#include "picodim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace picodim {

using nlohmann::ordered_json;

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Undecided: return "undecided";
    case Verdict::NotApplicable: return "n/a";
    }
    return "?";
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "holds") return Verdict::Holds;
    if (s == "fails") return Verdict::Fails;
    if (s == "undecided") return Verdict::Undecided;
    if (s == "n/a") return Verdict::NotApplicable;
    throw ParseError("unknown verdict '" + s + "'", 0);
}

ordered_json BoundCheck::to_json() const {
    ordered_json j;
    j["name"] = name;
    ordered_json in = ordered_json::object();
    for (const auto& [k, v] : inputs) in[k] = v;
    j["inputs"] = std::move(in);
    j["verdict"] = to_string(verdict);
    ordered_json w = ordered_json::object();
    for (const auto& [k, v] : witness) w[k] = v;
    j["witness"] = std::move(w);
    j["route"] = route;
    j["precision"] = precision;
    if (!note.empty()) j["note"] = note;
    return j;
}

BoundCheck BoundCheck::from_json(const ordered_json& j) {
    BoundCheck c;
    c.name = j.at("name").get<std::string>();
    for (const auto& [k, v] : j.at("inputs").items()) c.inputs.emplace_back(k, v.get<std::string>());
    c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    for (const auto& [k, v] : j.at("witness").items()) c.witness.emplace_back(k, v.get<std::string>());
    c.route = j.value("route", "exact");
    c.precision = j.value("precision", 0L);
    c.note = j.value("note", "");
    return c;
}

Verdict run_ladder(const PrecisionLadder& ladder, const std::function<Verdict(mpfr_prec_t)>& attempt,
                   long* used_precision) {
    for (mpfr_prec_t p = ladder.start; p <= ladder.cap; p *= 2) {
        Verdict v = attempt(p);
        if (v != Verdict::Undecided) {
            if (used_precision) *used_precision = static_cast<long>(p);
            return v;
        }
    }
    throw PrecisionExhausted("comparison undecided at " + std::to_string(ladder.cap) + " bits");
}

namespace {

constexpr std::size_t kExactBits = std::size_t(1) << 23;

std::size_t bits(const BigInt& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }
bool fits_ulong(const BigInt& z) { return mpz_fits_ulong_p(z.get_mpz_t()) != 0; }
unsigned long ulong_of(const BigInt& z) { return mpz_get_ui(z.get_mpz_t()); }

std::string brief(const BigInt& z) {
    if (mpz_sizeinbase(z.get_mpz_t(), 10) <= 40) return z.get_str();
    ensure_mpfr_range();
    mpfr_t x;
    mpfr_init2(x, 64);
    mpfr_set_z(x, z.get_mpz_t(), MPFR_RNDN);
    std::string s = "~" + mpfr_str(x, MPFR_RNDN, 9);
    mpfr_clear(x);
    return s;
}

std::string brief(const Rational& q) {
    if (q.get_den() == 1) return brief(BigInt(q.get_num()));
    return brief(BigInt(q.get_num())) + "/" + brief(BigInt(q.get_den()));
}

double approx_log2(const BigInt& z) {
    ensure_mpfr_range();
    mpfr_t x;
    mpfr_init2(x, 64);
    mpfr_set_z(x, z.get_mpz_t(), MPFR_RNDN);
    mpfr_log2(x, x, MPFR_RNDN);
    double d = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    return d;
}

std::string fmt_double(double d) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", d);
    return buf;
}

Interval ln(const BigInt& z, mpfr_prec_t prec) { return Interval::from(z, prec).log(); }

Interval xlogx(const BigInt& z, mpfr_prec_t prec) {
    if (z == 0) return Interval::from(0L, prec);
    Interval x = Interval::from(z, prec);
    return x * x.log();
}

Interval log_alpha(const Rational& alpha, mpfr_prec_t prec) { return Interval::from(alpha, prec).log(); }

/// Enclosure of log m!: exact factorial for moderate m, Stirling otherwise.
Interval log_factorial(const BigInt& m, mpfr_prec_t prec) {
    if (m <= 1) return Interval::from(0L, prec);
    if (m <= 100000) return Interval::from(factorial(ulong_of(m)), prec).log();
    return Interval::span(stirling_log_lower(m, prec), stirling_log_upper(m, prec));
}

Verdict compare_less(const Interval& a, const Interval& b) {
    if (a.certainly_less(b)) return Verdict::Holds;
    if (b.certainly_less_equal(a)) return Verdict::Fails;
    return Verdict::Undecided;
}

// a >= b.
Verdict compare_geq(const Interval& a, const Interval& b) {
    if (b.certainly_less_equal(a)) return Verdict::Holds;
    if (a.certainly_less(b)) return Verdict::Fails;
    return Verdict::Undecided;
}

Interval stirling_core(const BigInt& m, mpfr_prec_t prec, long denominator_offset) {
    Interval M = Interval::from(m, prec);
    Interval half = Interval::from(Rational(1, 2), prec);
    Interval two_pi_m = Interval::pi(prec) * Interval::from(2L, prec) * M;
    Interval corr = Interval::from(1L, prec) / (Interval::from(12L, prec) * M + Interval::from(denominator_offset, prec));
    return half * two_pi_m.log() + M * M.log() - M + corr;
}

Interval stage_term1_log(const Rational& alpha, const BigInt& N, const BigInt& n, mpfr_prec_t prec) {
    BigInt c = 2 * N * (N + 1);
    return ln(c, prec) + Interval::from(N, prec) * log_alpha(alpha, prec) + log_phi_power(n, N, prec);
}

}  // namespace

// ---------------------------------------------------------------- functions

Interval stirling_log_lower(const BigInt& m, mpfr_prec_t precision) {
    if (m < 1) throw InvalidParameter("Stirling bound needs m >= 1");
    return stirling_core(m, precision, 1);
}

Interval stirling_log_upper(const BigInt& m, mpfr_prec_t precision) {
    if (m < 1) throw InvalidParameter("Stirling bound needs m >= 1");
    return stirling_core(m, precision, 0);
}

Interval log_phi_power(const BigInt& n, const BigInt& k, mpfr_prec_t precision) {
    if (k < 0 || k > n) throw InvalidParameter("log_phi_power: need 0 <= k <= n");
    return xlogx(n, precision) - xlogx(k, precision) - xlogx(n - k, precision);
}

Interval phi(const Rational& x, mpfr_prec_t precision) {
    if (x < 0 || x > 1) throw InvalidParameter("phi: argument outside [0,1]");
    if (x == 0 || x == 1) return Interval::from(1L, precision);
    const BigInt p = x.get_num();
    const BigInt q = x.get_den();
    if (q <= 200000) {
        const unsigned long qu = ulong_of(q);
        BigInt num = pow(q, qu);
        BigInt den = pow(p, ulong_of(p)) * pow(BigInt(q - p), ulong_of(q - p));
        BigInt rn, rd;
        bool exact_num = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), qu) != 0;
        bool exact_den = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), qu) != 0;
        if (exact_num && exact_den) {
            Rational r(rn, rd);
            r.canonicalize();
            return Interval::from(r, precision);
        }
        Rational power(num, den);
        power.canonicalize();
        return Interval::from(power, precision).root(qu);
    }
    return (log_phi_power(q, p, precision) / Interval::from(q, precision)).exp();
}

BigInt factorial_lower_bound(long T, long n) {
    if (T < 1) throw InvalidParameter("factorial_lower_bound: T must be positive");
    if (n < T + 1 || (n - 1) % T != 0)
        throw InvalidParameter("factorial_lower_bound: n must equal kT+1 with k >= 1");
    return factorial(static_cast<unsigned long>((n - 1) / T));
}

BigInt iterated_upper_bound(long T, long n) {
    if (T < 1) throw InvalidParameter("iterated_upper_bound: T must be positive");
    if (n < T) throw InvalidParameter("iterated_upper_bound: n must be at least T");
    BigInt prod = 1;
    mpz_fac_ui(prod.get_mpz_t(), static_cast<unsigned long>(n));
    BigInt tf = factorial(static_cast<unsigned long>(T));
    mpz_divexact(prod.get_mpz_t(), prod.get_mpz_t(), tf.get_mpz_t());
    return 2 * BigInt(T) * T * T * prod;
}

BigInt cubic_binomial_sum(unsigned long n) {
    if (n == 0) return 0;
    BigInt v = BigInt(n) * n * (n + 3);
    v <<= static_cast<mp_bitcnt_t>(n);
    return v / 4;
}

// ------------------------------------------------------------------- checks

BoundCheck check_phi_properties(int grid_size, const PrecisionLadder& ladder) {
    if (grid_size < 2) throw InvalidParameter("check_phi_properties: grid size must be at least 2");
    BoundCheck c;
    c.name = "phi_properties";
    c.inputs = {{"grid_size", std::to_string(grid_size)}};
    c.route = "interval";
    const long g = grid_size;
    long worst_precision = 0;
    std::string max_hi = "1";
    Interval best(ladder.start);
    bool have_best = false;
    auto used_for = [&](long p) { worst_precision = std::max(worst_precision, p); };

    for (long i = 0; i + 1 < g; ++i) {
        Rational x(i, 2 * (g - 1));
        Rational y(i + 1, 2 * (g - 1));
        x.canonicalize();
        y.canonicalize();
        long used = 0;
        Verdict v = run_ladder(ladder, [&](mpfr_prec_t p) { return compare_less(phi(x, p), phi(y, p)); }, &used);
        used_for(used);
        if (v != Verdict::Holds) {
            c.verdict = Verdict::Fails;
            c.witness = {{"property", "increasing on [0,1/2]"}, {"x", to_string(x)}, {"y", to_string(y)}};
            return c;
        }
    }
    for (long i = 0; i < g; ++i) {
        Rational x(i, g - 1);
        x.canonicalize();
        if (x == Rational(1, 2)) {
            Interval v = phi(x, ladder.start);
            if (!(v.is_point() && mpfr_cmp_ui(v.lo(), 2) == 0)) {
                c.verdict = Verdict::Fails;
                c.witness = {{"property", "phi(1/2) = 2"}, {"value", v.str()}};
                return c;
            }
            continue;
        }
        long used = 0;
        Verdict v = run_ladder(
            ladder, [&](mpfr_prec_t p) { return compare_less(phi(x, p), Interval::from(2L, p)); }, &used);
        used_for(used);
        if (v != Verdict::Holds) {
            c.verdict = Verdict::Fails;
            c.witness = {{"property", "phi <= 2 on [0,1]"}, {"x", to_string(x)}};
            return c;
        }
        Interval val = phi(x, ladder.start);
        if (!have_best || mpfr_greater_p(val.hi(), best.hi())) {
            best = val;
            have_best = true;
        }
    }
    c.verdict = Verdict::Holds;
    c.precision = worst_precision;
    c.witness = {{"monotone_points", std::to_string(g)},
                 {"bound_points", std::to_string(g)},
                 {"max_phi_off_half", have_best ? best.hi_str(12) : "n/a"},
                 {"phi(1/2)", "2 (exact)"}};
    return c;
}

BoundCheck check_stirling(unsigned long m, const PrecisionLadder& ladder) {
    if (m < 1) throw InvalidParameter("check_stirling: m must be at least 1");
    if (m > 1000000) throw ResourceLimit("check_stirling: m too large for an exact factorial");
    BoundCheck c;
    c.name = "stirling";
    c.inputs = {{"m", std::to_string(m)}};
    c.route = "interval";
    const BigInt f = factorial(m);
    const BigInt M(m);
    c.verdict = run_ladder(
        ladder,
        [&](mpfr_prec_t p) {
            Interval lf = Interval::from(f, p).log();
            Interval lo = stirling_log_lower(M, p);
            Interval hi = stirling_log_upper(M, p);
            if (lo.certainly_less(lf) && lf.certainly_less(hi)) return Verdict::Holds;
            if (!lo.certainly_less(lf) && lo.certainly_greater(lf)) return Verdict::Fails;
            if (hi.certainly_less(lf)) return Verdict::Fails;
            return Verdict::Undecided;
        },
        &c.precision);
    Interval lf = Interval::from(f, c.precision).log();
    c.witness = {{"log_m!", lf.str(15)},
                 {"log_lower(theta=1)", stirling_log_lower(M, c.precision).str(15)},
                 {"log_upper(theta=0)", stirling_log_upper(M, c.precision).str(15)}};
    return c;
}

BoundCheck check_binomial_bound(unsigned long n, unsigned long k, std::optional<unsigned long> k_ref,
                                const PrecisionLadder& ladder) {
    if (!(1 <= k && k < n)) throw InvalidParameter("check_binomial_bound: need 1 <= k < n");
    if (n > 200000) throw ResourceLimit("check_binomial_bound: n too large for the exact comparison");
    const unsigned long kr = k_ref.value_or(k);
    BoundCheck c;
    c.name = "binomial_bound";
    c.inputs = {{"n", std::to_string(n)}, {"k", std::to_string(k)}, {"k_ref", std::to_string(kr)}};
    const BigInt C = binomial(n, k);
    const BigInt N(n), K(k), R(n - k);

    // C^2 k (n-k) k^(2k) (n-k)^(2(n-k)) <= n n^(2n)
    BigInt lhs = C * C * K * R * pow(K, 2 * k) * pow(R, 2 * (n - k));
    BigInt rhs = N * pow(N, 2 * n);
    const bool eq7 = lhs <= rhs;
    c.witness.emplace_back("C(n,k)", brief(C));
    c.witness.emplace_back("stirling_bound", eq7 ? "holds" : "fails");

    Verdict eq8 = Verdict::NotApplicable;
    if (n > 2 * kr && k <= kr) {
        c.route = "exact+interval";
        long used = 0;
        // C(n,k) <= sqrt(Phi) Phi^n, i.e. log C <= (n + 1/2) log Phi(k/n)
        Verdict first = run_ladder(
            ladder,
            [&](mpfr_prec_t p) {
                Interval lc = Interval::from(C, p).log();
                Interval lp = log_phi_power(N, K, p) / Interval::from(N, p);
                Interval bound = (Interval::from(N, p) + Interval::from(Rational(1, 2), p)) * lp;
                if (lc.certainly_less_equal(bound)) return Verdict::Holds;
                if (lc.certainly_greater(bound)) return Verdict::Fails;
                return Verdict::Undecided;
            },
            &used);
        // sqrt(Phi) < 2 follows from Phi < 4.
        Verdict second = run_ladder(
            ladder,
            [&](mpfr_prec_t p) {
                Rational x(static_cast<long>(k), static_cast<long>(n));
                x.canonicalize();
                return compare_less(phi(x, p), Interval::from(4L, p));
            },
            &used);
        // Phi(k/n)^n <= Phi(k_ref/n)^n  <=>  kr^kr (n-kr)^(n-kr) <= k^k (n-k)^(n-k)
        const BigInt KR(kr), RR(n - kr);
        const bool third = pow(KR, kr) * pow(RR, n - kr) <= pow(K, k) * pow(R, n - k);
        eq8 = first == Verdict::Holds && second == Verdict::Holds && third ? Verdict::Holds : Verdict::Fails;
        c.precision = used;
        c.witness.emplace_back("phi_power_bound", to_string(first));
        c.witness.emplace_back("sqrt_phi_below_2", to_string(second));
        c.witness.emplace_back("phi_monotone_to_k_ref", third ? "holds" : "fails");
    } else {
        c.note = "phi-power chain needs n > 2 k_ref and k <= k_ref";
    }
    c.witness.emplace_back("phi_chain", to_string(eq8));
    c.verdict = eq7 && eq8 != Verdict::Fails ? Verdict::Holds : Verdict::Fails;
    return c;
}

BoundCheck check_cubic_point(const Rational& alpha, const BigInt& m, const PrecisionLadder& ladder) {
    if (alpha <= 0) throw InvalidParameter("alpha must be positive");
    if (m < 1) throw InvalidParameter("m must be positive");
    BoundCheck c;
    c.name = "cubic_below_power_point";
    c.inputs = {{"alpha", to_string(alpha)}, {"m", m.get_str()}};
    const BigInt p = alpha.get_num();
    const BigInt q = alpha.get_den();
    if (fits_ulong(m) && ulong_of(m) * std::max(bits(p), bits(q)) <= kExactBits) {
        const unsigned long mu = ulong_of(m);
        BigInt cube = 2 * m * m * m;
        BigInt pm = pow(p, mu);
        BigInt qm = pow(q, mu);
        c.verdict = cube * qm < pm ? Verdict::Holds : Verdict::Fails;
        c.witness = {{"2m^3", brief(cube)}, {"alpha^m", brief(Rational(pm, qm))}};
        return c;
    }
    c.route = "interval";
    c.verdict = run_ladder(
        ladder,
        [&](mpfr_prec_t pr) {
            Interval l = ln(BigInt(2), pr) + Interval::from(3L, pr) * ln(m, pr);
            Interval r = Interval::from(m, pr) * log_alpha(alpha, pr);
            return compare_less(l, r);
        },
        &c.precision);
    Interval l = ln(BigInt(2), c.precision) + Interval::from(3L, c.precision) * ln(m, c.precision);
    Interval r = Interval::from(m, c.precision) * log_alpha(alpha, c.precision);
    c.witness = {{"log(2m^3)", l.str(12)}, {"log(alpha^m)", r.str(12)}};
    return c;
}

BigInt cubic_tail_start(const Rational& alpha, const PrecisionLadder& ladder) {
    if (alpha <= 1) throw InvalidParameter("alpha must exceed 1");
    // Rounded up from an upper enclosure of the quotient.
    Interval quot = Interval::from(3L, ladder.start) / log_alpha(alpha, ladder.start);
    BigInt m0;
    mpfr_get_z(m0.get_mpz_t(), quot.hi(), MPFR_RNDU);
    return m0 < 1 ? BigInt(1) : m0;
}

BoundCheck check_cubic_below_power(const Rational& alpha, const BigInt& T, const PrecisionLadder& ladder) {
    if (alpha <= 1) throw InvalidParameter("alpha must exceed 1");
    if (T < 1) throw InvalidParameter("T must be positive");
    BoundCheck c;
    c.name = "cubic_below_power";
    c.inputs = {{"alpha", to_string(alpha)}, {"T", brief(T)}};

    const BigInt m0 = cubic_tail_start(alpha, ladder);
    if (m0 > T && m0 - T > 2000000) throw ResourceLimit("cubic check: tail start too far above T");
    const BigInt last = T >= m0 ? T : m0;
    for (BigInt m = T; m <= last; ++m) {
        BoundCheck point = check_cubic_point(alpha, m, ladder);
        c.precision = std::max(c.precision, point.precision);
        if (point.route != "exact") c.route = "exact+interval";
        if (!point.holds()) {
            c.verdict = Verdict::Fails;
            c.witness = {{"m", m.get_str()}};
            c.witness.insert(c.witness.end(), point.witness.begin(), point.witness.end());
            return c;
        }
    }
    c.verdict = Verdict::Holds;
    c.witness = {{"checked", "[" + T.get_str() + ", " + last.get_str() + "]"},
                 {"tail_from", last.get_str()},
                 {"tail_reason", "alpha^m/m^3 increases for m >= 3/log(alpha)"}};
    return c;
}

Interval stage_lhs_log(const Rational& alpha, const BigInt& N, const BigInt& n, mpfr_prec_t precision) {
    Interval t1 = stage_term1_log(alpha, N, n, precision);
    Interval log2 = ln(BigInt(2), precision);
    Interval t2 = log2 + Interval::from(3L, precision) * ln(n, precision) + Interval::from(n, precision) * log2;
    return log_sum_exp(t1, t2);
}

BoundCheck check_stage_inequality(const Rational& alpha, const BigInt& N, const BigInt& n, int j,
                                  const PrecisionLadder& ladder) {
    if (alpha <= 1) throw InvalidParameter("alpha must exceed 1");
    if (j < 1) throw InvalidParameter("stage index j must be at least 1");
    if (N < 1) throw InvalidParameter("N must be positive");
    if (n <= 2 * N) throw InvalidParameter("stage inequality requires n > 2N");
    BoundCheck c;
    c.name = "stage_inequality";
    c.inputs = {{"alpha", to_string(alpha)}, {"N", brief(N)}, {"n", brief(n)}, {"j", std::to_string(j)}};
    const BigInt p = alpha.get_num();
    const BigInt q = alpha.get_den();
    const auto ju = static_cast<unsigned long>(j);
    if (fits_ulong(n) && ulong_of(n) * (bits(n) + ju + 4 + bits(p) + bits(q)) <= kExactBits) {
        const unsigned long nu = ulong_of(n);
        const unsigned long Nu = ulong_of(N);
        BigInt common = pow(q, Nu) * pow(N, Nu) * pow(BigInt(n - N), nu - Nu);
        BigInt p2 = BigInt(1) << static_cast<mp_bitcnt_t>(ju * nu);
        BigInt lhs = 2 * N * (N + 1) * pow(p, Nu) * pow(n, nu) * p2;
        lhs += 2 * n * n * n * (BigInt(1) << static_cast<mp_bitcnt_t>(nu)) * common * p2;
        BigInt rhs = pow(BigInt((BigInt(1) << static_cast<mp_bitcnt_t>(ju + 1)) + 1), nu) * common;
        c.verdict = lhs < rhs ? Verdict::Holds : Verdict::Fails;
        c.witness = {{"log2_rhs_minus_log2_lhs", fmt_double(approx_log2(rhs) - approx_log2(lhs))}};
        return c;
    }
    c.route = "interval";
    auto rhs_log = [&](mpfr_prec_t pr) {
        Rational base = 2 + Rational(1, 1) / Rational(BigInt(1) << static_cast<mp_bitcnt_t>(ju));
        return Interval::from(n, pr) * Interval::from(base, pr).log();
    };
    c.verdict = run_ladder(
        ladder, [&](mpfr_prec_t pr) { return compare_less(stage_lhs_log(alpha, N, n, pr), rhs_log(pr)); },
        &c.precision);
    Interval l = stage_lhs_log(alpha, N, n, c.precision);
    Interval r = rhs_log(c.precision);
    c.witness = {{"log_lhs", l.str(12)}, {"log_rhs", r.str(12)}, {"log_rhs_minus_log_lhs", (r - l).str(6)}};
    return c;
}

BoundCheck check_upper_bound_crossing(const Rational& alpha, const BigInt& T, const BigInt& n,
                                      const PrecisionLadder& ladder) {
    if (alpha <= 0) throw InvalidParameter("alpha must be positive");
    if (T < 1 || n < T) throw InvalidParameter("upper bound crossing needs 1 <= T <= n");
    BoundCheck c;
    c.name = "upper_bound_crossing";
    c.inputs = {{"alpha", to_string(alpha)}, {"T", brief(T)}, {"n", brief(n)}};
    const BigInt p = alpha.get_num();
    const BigInt q = alpha.get_den();
    if (fits_ulong(n) && ulong_of(n) <= 2000000 &&
        ulong_of(n) * (bits(n) + bits(p) + bits(q)) <= 4 * kExactBits) {
        const unsigned long nu = ulong_of(n);
        BigInt lhs = iterated_upper_bound(static_cast<long>(ulong_of(T)), static_cast<long>(nu)) * pow(q, nu);
        BigInt rhs = pow(p, nu);
        c.verdict = lhs >= rhs ? Verdict::Holds : Verdict::Fails;
        c.witness = {{"log2_bound_minus_log2_alpha^n", fmt_double(approx_log2(lhs) - approx_log2(rhs))}};
        return c;
    }
    c.route = "interval";
    auto lhs = [&](mpfr_prec_t pr) {
        return ln(BigInt(2 * T * T * T), pr) + log_factorial(n, pr) - log_factorial(T, pr);
    };
    auto rhs = [&](mpfr_prec_t pr) { return Interval::from(n, pr) * log_alpha(alpha, pr); };
    c.verdict = run_ladder(ladder, [&](mpfr_prec_t pr) { return compare_geq(lhs(pr), rhs(pr)); }, &c.precision);
    c.witness = {{"log_bound", lhs(c.precision).str(12)}, {"log_alpha^n", rhs(c.precision).str(12)}};
    return c;
}

BoundCheck check_lower_bound_crossing(const Rational& alpha, const BigInt& T, const BigInt& k,
                                      const PrecisionLadder& ladder) {
    if (alpha <= 0) throw InvalidParameter("alpha must be positive");
    if (T < 1 || k < 1) throw InvalidParameter("lower bound crossing needs T, k >= 1");
    BoundCheck c;
    c.name = "lower_bound_crossing";
    const BigInt n = k * T + 1;
    c.inputs = {{"alpha", to_string(alpha)}, {"T", brief(T)}, {"k", brief(k)}, {"n", brief(n)}};
    const BigInt p = alpha.get_num();
    const BigInt q = alpha.get_den();
    if (k <= 400000 && fits_ulong(n) && ulong_of(n) * std::max(bits(p), bits(q)) <= kExactBits) {
        const unsigned long nu = ulong_of(n);
        BigInt lhs = factorial(ulong_of(k)) * pow(q, nu);
        BigInt rhs = pow(p, nu);
        c.verdict = lhs >= rhs ? Verdict::Holds : Verdict::Fails;
        c.witness = {{"log2_k!_minus_log2_alpha^n", fmt_double(approx_log2(lhs) - approx_log2(rhs))}};
        return c;
    }
    c.route = "interval";
    auto rhs = [&](mpfr_prec_t pr) { return Interval::from(n, pr) * log_alpha(alpha, pr); };
    c.verdict =
        run_ladder(ladder, [&](mpfr_prec_t pr) { return compare_geq(log_factorial(k, pr), rhs(pr)); }, &c.precision);
    c.witness = {{"log_k!", log_factorial(k, c.precision).str(12)}, {"log_alpha^n", rhs(c.precision).str(12)}};
    return c;
}

BoundCheck check_binomial_sum_bound(const BigInt& N, const BigInt& n, const PrecisionLadder& ladder) {
    if (N < 0 || n <= 2 * N) throw InvalidParameter("binomial sum bound needs n > 2N >= 0");
    BoundCheck c;
    c.name = "binomial_sum_bound";
    c.inputs = {{"N", brief(N)}, {"n", brief(n)}};
    if (fits_ulong(n) && N <= 1000000 && ulong_of(n) * bits(n) <= kExactBits) {
        const unsigned long nu = ulong_of(n);
        const unsigned long Nu = ulong_of(N);
        BigInt term = 1;
        BigInt sum = 1;
        for (unsigned long k = 0; k < Nu; ++k) {
            term *= nu - k;
            mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), k + 1);
            sum += term;
        }
        BigInt lhs = sum * pow(N, Nu) * pow(BigInt(n - N), nu - Nu);
        BigInt rhs = 2 * (N + 1) * pow(n, nu);
        c.verdict = lhs <= rhs ? Verdict::Holds : Verdict::Fails;
        c.witness = {{"log2_bound_minus_log2_sum", fmt_double(approx_log2(rhs) - approx_log2(lhs))}};
        return c;
    }
    // Terms increase up to k = N < n/2, so the sum is at most (N+1) C(n,N), and
    // C(n,N) <= sqrt(n/(N(n-N))) Phi(N/n)^n. The bound then needs n <= 4N(n-N).
    c.route = "largest term";
    const bool ok = N == 0 || n <= 4 * N * (n - N);
    c.verdict = ok ? Verdict::Holds : Verdict::Fails;
    c.witness = {{"reduced_inequality", "n <= 4N(n-N)"}};
    c.note = "uses C(n,k) <= sqrt(n/(k(n-k))) n^n/(k^k (n-k)^(n-k))";
    (void)ladder;
    return c;
}

BoundCheck check_cubic_binomial_sum(const BigInt& n) {
    if (n < 1) throw InvalidParameter("cubic binomial sum needs n >= 1");
    BoundCheck c;
    c.name = "cubic_binomial_sum";
    c.inputs = {{"n", brief(n)}};
    // sum_k C(n,k) 2k^3 = 2^(n-2) n^2 (n+3) <= 2 n^3 2^n  <=>  n + 3 <= 8n
    bool closed_form_ok = true;
    if (n <= 5000) {
        const unsigned long nu = ulong_of(n);
        BigInt term = 1;
        BigInt direct = 0;
        for (unsigned long k = 1; k <= nu; ++k) {
            term *= nu - k + 1;
            mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), k);
            direct += term * 2 * BigInt(k) * k * k;
        }
        closed_form_ok = direct == cubic_binomial_sum(nu);
        c.witness.emplace_back("closed_form_checked_directly", closed_form_ok ? "yes" : "MISMATCH");
    } else {
        c.witness.emplace_back("closed_form_checked_directly", "no (n > 5000)");
    }
    const bool ineq = n + 3 <= 8 * n;
    c.witness.emplace_back("reduced_inequality", "n + 3 <= 8n");
    c.verdict = closed_form_ok && ineq ? Verdict::Holds : Verdict::Fails;
    return c;
}

BoundCheck check_stage_lhs_monotone(const Rational& alpha, const BigInt& N_lo, const BigInt& N_hi, const BigInt& n,
                                    const PrecisionLadder& ladder) {
    if (alpha <= 1) throw InvalidParameter("alpha must exceed 1");
    if (N_lo < 1 || N_lo > N_hi) throw InvalidParameter("monotonicity check needs 1 <= N_lo <= N_hi");
    if (2 * N_hi >= n) throw InvalidParameter("monotonicity check needs N_hi < n/2");
    BoundCheck c;
    c.name = "stage_lhs_monotone_in_N";
    c.inputs = {{"alpha", to_string(alpha)}, {"N_lo", brief(N_lo)}, {"N_hi", brief(N_hi)}, {"n", brief(n)}};
    c.note = "2N(N+1), alpha^N and Phi(N/n)^n are nondecreasing in N for N < n/2";
    if (N_lo == N_hi) {
        c.verdict = Verdict::Holds;
        c.witness = {{"reason", "N_lo = N_hi"}};
        return c;
    }
    c.route = "interval";
    c.verdict = run_ladder(
        ladder,
        [&](mpfr_prec_t pr) {
            Interval a = stage_term1_log(alpha, N_lo, n, pr);
            Interval b = stage_term1_log(alpha, N_hi, n, pr);
            if (a.certainly_less_equal(b)) return Verdict::Holds;
            if (a.certainly_greater(b)) return Verdict::Fails;
            return Verdict::Undecided;
        },
        &c.precision);
    c.witness = {{"log_term_at_N_lo", stage_term1_log(alpha, N_lo, n, c.precision).str(12)},
                 {"log_term_at_N_hi", stage_term1_log(alpha, N_hi, n, c.precision).str(12)}};
    return c;
}

}  // namespace picodim
