#include "picodim/sequence.hpp"

#include "picodim/algebra.hpp"
#include "picodim/errors.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace picodim {

using nlohmann::ordered_json;

std::string to_string(SequenceMode mode) { return mode == SequenceMode::Bound ? "bound" : "exact"; }

SequenceMode sequence_mode_from_string(const std::string& s) {
    if (s == "bound") return SequenceMode::Bound;
    if (s == "exact") return SequenceMode::Exact;
    throw InvalidParameter("unknown sequence mode '" + s + "' (expected bound or exact)");
}

namespace {

std::size_t bits(const BigInt& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

ordered_json big_to_json(const BigInt& z) {
    if (mpz_fits_slong_p(z.get_mpz_t())) return mpz_get_si(z.get_mpz_t());
    return z.get_str();
}

BigInt big_from_json(const ordered_json& j) {
    if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        BigInt z;
        if (z.set_str(j.get<std::string>(), 10) != 0) throw ParseError("invalid integer in plan", 0);
        return z;
    }
    throw ParseError("expected an integer in plan", 0);
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

BigInt ceil_of(const Rational& x) { return ceil_div(BigInt(x.get_num()), BigInt(x.get_den())); }

/// ceil(alpha^T); every k below it has k! <= k^k < alpha^(kT).
BigInt factorial_search_start(const Rational& alpha, const BigInt& T) {
    if (!mpz_fits_ulong_p(T.get_mpz_t()) ||
        mpz_get_ui(T.get_mpz_t()) * bits(BigInt(alpha.get_num())) > (std::size_t(1) << 24))
        throw ResourceLimit("alpha^T too large to form exactly (T = " + T.get_str() + ")");
    const unsigned long t = mpz_get_ui(T.get_mpz_t());
    BigInt k0 = ceil_div(pow(BigInt(alpha.get_num()), t), pow(BigInt(alpha.get_den()), t));
    return k0 < 1 ? BigInt(1) : k0;
}

BigInt next_threshold_tail_start(const BigInt& N, int j) {
    // term 1 over the right side decreases once n >= 2N, term 2 once n > 2^(j+3)
    BigInt a = 2 * N + 1;
    BigInt b = (BigInt(1) << static_cast<mp_bitcnt_t>(j + 3)) + 1;
    return a > b ? a : b;
}

struct Bracket {
    BigInt lo;  // fails
    BigInt hi;  // holds
    bool unit() const { return hi - lo == 1; }
};

/// Monotone predicate: fails at lo_fail, holds from some point on. Doubles,
/// then bisects until unit resolution or a narrow relative bracket.
Bracket search_up(const BigInt& lo_fail, const std::function<bool(const BigInt&)>& holds,
                  const std::optional<BigInt>& limit, const SequenceOptions& options, const std::string& what) {
    Bracket b{lo_fail, lo_fail < 1 ? BigInt(1) : BigInt(2 * lo_fail)};
    constexpr std::size_t kMaxBits = std::size_t(1) << 22;
    while (true) {
        if (limit && b.hi > *limit) {
            if (b.lo >= *limit) throw CertificationFailure(what + ": no solution up to " + limit->get_str());
            b.hi = *limit;
            if (!holds(b.hi)) throw CertificationFailure(what + ": no solution up to " + limit->get_str());
            break;
        }
        if (bits(b.hi) > kMaxBits) throw ResourceLimit(what + ": search exceeded " + std::to_string(kMaxBits) + " bits");
        if (holds(b.hi)) break;
        b.lo = b.hi;
        b.hi *= 2;
    }
    while (!b.unit()) {
        if (bits(b.hi) > options.unit_bits) {
            BigInt width = b.hi - b.lo;
            if ((width << static_cast<mp_bitcnt_t>(options.bracket_bits)) <= b.hi) break;
        }
        BigInt mid = (b.lo + b.hi) / 2;
        bool h;
        try {
            h = holds(mid);
        } catch (const PrecisionExhausted&) {
            break;
        }
        (h ? b.hi : b.lo) = mid;
    }
    return b;
}

Certificate cert(std::string role, Verdict expected, BoundCheck check) {
    return Certificate{std::move(role), expected, std::move(check)};
}

BoundCheck codim_check(const Rational& alpha, int T, int n, const EngineConfig& engine) {
    AlgebraSpec bt = make_bt(T, sufficient_level_cap(T, n));
    CodimResult r = codim(bt, n, std::nullopt, engine);
    const BigInt c(std::to_string(r.rank));
    const BigInt pn = pow(BigInt(alpha.get_num()), static_cast<unsigned long>(n));
    const BigInt qn = pow(BigInt(alpha.get_den()), static_cast<unsigned long>(n));
    BoundCheck b;
    b.name = "codimension_reaches_power";
    b.inputs = {{"alpha", to_string(alpha)}, {"T", std::to_string(T)}, {"n", std::to_string(n)}};
    b.verdict = c * qn >= pn ? Verdict::Holds : Verdict::Fails;
    Rational an(pn, qn);
    an.canonicalize();
    b.witness = {{"c_n", c.get_str()}, {"alpha^n", to_string(an)}, {"mode", to_string(r.mode)}};
    b.route = "exact codimension";
    return b;
}

int max_exact_degree(const EngineConfig& engine) { return engine.caps.left_normed; }

}  // namespace

// --------------------------------------------------------------- certificate

ordered_json Certificate::to_json() const {
    ordered_json j;
    j["role"] = role;
    j["expected"] = to_string(expected);
    const ordered_json body = check.to_json();
    for (const auto& [k, v] : body.items()) j[k] = v;
    return j;
}

Certificate Certificate::from_json(const ordered_json& j) {
    Certificate c;
    c.role = j.at("role").get<std::string>();
    c.expected = verdict_from_string(j.at("expected").get<std::string>());
    c.check = BoundCheck::from_json(j);
    return c;
}

// --------------------------------------------------------------- searches

Threshold find_first_threshold(const Rational& alpha, const SequenceOptions& options) {
    if (alpha <= 1) throw InvalidParameter("alpha must exceed 1");
    const auto& ladder = options.ladder;
    auto point = [&](const BigInt& m) { return check_cubic_point(alpha, m, ladder).holds(); };
    const BigInt m0 = cubic_tail_start(alpha, ladder);
    Threshold t;
    if (!point(m0)) {
        Bracket b = search_up(m0, point, std::nullopt, options, "cubic threshold");
        t.value = b.hi;
        t.minimal = b.unit();
        if (!t.minimal) t.bracket_lo = b.lo;
    } else {
        if (m0 > 2000000) throw ResourceLimit("cubic threshold: downward scan too long");
        t.value = m0;
        while (t.value > 1 && point(t.value - 1)) --t.value;
    }
    t.certificates.push_back(cert("cubic_threshold", Verdict::Holds, check_cubic_below_power(alpha, t.value, ladder)));
    if (t.minimal && t.value > 1)
        t.certificates.push_back(
            cert("cubic_threshold_minimality", Verdict::Fails, check_cubic_point(alpha, t.value - 1, ladder)));
    if (t.bracket_lo)
        t.certificates.push_back(
            cert("cubic_threshold_bracket", Verdict::Fails, check_cubic_point(alpha, *t.bracket_lo, ladder)));
    return t;
}

Crossing find_crossing(const Rational& alpha, const BigInt& T, SequenceMode mode, const SequenceOptions& options) {
    if (alpha <= 1) throw InvalidParameter("alpha must exceed 1");
    if (T < 2) throw InvalidParameter("T must be at least 2");
    const auto& ladder = options.ladder;
    Crossing out;

    if (mode == SequenceMode::Exact) {
        if (!mpz_fits_sint_p(T.get_mpz_t())) throw ResourceLimit("exact crossing: T beyond engine caps");
        const int t = static_cast<int>(mpz_get_si(T.get_mpz_t()));
        for (int n = 1;; ++n) {
            if (n > max_exact_degree(options.engine))
                throw ResourceLimit("exact crossing for T = " + T.get_str() + " not reached by degree " +
                                    std::to_string(max_exact_degree(options.engine)) +
                                    "; use bound mode or a smaller T1 override");
            BoundCheck b = codim_check(alpha, t, n, options.engine);
            const bool reached = b.holds();
            out.certificates.push_back(cert(reached ? "codimension_reaches" : "codimension_below", b.verdict, b));
            if (reached) {
                if (n <= t)
                    throw CertificationFailure("c_n(B_T) reaches alpha^n at n = " + std::to_string(n) +
                                               " <= T; the stage cannot be interleaved");
                out.range = CrossingRange{BigInt(n), BigInt(n), true, true};
                return out;
            }
        }
    }

    // lower end: the crude bound 2T^3 n!/T! grows faster than alpha^n once n + 1 >= alpha
    auto crude = [&](const BigInt& n) { return check_upper_bound_crossing(alpha, T, n, ladder).holds(); };
    const BigInt n_star = std::max(T, ceil_of(alpha));
    if (n_star - T > 1000000) throw ResourceLimit("crude crossing: linear region too long");
    std::optional<BigInt> lo_found;
    for (BigInt n = T; n <= n_star; ++n) {
        if (crude(n)) {
            lo_found = n;
            break;
        }
    }
    CrossingRange r;
    if (lo_found) {
        r.lo = *lo_found;
        r.lo_exact = true;
    } else {
        Bracket b = search_up(n_star, crude, std::nullopt, options, "crude crossing");
        r.lo = b.lo + 1;
        r.lo_exact = b.unit();
    }
    if (r.lo > T)
        out.certificates.push_back(
            cert("crude_bound_below", Verdict::Fails, check_upper_bound_crossing(alpha, T, r.lo - 1, ladder)));
    if (r.lo_exact)
        out.certificates.push_back(
            cert("crude_bound_reaches", Verdict::Holds, check_upper_bound_crossing(alpha, T, r.lo, ladder)));

    // upper end: n = kT + 1 with k! >= alpha^n, nondecreasing ratio from k = alpha^T - 1 on
    auto fact = [&](const BigInt& k) { return check_lower_bound_crossing(alpha, T, k, ladder).holds(); };
    const BigInt k0 = factorial_search_start(alpha, T);
    BigInt k;
    std::optional<BigInt> k_bracket;
    if (fact(k0)) {
        k = k0;
        r.hi_minimal = true;
    } else {
        Bracket b = search_up(k0, fact, std::nullopt, options, "factorial crossing");
        k = b.hi;
        r.hi_minimal = b.unit();
        if (!r.hi_minimal) k_bracket = b.lo;
    }
    r.hi = k * T + 1;
    out.certificates.push_back(
        cert("factorial_bound_reaches", Verdict::Holds, check_lower_bound_crossing(alpha, T, k, ladder)));
    if (r.hi_minimal && k > k0)
        out.certificates.push_back(
            cert("factorial_bound_below", Verdict::Fails, check_lower_bound_crossing(alpha, T, k - 1, ladder)));
    if (k_bracket)
        out.certificates.push_back(
            cert("factorial_bound_bracket", Verdict::Fails, check_lower_bound_crossing(alpha, T, *k_bracket, ladder)));

    if (r.lo > r.hi)
        throw CertificationFailure("crossing bracket inverted: lo " + r.lo.get_str() + " > hi " + r.hi.get_str());
    out.range = r;
    return out;
}

Threshold find_next_threshold(const Rational& alpha, int j, const BigInt& N, const SequenceOptions& options) {
    if (alpha <= 1) throw InvalidParameter("alpha must exceed 1");
    if (j < 1 || j > 60) throw InvalidParameter("stage index j must lie in [1, 60]");
    if (N < 1) throw InvalidParameter("N must be positive");
    const auto& ladder = options.ladder;
    auto holds = [&](const BigInt& n) { return check_stage_inequality(alpha, N, n, j, ladder).holds(); };
    const BigInt start = 2 * N + 1;
    const BigInt m0 = next_threshold_tail_start(N, j);
    const BigInt cap = std::max(BigInt(BigInt(options.scan_factor * (j + 1)) * N), m0);

    Threshold t;
    bool found = false;
    for (BigInt n = start; n < m0; ++n) {
        if (holds(n)) {
            t.value = n;
            found = true;
            break;
        }
    }
    if (!found && holds(m0)) {
        t.value = m0;
        found = true;
    }
    if (!found) {
        Bracket b = search_up(m0, holds, cap, options, "next threshold (j = " + std::to_string(j) + ")");
        t.value = b.hi;
        t.minimal = b.unit();
        if (!t.minimal) t.bracket_lo = b.lo;
    }
    t.certificates.push_back(
        cert("stage_inequality", Verdict::Holds, check_stage_inequality(alpha, N, t.value, j, ladder)));
    if (t.minimal && t.value - 1 >= start)
        t.certificates.push_back(
            cert("stage_inequality_below", Verdict::Fails, check_stage_inequality(alpha, N, t.value - 1, j, ladder)));
    if (t.bracket_lo)
        t.certificates.push_back(
            cert("stage_inequality_bracket", Verdict::Fails, check_stage_inequality(alpha, N, *t.bracket_lo, j, ladder)));
    return t;
}

SequencePlan build_plan(const Rational& alpha, int steps, SequenceMode mode, const SequenceOptions& options) {
    if (alpha <= 1) throw InvalidParameter("alpha must exceed 1");
    if (steps < 1 || steps > 16) throw InvalidParameter("steps must lie in [1, 16]");
    const auto& ladder = options.ladder;
    SequencePlan plan;
    plan.alpha = alpha;
    plan.mode = mode;

    PlanStage first;
    if (options.T1_override) {
        if (*options.T1_override < 2) throw InvalidParameter("T1 override must be at least 2");
        plan.toy = true;
        first.T = *options.T1_override;
        first.T_minimal = false;
        BoundCheck c = check_cubic_below_power(alpha, first.T, ladder);
        first.certificates.push_back(cert("cubic_threshold_not_enforced", c.verdict, c));
        plan.notes.push_back("toy plan: T1 overridden, the cubic threshold rule is not enforced");
    } else {
        Threshold t = find_first_threshold(alpha, options);
        first.T = t.value;
        first.T_minimal = t.minimal;
        first.certificates = std::move(t.certificates);
    }
    plan.stages.push_back(std::move(first));

    for (int j = 1; j <= steps; ++j) {
        PlanStage& cur = plan.stages.back();
        Crossing cr = find_crossing(alpha, cur.T, mode, options);
        cur.N = cr.range;
        cur.certificates.insert(cur.certificates.end(), cr.certificates.begin(), cr.certificates.end());
        const BigInt N = cr.range.hi;

        Threshold nt = find_next_threshold(alpha, j, N, options);
        PlanStage next;
        next.T = nt.value;
        next.T_minimal = nt.minimal;
        next.certificates = std::move(nt.certificates);
        next.certificates.push_back(
            cert("binomial_sum_bound", Verdict::Holds, check_binomial_sum_bound(N, next.T, ladder)));
        next.certificates.push_back(cert("cubic_binomial_sum", Verdict::Holds, check_cubic_binomial_sum(next.T)));
        if (cr.range.lo < cr.range.hi)
            next.certificates.push_back(cert("stage_lhs_monotone", Verdict::Holds,
                                             check_stage_lhs_monotone(alpha, cr.range.lo, cr.range.hi, next.T, ladder)));
        plan.stages.push_back(std::move(next));
    }

    if (alpha <= 2)
        plan.notes.push_back("alpha <= 2: the chain is valid, but non-existence of the exponent needs alpha > 2");
    if (mode == SequenceMode::Bound)
        plan.notes.push_back(
            "N_j is bracketed: below lo the crude bound 2T^3 n!/T! is under alpha^n, at hi k! reaches alpha^n; "
            "the next threshold uses hi");
    for (std::size_t i = 0; i < plan.stages.size(); ++i) {
        const auto& s = plan.stages[i];
        if (!s.T_minimal && !plan.toy)
            plan.notes.push_back("T_" + std::to_string(i + 1) + " is a certified bracket end, not proven minimal");
        if (s.N && !s.N->hi_minimal)
            plan.notes.push_back("N_" + std::to_string(i + 1) + ".hi is a certified bracket end, not proven minimal");
    }
    return plan;
}

// ------------------------------------------------------------ serialization

ordered_json SequencePlan::to_json() const {
    ordered_json j;
    j["alpha"] = picodim::to_string(alpha);
    j["mode"] = picodim::to_string(mode);
    j["toy"] = toy;
    ordered_json st = ordered_json::array();
    for (const auto& s : stages) {
        ordered_json e;
        e["T"] = big_to_json(s.T);
        e["T_minimal"] = s.T_minimal;
        if (!s.N) {
            e["N"] = nullptr;
        } else if (mode == SequenceMode::Exact) {
            e["N"] = big_to_json(s.N->hi);
        } else {
            e["N"] = ordered_json{{"lo", big_to_json(s.N->lo)},
                                  {"hi", big_to_json(s.N->hi)},
                                  {"lo_exact", s.N->lo_exact},
                                  {"hi_minimal", s.N->hi_minimal}};
        }
        ordered_json cs = ordered_json::array();
        for (const auto& c : s.certificates) cs.push_back(c.to_json());
        e["certificates"] = std::move(cs);
        st.push_back(std::move(e));
    }
    j["stages"] = std::move(st);
    j["notes"] = notes;
    return j;
}

SequencePlan SequencePlan::from_json(const ordered_json& j) {
    SequencePlan p;
    try {
        p.alpha = parse_rational(j.at("alpha").get<std::string>());
        p.mode = sequence_mode_from_string(j.at("mode").get<std::string>());
        p.toy = j.value("toy", false);
        for (const auto& e : j.at("stages")) {
            PlanStage s;
            s.T = big_from_json(e.at("T"));
            s.T_minimal = e.value("T_minimal", true);
            const auto& n = e.at("N");
            if (n.is_object()) {
                s.N = CrossingRange{big_from_json(n.at("lo")), big_from_json(n.at("hi")), n.value("lo_exact", true),
                                    n.value("hi_minimal", true)};
            } else if (!n.is_null()) {
                BigInt v = big_from_json(n);
                s.N = CrossingRange{v, v, true, true};
            }
            for (const auto& c : e.at("certificates")) s.certificates.push_back(Certificate::from_json(c));
            p.stages.push_back(std::move(s));
        }
        if (j.contains("notes"))
            for (const auto& n : j.at("notes")) p.notes.push_back(n.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed plan: ") + e.what(), 0);
    }
    return p;
}

// ------------------------------------------------------------ verification

bool PlanVerification::passed() const {
    return std::none_of(items.begin(), items.end(), [](const VerificationItem& i) { return i.status == "fail"; });
}

ordered_json PlanVerification::to_json() const {
    ordered_json arr = ordered_json::array();
    for (const auto& i : items) {
        ordered_json e;
        e["name"] = i.name;
        e["status"] = i.status;
        e["detail"] = i.detail;
        if (i.check) e["check"] = i.check->to_json();
        arr.push_back(std::move(e));
    }
    return ordered_json{{"passed", passed()}, {"items", std::move(arr)}};
}

namespace {

class Verifier {
public:
    Verifier(const SequencePlan& plan, const SequenceOptions& options) : plan_(plan), opt_(options) {}

    PlanVerification run() {
        if (plan_.alpha <= 1) {
            fail("alpha", "alpha must exceed 1");
            return std::move(out_);
        }
        if (plan_.stages.empty()) {
            fail("structure", "plan has no stages");
            return std::move(out_);
        }
        structure();
        stored();
        guarded("first_threshold", [&] { first_threshold(); });
        for (std::size_t i = 0; i < plan_.stages.size(); ++i) {
            const auto& s = plan_.stages[i];
            if (!s.N) continue;
            const std::string tag = std::to_string(i + 1);
            if (plan_.mode == SequenceMode::Exact)
                guarded("crossing_exact_" + tag, [&] { crossing_exact(s, tag); });
            else
                guarded("crossing_" + tag, [&] { crossing_bound(s, tag); });
            if (i + 1 < plan_.stages.size())
                guarded("next_threshold_" + std::to_string(i + 2),
                        [&] { next_threshold(s, plan_.stages[i + 1], static_cast<int>(i + 1)); });
        }
        return std::move(out_);
    }

private:
    void add(std::string name, std::string status, std::string detail, std::optional<BoundCheck> c = std::nullopt) {
        out_.items.push_back(VerificationItem{std::move(name), std::move(status), std::move(detail), std::move(c)});
    }
    void pass(std::string name, std::string detail, std::optional<BoundCheck> c = std::nullopt) {
        add(std::move(name), "pass", std::move(detail), std::move(c));
    }
    void fail(std::string name, std::string detail, std::optional<BoundCheck> c = std::nullopt) {
        add(std::move(name), "fail", std::move(detail), std::move(c));
    }
    void expect(const std::string& name, const BoundCheck& c, Verdict v, const std::string& detail) {
        if (c.verdict == v)
            pass(name, detail, c);
        else
            fail(name, detail + " (got " + to_string(c.verdict) + ")", c);
    }

    void guarded(const std::string& name, const std::function<void()>& f) {
        try {
            f();
        } catch (const Error& e) {
            fail(name, std::string("check raised: ") + e.what());
        }
    }

    void structure() {
        const auto& st = plan_.stages;
        std::string problem;
        for (std::size_t i = 0; i < st.size() && problem.empty(); ++i) {
            const auto& s = st[i];
            const std::string tag = std::to_string(i + 1);
            if (s.T < 2) problem = "T_" + tag + " < 2";
            if (!problem.empty()) break;
            if (!s.N) {
                if (i + 1 != st.size()) problem = "stage " + tag + " lacks N but is not the last stage";
                continue;
            }
            if (!(s.T < s.N->lo)) problem = "T_" + tag + " >= N_" + tag + ".lo";
            else if (!(s.N->lo <= s.N->hi)) problem = "N_" + tag + ".lo > N_" + tag + ".hi";
            else if (plan_.mode == SequenceMode::Exact && s.N->lo != s.N->hi) problem = "exact plan with a bracket";
            else if (i + 1 < st.size() && !(s.N->hi < st[i + 1].T)) problem = "N_" + tag + ".hi >= next T";
            else if (i + 1 < st.size() && !(2 * s.N->hi < st[i + 1].T)) problem = "next T <= 2 N_" + tag + ".hi";
        }
        if (problem.empty())
            pass("interleaving", "T_1 < N_1 <= ... strictly interleaved, each T_{j+1} > 2 N_j");
        else
            fail("interleaving", problem);
    }

    void stored() {
        std::size_t count = 0;
        for (std::size_t i = 0; i < plan_.stages.size(); ++i)
            for (const auto& c : plan_.stages[i].certificates) {
                ++count;
                if (!c.passed()) {
                    fail("stored_certificates",
                         "stage " + std::to_string(i + 1) + " " + c.role + ": recorded " + to_string(c.check.verdict) +
                             ", plan relies on " + to_string(c.expected),
                         c.check);
                    return;
                }
            }
        pass("stored_certificates", std::to_string(count) + " recorded verdicts match their roles");
    }

    void first_threshold() {
        const BigInt& T1 = plan_.stages.front().T;
        BoundCheck c = check_cubic_below_power(plan_.alpha, T1, opt_.ladder);
        if (plan_.toy) {
            add("first_threshold", "audit", "toy plan: cubic threshold " + to_string(c.verdict) + ", not enforced", c);
            return;
        }
        expect("first_threshold", c, Verdict::Holds, "2m^3 < alpha^m for all m >= T_1");
        if (plan_.stages.front().T_minimal && T1 > 1)
            expect("first_threshold_minimality", check_cubic_point(plan_.alpha, T1 - 1, opt_.ladder), Verdict::Fails,
                   "fails at T_1 - 1");
    }

    void crossing_exact(const PlanStage& s, const std::string& tag) {
        const BigInt& N = s.N->hi;
        if (!mpz_fits_sint_p(s.T.get_mpz_t()) || N > max_exact_degree(opt_.engine)) {
            add("crossing_exact_" + tag, "audit", "beyond engine caps, not recomputed");
            return;
        }
        const int t = static_cast<int>(mpz_get_si(s.T.get_mpz_t()));
        const int n_max = static_cast<int>(mpz_get_si(N.get_mpz_t()));
        for (int n = 1; n <= n_max; ++n) {
            BoundCheck c = codim_check(plan_.alpha, t, n, opt_.engine);
            Verdict want = n == n_max ? Verdict::Holds : Verdict::Fails;
            if (c.verdict != want) {
                fail("crossing_exact_" + tag, "c_n(B_T) vs alpha^n wrong at n = " + std::to_string(n), c);
                return;
            }
        }
        pass("crossing_exact_" + tag, "c_n(B_T) < alpha^n for n < N, c_N(B_T) >= alpha^N");
    }

    void crossing_bound(const PlanStage& s, const std::string& tag) {
        const Rational& a = plan_.alpha;
        const auto& r = *s.N;
        const auto& L = opt_.ladder;
        // lower end
        const BigInt n_star = std::max(s.T, ceil_of(a));
        bool ok = true;
        const BigInt scan_end = std::min(BigInt(r.lo - 1), n_star);
        if (scan_end - s.T > 1000000) throw ResourceLimit("crude scan too long");
        for (BigInt n = s.T; n <= scan_end && ok; ++n)
            if (check_upper_bound_crossing(a, s.T, n, L).holds()) ok = false;
        if (!ok) {
            fail("crossing_lo_" + tag, "crude bound reaches alpha^n before N.lo");
        } else if (r.lo - 1 >= s.T) {
            expect("crossing_lo_" + tag, check_upper_bound_crossing(a, s.T, r.lo - 1, L), Verdict::Fails,
                   "crude bound below alpha^n at N.lo - 1, hence for all T <= n < N.lo");
        } else {
            fail("crossing_lo_" + tag, "N.lo must exceed T");
        }
        if (r.lo_exact)
            expect("crossing_lo_exact_" + tag, check_upper_bound_crossing(a, s.T, r.lo, L), Verdict::Holds,
                   "crude bound reaches alpha^n at N.lo");
        // upper end
        if ((r.hi - 1) % s.T != 0) {
            fail("crossing_hi_" + tag, "N.hi is not 1 mod T");
            return;
        }
        const BigInt k = (r.hi - 1) / s.T;
        expect("crossing_hi_" + tag, check_lower_bound_crossing(a, s.T, k, L), Verdict::Holds,
               "k! >= alpha^n at n = kT+1 = N.hi");
        if (r.hi_minimal) {
            const BigInt k0 = factorial_search_start(a, s.T);
            if (k > k0)
                expect("crossing_hi_minimality_" + tag, check_lower_bound_crossing(a, s.T, k - 1, L), Verdict::Fails,
                       "fails at k - 1, and below ceil(alpha^T) by k! <= k^k");
            else
                pass("crossing_hi_minimality_" + tag, "k = ceil(alpha^T): smaller k have k! <= k^k < alpha^(kT)");
        } else {
            add("crossing_hi_minimality_" + tag, "audit", "N.hi is a bracket end");
        }
    }

    void next_threshold(const PlanStage& s, const PlanStage& next, int j) {
        const Rational& a = plan_.alpha;
        const auto& L = opt_.ladder;
        const BigInt& N = s.N->hi;
        const BigInt& T = next.T;
        const std::string tag = std::to_string(j + 1);
        if (!(T > 2 * N)) {
            fail("next_threshold_" + tag, "T_{j+1} must exceed 2 N_j");
            return;
        }
        BoundCheck total = check_stage_inequality(a, N, T, j, L);
        expect("next_threshold_" + tag, total, Verdict::Holds, "stage inequality with j = " + std::to_string(j));
        if (next.T_minimal) {
            const BigInt start = 2 * N + 1;
            const BigInt m0 = next_threshold_tail_start(N, j);
            std::string bad;
            for (BigInt n = start; n < T && n < m0; ++n)
                if (check_stage_inequality(a, N, n, j, L).holds()) {
                    bad = n.get_str();
                    break;
                }
            if (!bad.empty()) {
                fail("next_threshold_minimality_" + tag, "inequality already holds at n = " + bad);
            } else if (T - 1 >= m0) {
                expect("next_threshold_minimality_" + tag, check_stage_inequality(a, N, T - 1, j, L), Verdict::Fails,
                       "fails at T - 1, hence on [" + brief_str(m0) + ", T - 1] by monotone ratios");
            } else {
                pass("next_threshold_minimality_" + tag, "every n in (2N, T) scanned and fails");
            }
        } else {
            add("next_threshold_minimality_" + tag, "audit", "T is a bracket end, minimality not certified");
        }

        // unital bound chain at n = T_{j+1}
        if (plan_.mode == SequenceMode::Bound && s.N->lo < s.N->hi) {
            if (!(2 * s.N->hi < T))
                fail("stage_lhs_monotone_" + tag, "analytic condition N.hi < T/2 violated");
            else
                expect("stage_lhs_monotone_" + tag, check_stage_lhs_monotone(a, s.N->lo, s.N->hi, T, L),
                       Verdict::Holds, "left side at N.lo does not exceed left side at N.hi (with N.hi < T/2)");
        }
        BoundCheck bsum = check_binomial_sum_bound(N, T, L);
        BoundCheck csum = check_cubic_binomial_sum(T);
        const bool chain = bsum.holds() && csum.holds() && total.holds();
        std::string detail = "c_n(R#) <= Sigma1 + Sigma2 <= 2N(N+1)alpha^N Phi(N/n)^n + 2n^3 2^n < (2+2^-j)^n: "
                             "binomial sum " + to_string(bsum.verdict) + ", cubic sum " + to_string(csum.verdict) +
                             ", total " + to_string(total.verdict);
        add("unital_bound_chain_" + tag, chain ? "pass" : "fail", detail, bsum);
        if (plan_.mode == SequenceMode::Bound)
            add("growth_at_N_audit_" + std::to_string(j), "audit",
            "alpha^n <= c_n(R) < alpha^n + n(alpha^(n-1) + 2n^3) at n = N_j is a bound-mode audit, not evaluated");
    }

    static std::string brief_str(const BigInt& z) {
        std::string s = z.get_str();
        return s.size() <= 40 ? s : "~" + std::to_string(s.size()) + "-digit value";
    }

    const SequencePlan& plan_;
    const SequenceOptions& opt_;
    PlanVerification out_;
};

}  // namespace

PlanVerification verify_plan(const SequencePlan& plan, const SequenceOptions& options) {
    return Verifier(plan, options).run();
}

}  // namespace picodim
