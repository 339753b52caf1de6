#include "picodim/verifier.hpp"

#include "picodim/bounds.hpp"
#include "picodim/errors.hpp"
#include "picodim/sequence.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace picodim {

using nlohmann::ordered_json;

// ---------------------------------------------------------------- mutations

std::string to_string(Mutation m) {
    switch (m) {
    case Mutation::None: return "none";
    case Mutation::BtZ11TimesA: return "bt-z11a";
    case Mutation::BtZ12TimesB: return "bt-z12b";
    case Mutation::BtATimesZ12: return "bt-az12";
    case Mutation::QnTh1TimesTh2: return "qn-th1th2";
    case Mutation::QnTh1TimesTh1: return "qn-th1th1";
    }
    return "?";
}

Mutation mutation_from_string(const std::string& s) {
    for (Mutation m : {Mutation::None, Mutation::BtZ11TimesA, Mutation::BtZ12TimesB, Mutation::BtATimesZ12,
                       Mutation::QnTh1TimesTh2, Mutation::QnTh1TimesTh1})
        if (to_string(m) == s) return m;
    throw InvalidParameter("unknown mutation '" + s + "'");
}

std::vector<Mutation> all_mutations() {
    return {Mutation::BtZ11TimesA, Mutation::BtZ12TimesB, Mutation::BtATimesZ12, Mutation::QnTh1TimesTh2,
            Mutation::QnTh1TimesTh1};
}

AlgebraSpec AlgebraFactory::bt(int T, int level_cap) const {
    AlgebraSpec a = make_bt(T, level_cap);
    if (T != 2) return a;
    // indices: a = 0, b = 1, z[1,1] = 2, z[1,2] = 3
    switch (mutation) {
    case Mutation::BtZ11TimesA: return with_product(a, 2, 0, {});
    case Mutation::BtZ12TimesB: return with_product(a, 3, 1, {});
    case Mutation::BtATimesZ12: return with_product(a, 0, 3, {{2, 1}});
    default: return a;
    }
}

AlgebraSpec AlgebraFactory::qn(int N) const {
    AlgebraSpec q = make_qn(N);
    if (mutation == Mutation::QnTh1TimesTh2 && N >= 3) return with_product(q, 0, 1, {});
    if (mutation == Mutation::QnTh1TimesTh1 && N >= 2) return with_product(q, 0, 0, {});
    return q;
}

AlgebraSpec AlgebraFactory::btn(int T, int N) const { return tensor(bt(T, sufficient_level_cap(T, N)), qn(N)); }

AlgebraSpec AlgebraFactory::r(const std::vector<Stage>& stages) const {
    std::vector<AlgebraSpec> parts;
    for (const auto& s : stages) parts.push_back(btn(s.T, s.N));
    return direct_sum(parts);
}

// ------------------------------------------------------------------- report

bool Report::passed() const {
    return std::none_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.verdict == "fail"; });
}

int Report::exit_code() const { return passed() ? 0 : 1; }

ordered_json Report::to_json(bool with_runtime) const {
    std::size_t pass = 0, fail = 0, skipped = 0;
    ordered_json recs = ordered_json::array();
    for (const auto& r : records) {
        if (r.verdict == "pass") ++pass;
        else if (r.verdict == "fail") ++fail;
        else ++skipped;
        ordered_json e;
        e["name"] = r.name;
        e["anchor"] = r.anchor;
        e["params"] = r.params;
        e["expected"] = r.expected;
        e["computed"] = r.computed;
        e["verdict"] = r.verdict;
        if (with_runtime) e["runtime_ms"] = r.runtime_ms;
        recs.push_back(std::move(e));
    }
    ordered_json j;
    j["suite"] = suite;
    j["version"] = version;
    j["passed"] = passed();
    j["summary"] = ordered_json{{"pass", pass}, {"fail", fail}, {"skipped", skipped}};
    j["records"] = std::move(recs);
    return j;
}

Report Report::from_json(const ordered_json& j) {
    Report r;
    try {
        r.suite = j.at("suite").get<std::string>();
        r.version = j.at("version").get<std::string>();
        for (const auto& e : j.at("records")) {
            CheckRecord c;
            c.name = e.at("name").get<std::string>();
            c.anchor = e.at("anchor").get<std::string>();
            c.params = e.at("params");
            c.expected = e.at("expected").get<std::string>();
            c.computed = e.at("computed");
            c.verdict = e.at("verdict").get<std::string>();
            c.runtime_ms = e.value("runtime_ms", 0.0);
            r.records.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what(), 0);
    }
    return r;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string Report::to_csv(bool with_runtime) const {
    std::ostringstream os;
    os << "name,anchor,params,expected,computed,verdict";
    if (with_runtime) os << ",runtime_ms";
    os << "\n";
    for (const auto& r : records) {
        os << csv_field(r.name) << ',' << csv_field(r.anchor) << ',' << csv_field(r.params.dump()) << ','
           << csv_field(r.expected) << ',' << csv_field(r.computed.dump()) << ',' << csv_field(r.verdict);
        if (with_runtime) os << ',' << r.runtime_ms;
        os << "\n";
    }
    return os.str();
}

std::string emit(const Report& report, const std::string& format, bool with_runtime) {
    if (format == "json") return report.to_json(with_runtime).dump(2) + "\n";
    if (format == "csv") return report.to_csv(with_runtime);
    throw InvalidParameter("unknown report format '" + format + "' (expected json or csv)");
}

// ------------------------------------------------------------------- suites

namespace {

struct Outcome {
    bool ok;
    ordered_json computed;
};

class Runner {
public:
    explicit Runner(const VerifyConfig& config) : cfg_(config), f_{config.mutation} {}

    std::vector<CheckRecord> take() {
        std::sort(records_.begin(), records_.end(),
                  [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
        return std::move(records_);
    }

    void run(const std::string& suite) {
        static const std::map<std::string, void (Runner::*)()> table = {
            {"table", &Runner::table},
            {"identity2", &Runner::identity2},
            {"codim", &Runner::codim_suite},
            {"lemma3", &Runner::cubic_upper},
            {"lemma4", &Runner::factorial_lower},
            {"lemma5", &Runner::containment_in_T},
            {"lemma6", &Runner::two_stage},
            {"remark1", &Runner::unital_expansion},
            {"remark3", &Runner::hull_of_sum},
            {"sigma", &Runner::sigma},
            {"growth", &Runner::growth},
            {"analytic", &Runner::analytic},
            {"sequence", &Runner::sequence},
        };
        auto it = table.find(suite);
        if (it == table.end()) throw InvalidParameter("unknown suite '" + suite + "'");
        (this->*(it->second))();
    }

private:
    void check(const std::string& name, const std::string& anchor, ordered_json params, const std::string& expected,
               const std::function<Outcome()>& body) {
        CheckRecord r;
        r.name = name;
        r.anchor = anchor;
        r.params = std::move(params);
        r.expected = expected;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            Outcome o = body();
            r.computed = std::move(o.computed);
            r.verdict = o.ok ? "pass" : "fail";
        } catch (const ResourceLimit& e) {
            r.computed = ordered_json{{"error", e.what()}};
            r.verdict = "skipped (cap)";
        } catch (const Error& e) {
            r.computed = ordered_json{{"error", e.what()}};
            r.verdict = "fail";
        }
        r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        records_.push_back(std::move(r));
    }

    std::size_t cn(const AlgebraSpec& a, int n, std::optional<MonomialMode> mode = std::nullopt) const {
        if (n == 0) return 1;
        return codim(a, n, mode, cfg_.engine).rank;
    }

    AlgebraSpec bt_for(int T, int n) const { return f_.bt(T, sufficient_level_cap(T, n)); }

    static MultilinearPoly right_triple() {
        MultilinearPoly f(3);
        f.add_term(Monomial{"10100", {0, 1, 2}}, 1);
        return f;
    }

    static ordered_json labels(const AlgebraSpec& a, const std::vector<std::uint32_t>& idx) {
        ordered_json arr = ordered_json::array();
        for (auto i : idx) arr.push_back(a.basis().at(i).str());
        return arr;
    }

    // Multiplication tables against the defining rules, label by label.
    void table() {
        for (int T : {2, 3, 4})
            for (int cap : {1, 2, 3})
                check("table.bt.T" + std::to_string(T) + ".cap" + std::to_string(cap),
                      "z_i^j a = z_i^(j+1) for j < T, z_i^T b = z_(i+1)^1, all other basis products vanish",
                      {{"T", T}, {"cap", cap}}, "table matches the rule", [&] {
                          AlgebraSpec A = f_.bt(T, cap);
                          auto rule = [&](const BasisLabel& x, const BasisLabel& y) -> std::optional<BasisLabel> {
                              if (x.kind() != BasisLabel::Kind::Z) return std::nullopt;
                              if (y.kind() == BasisLabel::Kind::A && x.position() < T)
                                  return BasisLabel::z(x.level(), x.position() + 1);
                              if (y.kind() == BasisLabel::Kind::B && x.position() == T && x.level() < cap)
                                  return BasisLabel::z(x.level() + 1, 1);
                              return std::nullopt;
                          };
                          return compare_table(A, rule, static_cast<std::size_t>(2 + cap * T));
                      });
        for (int N : {1, 2, 3, 4})
            check("table.qn.N" + std::to_string(N), "th^s th^t = th^(s+t) when s+t <= N, zero otherwise", {{"N", N}},
                  "table matches the rule", [&] {
                      AlgebraSpec Q = f_.qn(N);
                      auto rule = [&](const BasisLabel& x, const BasisLabel& y) -> std::optional<BasisLabel> {
                          if (x.power() + y.power() <= N) return BasisLabel::theta(x.power() + y.power());
                          return std::nullopt;
                      };
                      return compare_table(Q, rule, static_cast<std::size_t>(N));
                  });
    }

    template <typename Rule>
    static Outcome compare_table(const AlgebraSpec& A, Rule rule, std::size_t expected_dim) {
        std::size_t mismatches = 0;
        std::string first;
        const auto n = static_cast<std::uint32_t>(A.dim());
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j) {
                auto want = rule(A.basis()[i], A.basis()[j]);
                auto got = A.product(i, j);
                bool ok;
                if (!want) ok = got.empty();
                else ok = got.size() == 1 && got[0].coeff == 1 && A.basis()[got[0].index] == *want;
                if (!ok) {
                    if (mismatches == 0) first = A.basis()[i].str() + " * " + A.basis()[j].str();
                    ++mismatches;
                }
            }
        ordered_json c{{"dim", A.dim()}, {"pairs", A.dim() * A.dim()}, {"mismatches", mismatches}};
        if (!first.empty()) c["first_mismatch"] = first;
        return {mismatches == 0 && A.dim() == expected_dim, c};
    }

    void identity2() {
        const std::string anchor = "x1(x2x3) = 0 is an identity";
        auto holds_on = [&](const std::string& name, ordered_json params, const std::function<AlgebraSpec()>& make) {
            check("identity2." + name, anchor, std::move(params), "identity; right-nilpotency flag set", [&] {
                AlgebraSpec A = make();
                IdentityResult r = is_identity(A, right_triple(), cfg_.engine);
                ordered_json c{{"holds", r.holds}, {"flag", A.right_nilpotent()}};
                if (!r.holds) c["witness"] = labels(A, r.witness);
                return Outcome{r.holds && A.right_nilpotent(), c};
            });
        };
        for (int T : {2, 3, 4})
            holds_on("bt.T" + std::to_string(T), {{"algebra", "B_T"}, {"T", T}, {"cap", 3}},
                     [this, T] { return f_.bt(T, 3); });
        holds_on("btn.2.3", {{"algebra", "B(2,3)"}}, [&] { return f_.btn(2, 3); });
        holds_on("r.2.3.5.6", {{"algebra", "B(2,3)+B(5,6)"}}, [&] { return f_.r({{2, 3}, {5, 6}}); });
        check("identity2.bt2_hull", "x1(x2x3) = 0 fails on the unital hull of B_2", {{"algebra", "B_2#"}, {"cap", 3}},
              "not an identity, with a witness", [&] {
                  AlgebraSpec A = unitalize(f_.bt(2, 3));
                  IdentityResult r = is_identity(A, right_triple(), cfg_.engine);
                  ordered_json c{{"holds", r.holds}};
                  if (!r.holds) {
                      c["witness"] = labels(A, r.witness);
                      ordered_json v = ordered_json::object();
                      for (const auto& [i, q] : r.value.terms()) v[A.basis()[i].str()] = to_string(q);
                      c["value"] = v;
                  }
                  return Outcome{!r.holds && !r.witness.empty(), c};
              });
    }

    void codim_suite() {
        AlgebraSpec B2 = f_.bt(2, 3);
        for (int n = 1; n <= 5; ++n)
            check("codim.bt2.n" + std::to_string(n), "c_n(B_2) agrees in full and left-normed enumeration",
                  {{"algebra", "B_2"}, {"cap", 3}, {"n", n}},
                  n == 1 ? "full = leftnormed = 1" : n == 2 ? "full = leftnormed = 2" : "full = leftnormed", [&] {
                      std::size_t full = cn(B2, n, MonomialMode::Full);
                      std::size_t left = cn(B2, n, MonomialMode::LeftNormed);
                      bool ok = full == left;
                      if (n == 1) ok = ok && full == 1;
                      if (n == 2) ok = ok && full == 2;
                      return Outcome{ok, {{"full", full}, {"leftnormed", left}}};
                  });
        for (int T : {2, 3})
            for (int n = 1; n <= 5; ++n) {
                const int cap = sufficient_level_cap(T, n);
                check("codim.cap_stability.T" + std::to_string(T) + ".n" + std::to_string(n),
                      "a degree n product in B_T never leaves the first (n-2)/T + 2 levels, so larger caps leave c_n unchanged",
                      {{"T", T}, {"n", n}, {"cap", cap}}, "c_n at cap equals c_n at cap + 1", [&, T, n, cap] {
                          std::size_t a = cn(f_.bt(T, cap), n), b = cn(f_.bt(T, cap + 1), n);
                          return Outcome{a == b, {{"c_n_cap", a}, {"c_n_cap_plus_1", b}}};
                      });
            }
        AlgebraSpec Q3 = f_.qn(3);
        for (int n = 1; n <= 3; ++n)
            check("codim.qn3.n" + std::to_string(n), "Q_N is commutative and associative with th^n != 0 for n <= N",
                  {{"algebra", "Q_3"}, {"n", n}}, "c_n = 1", [&] {
                      std::size_t c = cn(Q3, n, MonomialMode::Full);
                      return Outcome{c == 1, {{"c_n", c}}};
                  });
    }

    void cubic_upper() {
        const std::string anchor = "c_n(B_T) <= 2n^3 for n <= T";
        for (auto [T, nmax] : {std::pair{4, 4}, std::pair{5, 5}})
            for (int n = 1; n <= nmax; ++n)
                check("lemma3.bt" + std::to_string(T) + ".n" + std::to_string(n), anchor, {{"T", T}, {"n", n}},
                      "c_n <= " + std::to_string(2 * n * n * n), [&, T, n] {
                          std::size_t c = cn(bt_for(T, n), n);
                          return Outcome{c <= static_cast<std::size_t>(2 * n * n * n), {{"c_n", c}}};
                      });
        for (auto [T, n] : {std::pair{2, 2}, std::pair{2, 4}, std::pair{2, 5}, std::pair{3, 4}})
            check("lemma3.crude.T" + std::to_string(T) + ".n" + std::to_string(n),
                  "c_n(B_T) <= 2T^3 n!/T! from c_T <= 2T^3 and c_n <= n c_(n-1)", {{"T", T}, {"n", n}},
                  "c_n <= crude bound", [&, T, n] {
                      BigInt bound = iterated_upper_bound(T, n);
                      std::size_t c = cn(bt_for(T, n), n);
                      bool ok = BigInt(static_cast<unsigned long>(c)) <= bound;
                      if (T == 2 && n == 2) ok = ok && bound == 16;
                      if (T == 2 && n == 4) ok = ok && bound == 192;
                      return Outcome{ok, {{"c_n", c}, {"bound", bound.get_str()}}};
                  });
    }

    void factorial_lower() {
        const std::string anchor = "c_n(B_T) >= k! for n = kT + 1";
        for (auto [T, n] : {std::pair{2, 3}, std::pair{2, 5}, std::pair{2, 7}, std::pair{3, 4}, std::pair{3, 7}})
            check("lemma4.bt" + std::to_string(T) + ".n" + std::to_string(n), anchor, {{"T", T}, {"n", n}},
                  "c_n >= " + factorial_lower_bound(T, n).get_str(), [&, T, n] {
                      BigInt k_fact = factorial_lower_bound(T, n);
                      CodimResult r = codim(bt_for(T, n), n, std::nullopt, cfg_.engine);
                      bool ok = BigInt(static_cast<unsigned long>(r.rank)) >= k_fact;
                      return Outcome{ok, {{"c_n", r.rank}, {"k!", k_fact.get_str()}, {"mode", to_string(r.mode)},
                                          {"columns", r.cols}}};
                  });
        for (auto [T, k] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
            const int n = k * T + 1;
            check("lemma4.walk.bt" + std::to_string(T) + ".n" + std::to_string(n),
                  "the left-normed product z_1^1 (a^(T-1) b)^k of degree kT + 1 equals z_1^(k+1), so B_T^(kT+1) != 0",
                  {{"T", T}, {"n", n}, {"k", k}}, "value z[" + std::to_string(k + 1) + ",1]", [&, T, k, n] {
                      AlgebraSpec A = bt_for(T, n);
                      std::vector<std::uint32_t> subst{*A.find(BasisLabel::z(1, 1))};
                      for (int s = 0; s < k; ++s) {
                          for (int t = 0; t + 1 < T; ++t) subst.push_back(*A.find(BasisLabel::a()));
                          subst.push_back(*A.find(BasisLabel::b()));
                      }
                      std::vector<int> id(n);
                      for (int i = 0; i < n; ++i) id[i] = i;
                      Element v = evaluate(A, Monomial{left_comb(n), id}, subst);
                      Element want = Element::basis(*A.find(BasisLabel::z(k + 1, 1)));
                      ordered_json vals = ordered_json::object();
                      for (const auto& [i, q] : v.terms()) vals[A.basis()[i].str()] = to_string(q);
                      return Outcome{v == want, {{"value", vals}}};
                  });
        }
    }

    void containment_in_T() {
        for (int T : {2, 3, 4}) {
            const int n = T;
            check("lemma5.T" + std::to_string(T) + ".n" + std::to_string(n),
                  "a multilinear identity of B_T of degree n <= T is an identity of B_(T+1)", {{"T", T}, {"n", n}},
                  "P_n cap Id(B_T) contained in Id(B_(T+1))", [&, T, n] {
                      ContainmentResult r =
                          identity_containment(bt_for(T, n), bt_for(T + 1, n), n, std::nullopt, cfg_.engine);
                      return Outcome{r.holds, {{"holds", r.holds},
                                               {"rank_a", r.rank_a},
                                               {"rank_stacked", r.rank_stacked},
                                               {"mode", to_string(r.mode)}}};
                  });
        }
    }

    Outcome mutual(const AlgebraSpec& a, const AlgebraSpec& b, int n, std::optional<MonomialMode> mode) const {
        ContainmentResult ab = identity_containment(a, b, n, mode, cfg_.engine);
        ContainmentResult ba = identity_containment(b, a, n, mode, cfg_.engine);
        return {ab.holds && ba.holds,
                {{"a_in_b", ab.holds}, {"b_in_a", ba.holds}, {"rank_a", ab.rank_a}, {"rank_b", ba.rank_a},
                 {"rank_stacked", ab.rank_stacked}, {"mode", to_string(ab.mode)}}};
    }

    void two_stage() {
        const std::vector<Stage> stages{{2, 3}, {5, 6}};
        for (int n : {2, 3}) {
            check("lemma6.a.n" + std::to_string(n),
                  "for T_i <= n <= N_i, P_n cap Id(R) = P_n cap Id(B_(T_i) + B_(T_(i+1)))",
                  {{"stages", "(2,3,5,6)"}, {"n", n}, {"compare", "B_2 + B_5"}}, "equal identity spaces", [&, n] {
                      AlgebraSpec R = f_.r(stages);
                      AlgebraSpec S = direct_sum(bt_for(2, n), bt_for(5, n));
                      return mutual(R, S, n, std::nullopt);
                  });
        }
        for (auto [n, mode] : {std::pair{4, MonomialMode::Full}, std::pair{5, MonomialMode::LeftNormed}}) {
            check("lemma6.b.n" + std::to_string(n) + ".btn",
                  "for N_i < n <= T_(i+1), P_n cap Id(R) = P_n cap Id(B(T_(i+1), N_(i+1)))",
                  {{"stages", "(2,3,5,6)"}, {"n", n}, {"compare", "B(5,6)"}, {"mode", to_string(mode)}},
                  "equal identity spaces", [&, n, mode] { return mutual(f_.r(stages), f_.btn(5, 6), n, mode); });
            check("lemma6.b.n" + std::to_string(n) + ".bt",
                  "for N_i < n <= T_(i+1), P_n cap Id(R) = P_n cap Id(B_(T_(i+1)))",
                  {{"stages", "(2,3,5,6)"}, {"n", n}, {"compare", "B_5"}, {"mode", to_string(mode)}},
                  "equal identity spaces", [&, n, mode] { return mutual(f_.r(stages), bt_for(5, n), n, mode); });
        }
    }

    void unital_expansion() {
        check("remark1.bt2.random", "f is an identity of A# iff every component of f(1+x_1, ..., 1+x_n) is one of A",
              {{"algebra", "B_2"}, {"cap", 3}, {"polys", cfg_.random_polys}, {"max_degree", 4}, {"seed", cfg_.seed}},
              "hull verdict equals conjunction of component verdicts for every polynomial", [&] {
                  AlgebraSpec A = f_.bt(2, 3);
                  AlgebraSpec H = unitalize(A);
                  std::mt19937_64 rng(cfg_.seed);
                  std::map<int, std::vector<MultilinearPoly>> hull_ids, base_ids;
                  std::size_t agree = 0, hull_identities = 0;
                  ordered_json first_bad = nullptr;
                  for (int i = 0; i < cfg_.random_polys; ++i) {
                      const int d = 1 + i % 4;
                      MultilinearPoly f(d);
                      const int kind = i % 3;
                      if (kind < 2) {
                          auto& pool = kind == 0 ? hull_ids : base_ids;
                          if (!pool.count(d))
                              pool[d] = identity_space_basis(kind == 0 ? H : A, d, MonomialMode::Full, cfg_.engine);
                          for (const auto& g : pool[d]) {
                              long c = static_cast<long>(rng() % 5) - 2;
                              if (c != 0) f.add(g, c);
                          }
                      }
                      if (kind == 2 || f.is_zero()) {
                          const auto mons = enumerate_monomials(d, MonomialMode::Full, cfg_.engine.caps);
                          const int terms = 1 + static_cast<int>(rng() % 4);
                          for (int t = 0; t < terms; ++t) {
                              long c = static_cast<long>(rng() % 7) - 3;
                              if (c == 0) c = 1;
                              f.add(MultilinearPoly::monomial(mons[rng() % mons.size()], c));
                          }
                      }
                      const bool lhs = is_identity(H, f, cfg_.engine).holds;
                      bool rhs = true;
                      for (const auto& [key, comp] : expand_unital(f))
                          if (!is_identity(A, comp, cfg_.engine).holds) {
                              rhs = false;
                              break;
                          }
                      if (lhs) ++hull_identities;
                      if (lhs == rhs) ++agree;
                      else if (first_bad.is_null()) first_bad = ordered_json{{"index", i}, {"degree", d}};
                  }
                  ordered_json c{{"agree", agree}, {"hull_identities", hull_identities}};
                  if (!first_bad.is_null()) c["first_disagreement"] = first_bad;
                  return Outcome{agree == static_cast<std::size_t>(cfg_.random_polys), c};
              });
    }

    void hull_of_sum() {
        for (int n = 1; n <= 4; ++n)
            check("remark3.n" + std::to_string(n), "Id(R#) = Id(B(T_1,N_1)# + B(T_2,N_2)# + ...)",
                  {{"stages", "(2,3,5,6)"}, {"n", n}}, "equal identity spaces", [&, n] {
                      AlgebraSpec lhs = unitalize(f_.r({{2, 3}, {5, 6}}));
                      AlgebraSpec rhs = direct_sum(unitalize(f_.btn(2, 3)), unitalize(f_.btn(5, 6)));
                      return mutual(lhs, rhs, n, std::nullopt);
                  });
    }

    void sigma() {
        struct Case {
            std::string name;
            std::function<AlgebraSpec()> make;
        };
        const std::vector<Case> cases{{"bt2", [&] { return f_.bt(2, 3); }},
                                      {"qn3", [&] { return f_.qn(3); }},
                                      {"btn23", [&] { return f_.btn(2, 3); }}};
        for (const auto& cs : cases)
            for (int n = 1; n <= 4; ++n)
                check("sigma." + cs.name + ".n" + std::to_string(n), "c_n(A#) <= sum_k C(n,k) c_k(A), c_0 = 1",
                      {{"algebra", cs.name}, {"n", n}}, "c_n(A#) <= binomial sum", [&, n] {
                          AlgebraSpec A = cs.make();
                          AlgebraSpec H = unitalize(A);
                          BigInt sum = 0;
                          ordered_json ck = ordered_json::array();
                          for (int k = 0; k <= n; ++k) {
                              std::size_t c = cn(A, k);
                              ck.push_back(c);
                              sum += binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)) *
                                     BigInt(static_cast<unsigned long>(c));
                          }
                          std::size_t hull = cn(H, n);
                          return Outcome{BigInt(static_cast<unsigned long>(hull)) <= sum,
                                         {{"c_n_hull", hull}, {"sum", sum.get_str()}, {"c_k", ck}}};
                      });
    }

    void growth() {
        struct Case {
            std::string name;
            std::function<AlgebraSpec(int)> make;
            int max_n;
        };
        const std::vector<Case> cases{
            {"bt2", [&](int) { return f_.bt(2, 3); }, 5},
            {"bt3", [&](int n) { return bt_for(3, n); }, 5},
            {"bt4", [&](int n) { return bt_for(4, n); }, 4},
            {"bt5", [&](int n) { return bt_for(5, n); }, 5},
            {"btn23", [&](int) { return f_.btn(2, 3); }, 4},
        };
        for (const auto& cs : cases)
            check("growth." + cs.name, "c_n(A) <= n c_(n-1)(A) when x1(x2x3) = 0 holds in A",
                  {{"algebra", cs.name}, {"max_n", cs.max_n}}, "flag set and c_n <= n c_(n-1) for 1 <= n <= max_n",
                  [&] {
                      ordered_json table = ordered_json::array();
                      bool ok = true;
                      std::size_t prev = 1;
                      for (int n = 1; n <= cs.max_n; ++n) {
                          AlgebraSpec A = cs.make(n);
                          if (!A.right_nilpotent()) return Outcome{false, {{"flag", false}}};
                          std::size_t c = cn(A, n);
                          table.push_back(c);
                          if (c > static_cast<std::size_t>(n) * prev) ok = false;
                          prev = c;
                      }
                      return Outcome{ok, {{"flag", true}, {"c_n", table}}};
                  });
    }

    void analytic() {
        check("analytic.phi_half", "Phi(1/2) = 2", {{"x", "1/2"}}, "exact point 2", [] {
            Interval v = phi(Rational(1, 2), 128);
            return Outcome{v.is_point() && mpfr_cmp_ui(v.lo(), 2) == 0, {{"value", v.str(10)}}};
        });
        check("analytic.phi_endpoints", "Phi(0) = Phi(1) = 1", {{"x", "0, 1"}}, "exact points 1", [] {
            Interval a = phi(Rational(0), 128), b = phi(Rational(1), 128);
            bool ok = a.is_point() && b.is_point() && mpfr_cmp_ui(a.lo(), 1) == 0 && mpfr_cmp_ui(b.lo(), 1) == 0;
            return Outcome{ok, {{"phi(0)", a.str(5)}, {"phi(1)", b.str(5)}}};
        });
        check("analytic.phi_quarter", "Phi(1/4) = 4 / 3^(3/4)", {{"x", "1/4"}, {"precision", 256}},
              "enclosure overlaps 4 / 27^(1/4)", [] {
                  Interval v = phi(Rational(1, 4), 256);
                  Interval w = Interval::from(4L, 256) / Interval::from(27L, 256).root(4);
                  bool ok = !v.certainly_less(w) && !v.certainly_greater(w);
                  return Outcome{ok, {{"phi", v.str(20)}, {"reference", w.str(20)}}};
              });
        check("analytic.phi_symmetry", "Phi(x) = Phi(1-x)", {{"grid", 64}}, "enclosures overlap on the grid", [] {
            for (int i = 1; i < 64; ++i) {
                Interval a = phi(Rational(i, 64), 128), b = phi(Rational(64 - i, 64), 128);
                if (a.certainly_less(b) || a.certainly_greater(b)) return Outcome{false, {{"i", i}}};
            }
            return Outcome{true, {{"points", 63}}};
        });
        check("analytic.phi_grid", "Phi increases on [0,1/2] and Phi <= 2 on [0,1]", {{"grid_size", 1024}},
              "certified on the grid", [] {
                  BoundCheck c = check_phi_properties(1024);
                  return Outcome{c.holds(), c.to_json()["witness"]};
              });
        check("analytic.stirling", "m! lies strictly between the theta = 1 and theta = 0 Stirling values",
              {{"m", "1..20"}}, "strict for every m", [] {
                  for (unsigned long m = 1; m <= 20; ++m)
                      if (!check_stirling(m).holds()) return Outcome{false, {{"first_failure", m}}};
                  return Outcome{true, {{"checked", 20}}};
              });
        check("analytic.binomial", "C(n,k) <= sqrt(n/(k(n-k))) n^n/(k^k (n-k)^(n-k)), and C(n,k) < 2 Phi(k/n)^n for n > 2k",
              {{"n", "2..60"}, {"k", "1..n-1"}}, "every pair holds", [] {
                  std::size_t pairs = 0, chained = 0;
                  for (unsigned long n = 2; n <= 60; ++n)
                      for (unsigned long k = 1; k < n; ++k) {
                          BoundCheck c = check_binomial_bound(n, k);
                          ++pairs;
                          if (n > 2 * k) ++chained;
                          if (!c.holds())
                              return Outcome{false, {{"n", n}, {"k", k}, {"check", c.to_json()}}};
                      }
                  return Outcome{true, {{"pairs", pairs}, {"phi_chain_pairs", chained}}};
              });
        check("analytic.cubic_sum", "sum_k C(n,k) 2k^3 <= 2n^3 2^n", {{"n", "1..60"}}, "closed form and bound hold",
              [] {
                  for (long n = 1; n <= 60; ++n)
                      if (!check_cubic_binomial_sum(BigInt(n)).holds()) return Outcome{false, {{"n", n}}};
                  return Outcome{true, {{"checked", 60}}};
              });
    }

    void sequence() {
        for (long a : {3L, 4L})
            check("sequence.first_threshold.alpha" + std::to_string(a), "2m^3 < alpha^m for all m >= T_1, T_1 minimal",
                  {{"alpha", a}}, a == 3 ? "T_1 = 6, fails at 5 (250 > 243)" : "T_1 <= 6 and minimal", [a] {
                      Threshold t = find_first_threshold(Rational(a));
                      bool ok = t.minimal && t.certificates.size() >= 2 && t.certificates[0].passed() &&
                                t.certificates[1].passed();
                      if (a == 3) ok = ok && t.value == 6;
                      if (a == 4) ok = ok && t.value <= 6;
                      ordered_json c{{"T1", t.value.get_str()}};
                      if (t.certificates.size() >= 2) c["predecessor"] = t.certificates[1].check.to_json()["witness"];
                      return Outcome{ok, c};
                  });
        check("sequence.plan.alpha3", "chain T_1 < N_1 < T_2 < N_2 < T_3 with every certificate re-verified",
              {{"alpha", "3"}, {"steps", 2}, {"mode", "bound"}}, "all verification items pass", [] {
                  SequencePlan plan = build_plan(Rational(3), 2, SequenceMode::Bound);
                  PlanVerification v = verify_plan(SequencePlan::from_json(plan.to_json()));
                  std::size_t pass = 0, audit = 0;
                  for (const auto& i : v.items) (i.status == "pass" ? pass : audit) += i.status != "fail";
                  auto brief = [](const BigInt& z) {
                      std::string s = z.get_str();
                      return s.size() <= 30 ? s : std::to_string(mpz_sizeinbase(z.get_mpz_t(), 2)) + "-bit";
                  };
                  ordered_json st = ordered_json::array();
                  for (const auto& s : plan.stages) {
                      ordered_json e{{"T", brief(s.T)}};
                      if (s.N) e["N"] = {{"lo", brief(s.N->lo)}, {"hi", brief(s.N->hi)}};
                      st.push_back(e);
                  }
                  return Outcome{v.passed(), {{"stages", st}, {"items_pass", pass}, {"items_audit", audit}}};
              });
        check("sequence.tamper", "a plan with T_2 decremented is rejected", {{"alpha", "3"}, {"steps", 1}},
              "verification fails", [] {
                  SequencePlan plan = build_plan(Rational(3), 1, SequenceMode::Bound);
                  plan.stages[1].T -= 1;
                  PlanVerification v = verify_plan(plan);
                  return Outcome{!v.passed(), {{"rejected", !v.passed()}}};
              });
    }

    const VerifyConfig& cfg_;
    AlgebraFactory f_;
    std::vector<CheckRecord> records_;
};

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"table",  "identity2", "codim",   "lemma3", "lemma4",
                                                "lemma5", "lemma6",    "remark1", "remark3", "sigma",
                                                "growth", "analytic",  "sequence"};
    return names;
}

Report run_suite(const VerifyConfig& config) {
    std::vector<std::string> wanted;
    for (const auto& s : config.suites) {
        if (s == "all" || s == "default") {
            wanted.insert(wanted.end(), suite_names().begin(), suite_names().end());
        } else if (std::find(suite_names().begin(), suite_names().end(), s) != suite_names().end()) {
            wanted.push_back(s);
        } else {
            throw InvalidParameter("unknown suite '" + s + "'");
        }
    }
    std::vector<std::string> unique;
    for (const auto& s : wanted)
        if (std::find(unique.begin(), unique.end(), s) == unique.end()) unique.push_back(s);

    Report report;
    report.version = std::string(kToolName) + " " + kToolVersion;
    for (std::size_t i = 0; i < config.suites.size(); ++i) report.suite += (i ? "," : "") + config.suites[i];
    Runner runner(config);
    for (const auto& s : unique) runner.run(s);
    report.records = runner.take();
    return report;
}

}  // namespace picodim
