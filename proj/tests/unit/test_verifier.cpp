#include "picodim/errors.hpp"
#include "picodim/verifier.hpp"

#include <doctest.h>

#include <algorithm>
#include <sstream>

using namespace picodim;

namespace {

Report run(std::vector<std::string> suites, Mutation m = Mutation::None) {
    VerifyConfig cfg;
    cfg.suites = std::move(suites);
    cfg.mutation = m;
    return run_suite(cfg);
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_SUITE("verifier") {
    TEST_CASE("empty configuration") {
        Report r = run({});
        CHECK(r.records.empty());
        CHECK(r.passed());
        CHECK(r.exit_code() == 0);
        CHECK(r.version == "picodim 0.1.0");
    }

    TEST_CASE("unknown suite") { CHECK_THROWS_AS(run({"nonsense"}), InvalidParameter); }

    TEST_CASE("suite selection and ordering") {
        Report r = run({"lemma6"});
        CHECK(r.records.size() == 6);
        for (const auto& c : r.records) {
            CHECK(c.name.rfind("lemma6.", 0) == 0);
            CHECK(c.verdict == "pass");
            CHECK_FALSE(c.anchor.empty());
        }
        Report both = run({"table", "identity2", "table"});
        CHECK(std::is_sorted(both.records.begin(), both.records.end(),
                             [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; }));
        CHECK(both.records.size() == run({"table"}).records.size() + run({"identity2"}).records.size());
    }

    TEST_CASE("json and csv emission") {
        Report r = run({"table", "analytic"});
        const std::string j1 = emit(r, "json", false);
        Report back = Report::from_json(nlohmann::ordered_json::parse(j1));
        CHECK(emit(back, "json", false) == j1);
        CHECK(emit(r, "json", true) == emit(r, "json", true));
        const std::string csv = emit(r, "csv", false);
        CHECK(count_lines(csv) == r.records.size() + 1);
        CHECK(csv.rfind("name,anchor,params,expected,computed,verdict\n", 0) == 0);
        CHECK(emit(r, "csv", true).find(",runtime_ms\n") != std::string::npos);
        CHECK_THROWS_AS(emit(r, "xml"), InvalidParameter);
        CHECK_THROWS_AS(Report::from_json(nlohmann::ordered_json::parse("{\"suite\":1}")), ParseError);
        auto doc = r.to_json(false);
        CHECK(doc["summary"]["pass"] == r.records.size());
        CHECK_FALSE(doc["records"][0].contains("runtime_ms"));
    }

    TEST_CASE("parameters re-run the same check") {
        // records carry what is needed to repeat them from the command line
        Report r = run({"lemma4"});
        for (const auto& c : r.records) {
            CHECK(c.params.contains("T"));
            CHECK(c.params.contains("n"));
        }
    }

    TEST_CASE("corruptions are recognised by name") {
        for (Mutation m : all_mutations()) CHECK(mutation_from_string(to_string(m)) == m);
        CHECK(mutation_from_string("none") == Mutation::None);
        CHECK_THROWS_AS(mutation_from_string("bt-everything"), InvalidParameter);
        AlgebraFactory f{Mutation::BtZ11TimesA};
        CHECK(f.bt(2, 2).product(2, 0).empty());
        CHECK_FALSE(f.bt(3, 2).product(2, 0).empty());  // only B_2 is corrupted
        CHECK(AlgebraFactory{Mutation::QnTh1TimesTh2}.qn(3).product(0, 1).empty());
        CHECK_FALSE(AlgebraFactory{Mutation::QnTh1TimesTh2}.qn(3).product(1, 0).empty());
    }
}

TEST_SUITE("mutation") {
    TEST_CASE("every corruption flips a verdict beyond the table check") {
        const std::vector<std::string> suites{"identity2", "codim", "lemma3", "lemma4", "lemma5", "growth"};
        for (Mutation m : all_mutations()) {
            Report r = run(suites, m);
            std::size_t downstream = 0;
            for (const auto& c : r.records)
                if (c.verdict == "fail" && c.name.rfind("table.", 0) != 0) ++downstream;
            CHECK_MESSAGE(downstream > 0, to_string(m));
            CHECK(r.exit_code() == 1);
            Report t = run({"table"}, m);
            CHECK_FALSE(t.passed());
        }
    }

    TEST_CASE("the z[1,1] a corruption breaks the degree kT+1 walk") {
        Report r = run({"lemma4"}, Mutation::BtZ11TimesA);
        for (const auto& c : r.records)
            if (c.name.rfind("lemma4.walk.bt2", 0) == 0) CHECK(c.verdict == "fail");
    }
}
