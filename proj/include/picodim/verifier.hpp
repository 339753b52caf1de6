#pragma once

#include "picodim/algebra.hpp"
#include "picodim/engine.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace picodim {

inline constexpr const char* kToolName = "picodim";
inline constexpr const char* kToolVersion = "0.1.0";

/// Single-entry corruptions of the B_2 and Q_N tables used to test that the
/// suites notice broken constructions.
enum class Mutation {
    None,
    BtZ11TimesA,    // z[1,1] a -> 0 in B_2
    BtZ12TimesB,    // z[1,2] b -> 0 in B_2
    BtATimesZ12,    // a z[1,2] -> z[1,1] in B_2
    QnTh1TimesTh2,  // th1 th2 -> 0 in Q_N
    QnTh1TimesTh1,  // th1 th1 -> 0 in Q_N
};

std::string to_string(Mutation m);
Mutation mutation_from_string(const std::string& s);
std::vector<Mutation> all_mutations();

/// Constructors used by every suite; a mutation is applied where it fits.
struct AlgebraFactory {
    Mutation mutation = Mutation::None;

    AlgebraSpec bt(int T, int level_cap) const;
    AlgebraSpec qn(int N) const;
    /// B_T (x) Q_N with a level cap sufficient for degree N.
    AlgebraSpec btn(int T, int N) const;
    /// Direct sum of btn over the stages.
    AlgebraSpec r(const std::vector<Stage>& stages) const;
};

struct CheckRecord {
    std::string name;
    /// Statement being checked, in words.
    std::string anchor;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::string expected;
    nlohmann::ordered_json computed = nlohmann::ordered_json::object();
    /// "pass", "fail" or "skipped (cap)".
    std::string verdict;
    double runtime_ms = 0;
};

struct Report {
    std::string suite;
    std::string version;
    std::vector<CheckRecord> records;

    bool passed() const;
    /// 0 when nothing failed, 1 otherwise.
    int exit_code() const;

    nlohmann::ordered_json to_json(bool with_runtime = true) const;
    static Report from_json(const nlohmann::ordered_json& j);
    /// Header plus one row per record; params and computed as compact JSON.
    std::string to_csv(bool with_runtime = true) const;
};

struct VerifyConfig {
    /// Suite names; "all" or "default" expands to every suite. Empty runs nothing.
    std::vector<std::string> suites;
    EngineConfig engine;
    Mutation mutation = Mutation::None;
    int random_polys = 200;
    unsigned long long seed = 20240601;
};

/// Suite names in canonical order.
const std::vector<std::string>& suite_names();

/// Throws InvalidParameter for an unknown suite name. Records are sorted by name.
Report run_suite(const VerifyConfig& config);

/// Text of the report in the requested format ("json" or "csv").
std::string emit(const Report& report, const std::string& format, bool with_runtime = true);

}  // namespace picodim
