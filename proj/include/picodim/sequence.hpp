#pragma once

#include "picodim/bounds.hpp"
#include "picodim/engine.hpp"
#include "picodim/scalar.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace picodim {

/// Bound mode brackets each N_j between certified crude bounds; exact mode
/// computes N_j from codimensions and is limited to engine-cap sizes.
enum class SequenceMode { Bound, Exact };

std::string to_string(SequenceMode mode);
SequenceMode sequence_mode_from_string(const std::string& s);

/// A check together with the verdict the plan relies on. Minimality
/// witnesses are recorded with expected = Fails.
struct Certificate {
    std::string role;
    Verdict expected = Verdict::Holds;
    BoundCheck check;

    bool passed() const noexcept { return check.verdict == expected; }
    nlohmann::ordered_json to_json() const;
    static Certificate from_json(const nlohmann::ordered_json& j);
};

struct Threshold {
    BigInt value;
    /// False when the search stopped at a certified bracket (lo, value].
    bool minimal = true;
    std::optional<BigInt> bracket_lo;
    std::vector<Certificate> certificates;
};

/// N_j in bound mode: c_n(B_T) < alpha^n for T <= n < lo, c_hi(B_T) >= alpha^hi.
/// In exact mode lo = hi.
struct CrossingRange {
    BigInt lo;
    BigInt hi;
    bool lo_exact = true;
    bool hi_minimal = true;
};

struct PlanStage {
    BigInt T;
    bool T_minimal = true;
    std::optional<CrossingRange> N;
    std::vector<Certificate> certificates;
};

struct SequencePlan {
    Rational alpha;
    SequenceMode mode = SequenceMode::Bound;
    bool toy = false;
    std::vector<PlanStage> stages;
    std::vector<std::string> notes;

    nlohmann::ordered_json to_json() const;
    static SequencePlan from_json(const nlohmann::ordered_json& j);
};

struct SequenceOptions {
    PrecisionLadder ladder;
    /// Replaces the computed T_1; the plan is then labelled as a toy plan.
    std::optional<BigInt> T1_override;
    /// Next-threshold search gives up beyond scan_factor * N * (j+1).
    long scan_factor = 10;
    /// Brackets wider than one unit are accepted once their relative width
    /// drops below 2^-bracket_bits and the value has more than unit_bits bits.
    int bracket_bits = 40;
    std::size_t unit_bits = 4096;
    EngineConfig engine;
};

/// Minimal T with 2m^3 < alpha^m for every m >= T.
Threshold find_first_threshold(const Rational& alpha, const SequenceOptions& options = {});

/// N_j for B_T. Bound mode: lo = least n >= T where the crude upper bound
/// 2T^3 n!/T! reaches alpha^n, hi = least n = kT+1 with k! >= alpha^n.
/// Exact mode: least n with c_n(B_T) >= alpha^n (ResourceLimit past the caps).
struct Crossing {
    CrossingRange range;
    std::vector<Certificate> certificates;
};
Crossing find_crossing(const Rational& alpha, const BigInt& T, SequenceMode mode, const SequenceOptions& options = {});

/// Least n > 2N satisfying the stage inequality with index j.
/// Throws CertificationFailure past the scan limit.
Threshold find_next_threshold(const Rational& alpha, int j, const BigInt& N, const SequenceOptions& options = {});

/// `steps` complete stages (T_j, N_j) followed by the closing T_{steps+1}.
SequencePlan build_plan(const Rational& alpha, int steps, SequenceMode mode, const SequenceOptions& options = {});

struct VerificationItem {
    std::string name;
    /// "pass", "fail" or "audit".
    std::string status;
    std::string detail;
    std::optional<BoundCheck> check;
};

struct PlanVerification {
    std::vector<VerificationItem> items;
    bool passed() const;
    nlohmann::ordered_json to_json() const;
};

/// Recomputes every claim of the plan from its numbers alone.
PlanVerification verify_plan(const SequencePlan& plan, const SequenceOptions& options = {});

}  // namespace picodim
