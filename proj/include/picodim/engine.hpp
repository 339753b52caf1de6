#pragma once

#include "picodim/algebra.hpp"
#include "picodim/monomial.hpp"
#include "picodim/rank.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace picodim {

struct EngineConfig {
    MonomialCaps caps;
    int threads = 1;
    RankOptions rank;
    /// Upper limit on the number of nonzero partial products kept per shape.
    std::size_t max_support = 20'000'000;
};

/// Left-normed when the algebra satisfies x1(x2x3) = 0, full otherwise.
MonomialMode resolve_mode(const AlgebraSpec& algebra, std::optional<MonomialMode> requested);

/// Evaluation matrix of the degree-n monomials (columns, canonical order)
/// against all substitutions of basis vectors (rows: one per substitution and
/// target coordinate). Rows that vanish are never generated; the remaining
/// rows are scaled to primitive integer vectors, deduplicated and sorted.
struct EvalMatrix {
    int n = 0;
    MonomialMode mode = MonomialMode::Full;
    IntMatrix matrix;
    std::size_t raw_rows = 0;
};

/// Throws InvalidParameter for left-normed mode on an algebra whose
/// right-nilpotency check failed, ResourceLimit beyond the degree caps.
EvalMatrix eval_matrix(const AlgebraSpec& algebra, int n, MonomialMode mode, const EngineConfig& config = {});

struct CodimResult {
    int n = 0;
    MonomialMode mode = MonomialMode::Full;
    std::uint64_t dim_pn = 0;
    std::size_t rank = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t nnz = 0;
    RankResult info;
};

CodimResult codim(const AlgebraSpec& algebra, int n, std::optional<MonomialMode> mode = std::nullopt,
                  const EngineConfig& config = {});

/// dim P_n - c_n, with P_n restricted to left-normed monomials in that mode.
std::uint64_t identity_space_dim(const AlgebraSpec& algebra, int n, std::optional<MonomialMode> mode = std::nullopt,
                                 const EngineConfig& config = {});

struct IdentityResult {
    bool holds = true;
    /// Lexicographically smallest substitution (basis index per variable)
    /// with nonzero value, when the polynomial is not an identity.
    std::vector<std::uint32_t> witness;
    Element value;
};

/// Degree 0 means a scalar: an identity exactly when it is zero.
IdentityResult is_identity(const AlgebraSpec& algebra, const MultilinearPoly& f, const EngineConfig& config = {});

struct ContainmentResult {
    bool holds = false;
    std::size_t rank_a = 0;
    std::size_t rank_stacked = 0;
    MonomialMode mode = MonomialMode::Full;
    Certification certification = Certification::Exact;
};

/// P_n ∩ Id(A) ⊆ P_n ∩ Id(B), decided by rank(M_A; M_B) = rank(M_A). Auto
/// mode is left-normed only if both algebras are right nilpotent.
ContainmentResult identity_containment(const AlgebraSpec& a, const AlgebraSpec& b, int n,
                                       std::optional<MonomialMode> mode = std::nullopt,
                                       const EngineConfig& config = {});

/// Rational basis of P_n ∩ Id(A), one polynomial per kernel vector.
std::vector<MultilinearPoly> identity_space_basis(const AlgebraSpec& algebra, int n, MonomialMode mode,
                                                  const EngineConfig& config = {});

}  // namespace picodim
