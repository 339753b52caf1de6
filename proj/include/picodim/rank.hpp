#pragma once

#include "picodim/scalar.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace picodim {

/// Sparse integer row, sorted by column, no zero entries.
using IntRow = std::vector<std::pair<std::uint32_t, BigInt>>;

struct IntMatrix {
    std::size_t cols = 0;
    std::vector<IntRow> rows;

    std::size_t nnz() const;
};

enum class FieldStrategy { Auto, Rational, Modular };

enum class Certification { Exact, ModularCertified, Probabilistic };

std::string to_string(FieldStrategy s);
std::string to_string(Certification c);

struct RankOptions {
    FieldStrategy field = FieldStrategy::Auto;
    /// Largest nonzero count handled by exact elimination (directly under
    /// Auto, as certification under Modular).
    std::size_t exact_budget = 200000;
    int primes = 2;
    std::uint64_t seed = 0x5eed5eedULL;
};

struct RankResult {
    std::size_t rank = 0;
    FieldStrategy field = FieldStrategy::Rational;
    Certification certification = Certification::Exact;
    /// Number of primes that produced the reported rank (modular only).
    int agreeing_primes = 0;
};

/// Rank over Q by fraction-free elimination with content normalization.
std::size_t exact_rank(const IntMatrix& m);

/// Rank over Z/p for a prime p < 2^63.
std::size_t modular_rank(const IntMatrix& m, std::uint64_t p);

/// Deterministic list of distinct 62-bit primes derived from the seed.
std::vector<std::uint64_t> pick_primes(int count, std::uint64_t seed);

RankResult compute_rank(const IntMatrix& m, const RankOptions& options = {});

/// Reduced row echelon form over Q of the row space: pivot rows with leading
/// coefficient 1 and zeros in every other pivot column, sorted by pivot.
std::vector<std::vector<std::pair<std::uint32_t, Rational>>> row_echelon(const IntMatrix& m);

/// Basis of {v : M v = 0} as dense rational vectors of length m.cols, one per
/// non-pivot column, in increasing order of that column.
std::vector<std::vector<Rational>> nullspace_basis(const IntMatrix& m);

/// Scales a rational row to a primitive integer row with positive leading
/// entry. Zero entries are dropped.
IntRow primitive_row(const std::vector<std::pair<std::uint32_t, Rational>>& row);

}  // namespace picodim
