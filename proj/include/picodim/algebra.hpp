#pragma once

#include "picodim/scalar.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace picodim {

/// Structured tag of a basis vector.
///
/// Ordinary generators are `a`, `b`, `z[i,j]` (level i, position j) and
/// `th[s]` (power of the nilpotent variable). Constructions add `e` (adjoined
/// unit), `<u,v>` (tensor factor pair) and `k:u` (summand k of a direct sum).
/// Labels loaded from files that match none of these become `Named`.
class BasisLabel {
public:
    enum class Kind { A, B, Z, Theta, Unit, Pair, Summand, Named };

    static BasisLabel a();
    static BasisLabel b();
    static BasisLabel z(int level, int position);
    static BasisLabel theta(int power);
    static BasisLabel unit();
    static BasisLabel pair(BasisLabel left, BasisLabel right);
    static BasisLabel summand(int index, BasisLabel inner);
    static BasisLabel named(std::string name);

    /// Inverse of str(); anything not matching the label grammar becomes Named.
    static BasisLabel parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    int level() const noexcept { return first_; }
    int position() const noexcept { return second_; }
    int power() const noexcept { return first_; }
    int summand_index() const noexcept { return first_; }
    const BasisLabel& left() const { return children_.at(0); }
    const BasisLabel& right() const { return children_.at(1); }
    const BasisLabel& inner() const { return children_.at(0); }
    const std::string& name() const noexcept { return name_; }

    std::string str() const;

    friend bool operator==(const BasisLabel& x, const BasisLabel& y);

private:
    Kind kind_ = Kind::Named;
    int first_ = 0;
    int second_ = 0;
    std::vector<BasisLabel> children_;
    std::string name_;
};

struct ProductTerm {
    std::uint32_t index;
    Rational coeff;

    friend bool operator==(const ProductTerm&, const ProductTerm&) = default;
};

/// Nonzero structure constants of one product e_left * e_right.
struct ProductEntry {
    std::uint32_t left;
    std::uint32_t right;
    std::vector<ProductTerm> terms;
};

/// Finite-dimensional algebra given by a basis and sparse structure constants.
///
/// Immutable after construction, so instances can be shared freely between
/// threads. The constructor validates indices, merges repeated terms, drops
/// zero coefficients and decides right nilpotency of class 3 (the identity
/// x1(x2x3) = 0) by an exhaustive check over basis triples.
class AlgebraSpec {
public:
    AlgebraSpec() = default;
    AlgebraSpec(std::vector<BasisLabel> basis, std::vector<ProductEntry> products,
                std::optional<int> nilpotency_index = std::nullopt);

    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<BasisLabel>& basis() const noexcept { return basis_; }

    /// All nonzero products, sorted by (left, right).
    const std::vector<ProductEntry>& products() const noexcept { return products_; }

    /// Structure constants of e_i * e_j; empty span means zero.
    std::span<const ProductTerm> product(std::uint32_t i, std::uint32_t j) const;

    /// x1(x2x3) vanishes on every basis triple.
    bool right_nilpotent() const noexcept { return right_nilpotent_; }

    /// If set, every product of this many elements (any bracketing) is zero.
    std::optional<int> nilpotency_index() const noexcept { return nilpotency_index_; }

    std::optional<std::uint32_t> find(const BasisLabel& label) const;

    /// The basis contains a top-level adjoined unit.
    bool has_unit() const;

    /// Every structure constant is an integer.
    bool integral() const noexcept { return integral_; }

private:
    std::vector<BasisLabel> basis_;
    std::vector<ProductEntry> products_;
    std::vector<std::int32_t> dense_slot_;
    std::unordered_map<std::uint64_t, std::uint32_t> sparse_slot_;
    std::optional<int> nilpotency_index_;
    bool right_nilpotent_ = true;
    bool integral_ = true;
};

/// Sparse vector over the basis of some AlgebraSpec; no zero coefficients.
class Element {
public:
    using Term = std::pair<std::uint32_t, Rational>;

    Element() = default;
    static Element basis(std::uint32_t index, const Rational& coeff = 1);

    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    Rational coeff(std::uint32_t index) const;

    Element& add(const Element& other, const Rational& scale = 1);
    Element scaled(const Rational& scale) const;

    /// Builds from unsorted terms with possible repeats.
    static Element from_terms(std::vector<Term> terms);

    friend bool operator==(const Element&, const Element&) = default;

private:
    std::vector<Term> terms_;
};

Element multiply(const AlgebraSpec& algebra, const Element& x, const Element& y);

/// Smallest truncation level at which make_bt(T, level) carries every
/// nonzero left-normed product of length n. A product starting at z_T^1
/// takes its first carry immediately and then one every T steps.
int sufficient_level_cap(int T, int n);

/// B_T truncated at level_cap: basis a, b, z[i,j] (1 <= i <= level_cap, 1 <= j <= T).
AlgebraSpec make_bt(int T, int level_cap);

/// Truncated polynomial algebra without constant term, th^(N+1) = 0.
AlgebraSpec make_qn(int N);

AlgebraSpec tensor(const AlgebraSpec& left, const AlgebraSpec& right);
AlgebraSpec direct_sum(std::span<const AlgebraSpec> summands);
AlgebraSpec direct_sum(const AlgebraSpec& first, const AlgebraSpec& second);

/// Adjoins an external unit e. Throws InvalidParameter if A already has one.
AlgebraSpec unitalize(const AlgebraSpec& algebra);

/// B_T (x) Q_N, with the level cap sufficient for products up to length N.
AlgebraSpec make_btn(int T, int N);

struct Stage {
    int T;
    int N;
};

/// Direct sum of make_btn over the stages relevant to degrees <= degree_cap:
/// every stage with T <= degree_cap, plus the first stage beyond it.
AlgebraSpec make_r(std::span<const Stage> stages, int degree_cap);

/// Algebra of the given dimension with identically zero multiplication.
AlgebraSpec make_zero(int dim);

/// Copy of `algebra` with the single product e_i * e_j replaced.
AlgebraSpec with_product(const AlgebraSpec& algebra, std::uint32_t i, std::uint32_t j,
                         std::vector<ProductTerm> terms);

}  // namespace picodim
