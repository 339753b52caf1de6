#pragma once

#include "picodim/algebra.hpp"
#include "picodim/scalar.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace picodim {

enum class MonomialMode { LeftNormed, Full };

std::string to_string(MonomialMode mode);

/// Degree caps for monomial enumeration. Exceeding them raises ResourceLimit.
struct MonomialCaps {
    int left_normed = 8;
    int full = 6;
};

/// Bracketing shapes are stored as preorder codes: '1' for an internal node,
/// '0' for a leaf. "0" is a single variable, "100" is y1y2, "11000" is the
/// left comb (y1y2)y3 and "10100" is y1(y2y3).
bool is_valid_shape(const std::string& code);
int shape_leaves(const std::string& code);
std::string left_comb(int leaves);
bool is_left_comb(const std::string& code);

/// All shapes with the given number of leaves, in canonical order:
/// descending lexicographic order of the codes, so the left comb comes first.
const std::vector<std::string>& shapes(int leaves);

/// A bracketing with variables on its leaves. perm[p] is the 0-based index
/// of the variable sitting on leaf p (leaves numbered left to right).
/// Degree 0 (empty shape and perm) stands for the scalar 1.
struct Monomial {
    std::string shape;
    std::vector<int> perm;

    int degree() const noexcept { return static_cast<int>(perm.size()); }
    bool left_normed() const { return is_left_comb(shape); }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Canonical order: degree, then shape in canonical order, then permutation
/// lexicographic.
struct MonomialLess {
    bool operator()(const Monomial& x, const Monomial& y) const;
};

std::uint64_t dim_pn(int n, MonomialMode mode);

/// Rank of a permutation of {0..n-1} in lexicographic order.
std::uint64_t perm_rank(std::span<const int> perm);

/// Canonical enumeration of all multilinear monomials of degree n.
std::vector<Monomial> enumerate_monomials(int n, MonomialMode mode, const MonomialCaps& caps = {});

/// Linear combination of multilinear monomials of a fixed degree.
class MultilinearPoly {
public:
    using Terms = std::map<Monomial, Rational, MonomialLess>;

    explicit MultilinearPoly(int degree = 0) : degree_(degree) {}

    static MultilinearPoly constant(const Rational& c);
    static MultilinearPoly monomial(Monomial m, const Rational& c = 1);

    int degree() const noexcept { return degree_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    const Terms& terms() const noexcept { return terms_; }

    /// Coefficient of the degree-0 monomial; only meaningful for degree 0.
    Rational constant_term() const;

    /// Throws InvalidParameter unless m is multilinear of this degree.
    void add_term(const Monomial& m, const Rational& c);
    MultilinearPoly& add(const MultilinearPoly& other, const Rational& scale = 1);

    friend bool operator==(const MultilinearPoly&, const MultilinearPoly&) = default;

private:
    int degree_;
    Terms terms_;
};

/// Value of the monomial when variable v is replaced by basis vector subst[v].
Element evaluate(const AlgebraSpec& algebra, const Monomial& m, std::span<const std::uint32_t> subst);
Element evaluate(const AlgebraSpec& algebra, const MultilinearPoly& f, std::span<const std::uint32_t> subst);

/// Components of f under x_j -> 1 + x_j. Key is the sorted set of 1-based
/// variable numbers kept; the component is relabelled order-preservingly onto
/// x1..x|S|. The empty key holds a degree-0 polynomial (a scalar). Components
/// that vanish are omitted.
std::map<std::vector<int>, MultilinearPoly> expand_unital(const MultilinearPoly& f);

}  // namespace picodim
