#pragma once

#include "picodim/monomial.hpp"

#include <string>
#include <string_view>

namespace picodim {

struct PolyParseLimits {
    int max_depth = 64;
    int max_variables = 32;
    std::size_t max_terms = 100000;
};

/// Grammar:
///   expr     := ['+'|'-'] term (('+'|'-') term)*
///   term     := [rational '*'] factor+
///   factor   := variable | '(' expr ')'
///   variable := 'x' digits
///   rational := integer ['/' integer]
///
/// Juxtaposition is a left-associative product and parenthesized sums
/// distribute. Every monomial must use each of x1..xn exactly once, where n
/// is the inferred degree. The single token "0" is the zero polynomial.
/// Throws ParseError with the offending byte offset.
MultilinearPoly parse_poly(std::string_view text, const PolyParseLimits& limits = {});

/// Left child printed bare, right child parenthesized when it is a product,
/// so parse_poly(format_poly(f)) == f.
std::string format_monomial(const Monomial& m);
std::string format_poly(const MultilinearPoly& f);

}  // namespace picodim
