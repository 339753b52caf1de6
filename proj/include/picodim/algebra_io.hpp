#pragma once

#include "picodim/algebra.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace picodim {

/// {"basis": [labels...], "products": [[i, j, [[k, "p/q"], ...]], ...]}
nlohmann::json algebra_to_json(const AlgebraSpec& algebra);

/// Inverse of algebra_to_json. Throws ParseError on malformed documents and
/// InvalidParameter when the structure constants violate the invariants.
AlgebraSpec algebra_from_json(const nlohmann::json& doc);

AlgebraSpec load_algebra_file(const std::string& path);
void save_algebra_file(const AlgebraSpec& algebra, const std::string& path);

/// Builds an algebra from the CLI shorthand:
///
///   bt:T=2,cap=3        B_T truncated at level cap (cap defaults to 3)
///   qn:N=4              Q_N
///   btn:T=2,N=3         B_T (x) Q_N
///   r:2,3,5,6           direct sum of B(T_j,N_j) over (T_1,N_1,T_2,N_2,...)
///   zero:dim=2          zero multiplication
///   json:path           algebra file
///   unital(X)  sum(X;Y;...)  tensor(X;Y)
///
/// Errors are ParseError carrying the byte offset of the problem.
AlgebraSpec parse_descriptor(std::string_view text);

}  // namespace picodim
