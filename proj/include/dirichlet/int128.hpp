#pragma once

#include <string>
#include <string_view>

namespace dirichlet {

/// Index type for Dirichlet coefficients. Block indices reach p^9 with
/// p ~ 8161, which needs more than 64 bits.
using Index = unsigned __int128;

std::string to_string(Index value);

/// Parses a non-empty decimal string. Throws InvalidArgument on bad input
/// and OverflowError when the value exceeds 128 bits.
Index parse_index(std::string_view text);

/// Natural logarithm of an index at double precision.
double log_index(Index value);

}  // namespace dirichlet
