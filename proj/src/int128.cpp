#include "dirichlet/int128.hpp"

#include <algorithm>
#include <cmath>

#include "dirichlet/errors.hpp"

namespace dirichlet {

std::string to_string(Index value) {
  if (value == 0) return "0";
  std::string digits;
  while (value != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Index parse_index(std::string_view text) {
  if (text.empty()) throw InvalidArgument("empty index string");
  constexpr Index kMax = ~Index{0};
  Index value = 0;
  for (char c : text) {
    if (c < '0' || c > '9')
      throw InvalidArgument("index string is not a decimal integer: " +
                            std::string(text));
    const auto digit = static_cast<unsigned>(c - '0');
    if (value > (kMax - digit) / 10)
      throw OverflowError("index exceeds 128 bits: " + std::string(text));
    value = value * 10 + digit;
  }
  return value;
}

double log_index(Index value) {
  // Split into high and low 64-bit halves so the conversion keeps 53 bits.
  const auto hi = static_cast<std::uint64_t>(value >> 64);
  const auto lo = static_cast<std::uint64_t>(value);
  if (hi == 0) return std::log(static_cast<double>(lo));
  const double approx = std::ldexp(static_cast<double>(hi), 64) + static_cast<double>(lo);
  return std::log(approx);
}

}  // namespace dirichlet
