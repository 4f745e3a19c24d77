#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace dirichlet::primes {

/// Constant bracketing p_n / (n ln n) from both sides. Any c1 > 1 exists by
/// Chebyshev-type bounds; 3 is validated up to n = 10^6 in the tests.
inline constexpr double kDefaultC1 = 3.0;

/// All primes up to `limit`, ascending.
struct PrimeTable {
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> primes;

  std::size_t count() const noexcept { return primes.size(); }
};

/// Segmented sieve of Eratosthenes. Throws InvalidArgument if limit < 2.
PrimeTable sieve_primes(std::uint64_t limit);

/// The n-th prime, 1-indexed (p_1 = 2). Served from a process-wide cache that
/// grows on demand; safe to call concurrently.
std::uint64_t nth_prime(std::uint64_t n);

/// The `count` consecutive primes p_first, ..., p_{first + count - 1}.
std::vector<std::uint64_t> prime_window(std::uint64_t first, std::size_t count);

/// Immutable view of at least the first `min_count` primes. Later growth of
/// the cache never mutates a snapshot that has been handed out.
std::shared_ptr<const std::vector<std::uint64_t>> first_primes(std::size_t min_count);

struct PntRatioReport {
  std::uint64_t n_max = 0;
  double c1 = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::uint64_t argmin = 0;
  std::uint64_t argmax = 0;
  /// True iff 1/c1 < p_n / (n ln n) < c1 for every n in [2, n_max].
  bool all_within = false;
};

/// Scans p_n / (n ln n) over n in [2, n_max]. Requires n_max >= 2, c1 > 1.
PntRatioReport pnt_ratio_scan(std::uint64_t n_max, double c1 = kDefaultC1);

}  // namespace dirichlet::primes
