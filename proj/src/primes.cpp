#include "dirichlet/primes.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "dirichlet/errors.hpp"

namespace dirichlet::primes {

namespace {

constexpr std::uint64_t kSegmentBytes = 1u << 18;

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

std::uint64_t isqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

// Upper bound on p_n (Rosser: p_n < n (ln n + ln ln n) for n >= 6).
std::uint64_t nth_prime_upper_bound(std::uint64_t n) {
  if (n < 6) return 13;
  const double x = static_cast<double>(n);
  return static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 1;
}

struct Cache {
  std::mutex mutex;
  std::shared_ptr<const std::vector<std::uint64_t>> primes =
      std::make_shared<const std::vector<std::uint64_t>>();
};

Cache& cache() {
  static Cache instance;
  return instance;
}

}  // namespace

PrimeTable sieve_primes(std::uint64_t limit) {
  if (limit < 2) throw InvalidArgument("sieve_primes: limit must be >= 2");
  PrimeTable table;
  table.limit = limit;
  const std::vector<std::uint64_t> base = simple_sieve(isqrt(limit));

  std::vector<char> segment(kSegmentBytes);
  for (std::uint64_t low = 2; low <= limit; low += kSegmentBytes) {
    const std::uint64_t high = std::min(limit, low + kSegmentBytes - 1);
    std::fill(segment.begin(), segment.end(), 1);
    for (std::uint64_t p : base) {
      if (p * p > high) break;
      std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
      for (std::uint64_t j = start; j <= high; j += p) segment[j - low] = 0;
    }
    for (std::uint64_t i = low; i <= high; ++i)
      if (segment[i - low]) table.primes.push_back(i);
  }
  return table;
}

std::shared_ptr<const std::vector<std::uint64_t>> first_primes(std::size_t min_count) {
  Cache& c = cache();
  std::lock_guard lock(c.mutex);
  if (c.primes->size() < min_count) {
    // Grow geometrically so that repeated small requests stay cheap.
    const std::size_t target = std::max<std::size_t>(min_count, 2 * c.primes->size());
    auto table = sieve_primes(nth_prime_upper_bound(target));
    table.primes.resize(target);
    c.primes = std::make_shared<const std::vector<std::uint64_t>>(std::move(table.primes));
  }
  return c.primes;
}

std::uint64_t nth_prime(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("nth_prime: n must be >= 1");
  return (*first_primes(n))[n - 1];
}

std::vector<std::uint64_t> prime_window(std::uint64_t first, std::size_t count) {
  if (first == 0) throw InvalidArgument("prime_window: indices are 1-based");
  const auto snapshot = first_primes(first - 1 + count);
  return {snapshot->begin() + static_cast<std::ptrdiff_t>(first - 1),
          snapshot->begin() + static_cast<std::ptrdiff_t>(first - 1 + count)};
}

PntRatioReport pnt_ratio_scan(std::uint64_t n_max, double c1) {
  if (n_max < 2) throw InvalidArgument("pnt_ratio_scan: n_max must be >= 2");
  if (!(c1 > 1.0)) throw InvalidArgument("pnt_ratio_scan: c1 must exceed 1");
  const auto snapshot = first_primes(n_max);
  PntRatioReport report;
  report.n_max = n_max;
  report.c1 = c1;
  report.min_ratio = INFINITY;
  report.max_ratio = -INFINITY;
  report.all_within = true;
  const double lower = 1.0 / c1;
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    const double x = static_cast<double>(n);
    const double ratio = static_cast<double>((*snapshot)[n - 1]) / (x * std::log(x));
    if (ratio < report.min_ratio) {
      report.min_ratio = ratio;
      report.argmin = n;
    }
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.argmax = n;
    }
    if (!(ratio > lower && ratio < c1)) report.all_within = false;
  }
  return report;
}

}  // namespace dirichlet::primes
