#include "dirichlet/monomials.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "dirichlet/errors.hpp"

namespace dirichlet::monomials {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  using U128 = unsigned __int128;
  constexpr U128 kMax128 = ~U128{0};
  U128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const U128 factor = n - k + i;
    // result * factor / i stays exact: it equals C(n - k + i, i).
    if (result > kMax128 / factor) throw OverflowError("binomial: intermediate exceeds 128 bits");
    result = result * factor / i;
  }
  if (result > std::numeric_limits<std::uint64_t>::max())
    throw OverflowError("binomial: result exceeds 64 bits");
  return static_cast<std::uint64_t>(result);
}

std::uint64_t count_monomials(std::uint64_t n_vars, std::uint64_t degree) {
  if (n_vars == 0) throw InvalidArgument("count_monomials: n_vars must be >= 1");
  return binomial(n_vars + degree - 1, degree);
}

ExponentStream::ExponentStream(std::uint32_t n_vars, std::uint32_t degree,
                               std::uint64_t first_rank) {
  if (n_vars == 0) throw InvalidArgument("ExponentStream: n_vars must be >= 1");
  if (first_rank >= count_monomials(n_vars, degree)) {
    done_ = true;
    current_.exponents.assign(n_vars, 0);
    current_.degree = degree;
    rank_ = first_rank;
    return;
  }
  current_ = unrank(n_vars, degree, first_rank);
  rank_ = first_rank;
}

void ExponentStream::advance() {
  if (done_) return;
  auto& e = current_.exponents;
  const std::size_t last = e.size() - 1;
  const std::uint32_t tail = e[last];
  e[last] = 0;
  std::size_t i = last;
  while (i > 0 && e[i - 1] == 0) --i;
  if (i == 0) {
    // Everything was in the last slot: (0, ..., 0, d) has no successor.
    e[last] = tail;
    done_ = true;
    ++rank_;
    return;
  }
  --e[i - 1];
  e[i] = tail + 1;
  ++rank_;
}

std::vector<ExponentVector> enumerate_exponents(std::uint32_t n_vars, std::uint32_t degree) {
  std::vector<ExponentVector> out;
  out.reserve(count_monomials(n_vars, degree));
  for (ExponentStream s(n_vars, degree); !s.done(); s.advance()) out.push_back(s.current());
  return out;
}

ExponentVector unrank(std::uint32_t n_vars, std::uint32_t degree, std::uint64_t rank) {
  if (n_vars == 0) throw InvalidArgument("unrank: n_vars must be >= 1");
  if (rank >= count_monomials(n_vars, degree)) throw InvalidArgument("unrank: rank out of range");
  ExponentVector v;
  v.exponents.assign(n_vars, 0);
  v.degree = degree;
  std::uint32_t remaining = degree;
  for (std::uint32_t j = 0; j + 1 < n_vars; ++j) {
    const std::uint32_t vars_after = n_vars - j - 1;
    for (std::uint32_t e = remaining + 1; e-- > 0;) {
      const std::uint64_t block = count_monomials(vars_after, remaining - e);
      if (rank < block) {
        v.exponents[j] = e;
        remaining -= e;
        break;
      }
      rank -= block;
    }
  }
  v.exponents[n_vars - 1] = remaining;
  return v;
}

std::uint64_t rank_of(const ExponentVector& monomial) {
  const auto& e = monomial.exponents;
  if (e.empty()) throw InvalidArgument("rank_of: empty exponent vector");
  const std::uint64_t total = std::accumulate(e.begin(), e.end(), std::uint64_t{0});
  if (total != monomial.degree) throw InvalidArgument("rank_of: exponents do not sum to degree");
  const auto n_vars = static_cast<std::uint32_t>(e.size());
  std::uint64_t rank = 0;
  std::uint32_t remaining = monomial.degree;
  for (std::uint32_t j = 0; j + 1 < n_vars; ++j) {
    const std::uint32_t vars_after = n_vars - j - 1;
    for (std::uint32_t higher = remaining; higher > e[j]; --higher)
      rank += count_monomials(vars_after, remaining - higher);
    remaining -= e[j];
  }
  return rank;
}

std::vector<std::uint32_t> to_index_sequence(const ExponentVector& monomial) {
  std::vector<std::uint32_t> out;
  out.reserve(monomial.degree);
  for (std::uint32_t j = 0; j < monomial.exponents.size(); ++j)
    out.insert(out.end(), monomial.exponents[j], j);
  return out;
}

}  // namespace dirichlet::monomials
