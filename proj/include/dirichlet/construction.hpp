#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dirichlet/int128.hpp"
#include "dirichlet/randpoly.hpp"
#include "dirichlet/series.hpp"

namespace dirichlet::construction {

inline constexpr unsigned kMinBlock = 2;
/// p_{1023}^9 < 2^128, so every block index up to k = 9 fits an Index.
inline constexpr unsigned kMaxBlock = 9;
/// Blocks up to this k are materialized; larger ones are stream-only.
inline constexpr unsigned kMaxMaterializedBlock = 5;

/// Block k: a degree-k polynomial in 2^k variables, variable j bound to the
/// prime p_{2^k + j}.
struct BlockSpec {
  unsigned k = 0;
  std::uint32_t n_vars = 0;
  std::uint32_t degree = 0;
  std::uint64_t first_prime_index = 0;  // 2^k
  std::uint64_t last_prime_index = 0;   // 2^{k+1} - 1
  std::vector<std::uint64_t> primes;

  std::uint64_t count() const;
  /// p_{2^k}^k
  Index min_index() const;
  /// p_{2^{k+1}-1}^k
  Index max_index() const;
};

/// Throws InvalidArgument unless kMinBlock <= k <= kMaxBlock.
BlockSpec block_spec(unsigned k);

namespace detail {

// Visits every nondecreasing index sequence of length `degree` over
// `primes` in lexicographic order (= canonical monomial rank order), passing
// (rank, n) with n the product of the selected primes.
template <class Visit>
void for_each_product(const std::vector<std::uint64_t>& primes, unsigned degree, Visit&& visit) {
  const auto n_vars = static_cast<std::uint32_t>(primes.size());
  const unsigned depth = degree - 1;
  std::vector<std::uint32_t> idx(depth, 0);
  std::vector<Index> prefix(depth + 1, 1);
  for (unsigned d = 0; d < depth; ++d) prefix[d + 1] = prefix[d] * primes[idx[d]];
  std::uint64_t rank = 0;
  while (true) {
    const std::uint32_t start = depth ? idx[depth - 1] : 0;
    const Index base = prefix[depth];
    for (std::uint32_t l = start; l < n_vars; ++l) visit(rank++, base * primes[l]);
    if (depth == 0) return;
    int i = static_cast<int>(depth) - 1;
    while (i >= 0 && idx[static_cast<unsigned>(i)] == n_vars - 1) --i;
    if (i < 0) return;
    const auto pos = static_cast<unsigned>(i);
    ++idx[pos];
    for (unsigned j = pos + 1; j < depth; ++j) idx[j] = idx[pos];
    for (unsigned d = pos; d < depth; ++d) prefix[d + 1] = prefix[d] * primes[idx[d]];
  }
}

}  // namespace detail

struct SupportEntry {
  std::uint64_t rank;
  Index n;
};

/// Streams (rank, n) for every monomial of block k: n = prod_j p_j^{alpha_j}.
/// Works for every k up to kMaxBlock; block 6 has ~1.2e8 entries.
template <class Visit>
void for_each_support(const BlockSpec& spec, Visit&& visit) {
  detail::for_each_product(spec.primes, spec.degree, visit);
}

/// Materialized support of block k (ascending rank). Throws ResourceError for
/// k > kMaxMaterializedBlock.
std::vector<SupportEntry> block_support(unsigned k);

/// The seeded sign polynomial behind block k.
randpoly::SignedHomogeneousPolynomial block_polynomial(unsigned k, std::uint64_t seed);

/// Stream-only block handle; re-enumerates on demand.
class BlockStream {
 public:
  BlockStream(unsigned k, std::uint64_t seed);

  const BlockSpec& spec() const noexcept { return spec_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t count() const { return spec_.count(); }

  /// visit(rank, n, sign) for every supported index.
  template <class Visit>
  void for_each(Visit&& visit) const {
    for_each_support(spec_, [&](std::uint64_t rank, Index n) {
      visit(rank, n, poly_.sign_unchecked(rank));
    });
  }

 private:
  BlockSpec spec_;
  std::uint64_t seed_;
  randpoly::SignedHomogeneousPolynomial poly_;
};

/// Coefficients of block k: a_n = sign of n's monomial rank. Throws
/// ResourceError for k > kMaxMaterializedBlock (use BlockStream).
series::DirichletCoefficients build_block(unsigned k, std::uint64_t seed);

struct BlockManifest {
  unsigned k;
  std::uint64_t seed;
  std::uint64_t count;
  Index min_n;
  Index max_n;
};

/// Blocks 2..k_max: k <= 5 materialized into one coefficient map, larger k
/// kept as streams.
struct ConstructedSeries {
  unsigned k_max = 0;
  std::uint64_t seed = 0;
  series::DirichletCoefficients materialized;
  std::vector<BlockStream> streaming;

  std::vector<BlockManifest> manifest() const;
};

ConstructedSeries build_series(unsigned k_max, std::uint64_t seed);

/// sum over block k's support of n^{-sigma}, by full enumeration.
double block_absolute_sum(unsigned k, double sigma);

struct LineSupOptions {
  double t_min = 0.0;
  double t_max = 1e4;
  std::size_t samples = 4096;
  std::uint64_t sample_seed = 0;
  /// Golden-section refinement around the best sample.
  bool refine = true;
};

/// max over sampled t of |sum_{n in block k} a_n n^{-sigma-it}|, a lower bound
/// on the supremum along the line Re s = sigma.
randpoly::SupEstimate block_line_sup(unsigned k, std::uint64_t seed, double sigma,
                                     const LineSupOptions& options = {});

/// Radii p_j^{-sigma} of block k's variables, for polytorus comparisons.
std::vector<double> block_radii(unsigned k, double sigma);

/// c2 2^{k(k+1)/2} sqrt(ln k) / (k 2^k / (2 c1))^{k sigma}. Requires k >= 2.
double theoretical_block_sup_bound(unsigned k, double sigma, double c1, double c2);

/// 2^{k^2 (1-sigma)} / (3 c1 k)^{k (1+sigma)}. Requires k >= 2.
double divergence_lower_bound(unsigned k, double sigma, double c1);
/// Natural log of divergence_lower_bound, for k far beyond the constructible range.
double divergence_lower_bound_log(double k, double sigma, double c1);

/// Materialized series truncated at N plus the shifted zeta coefficients
/// n^{-lambda}; the sum has a uniform-but-not-absolute strip of width lambda.
/// Requires 0 <= lambda <= 1/2.
series::DirichletCoefficients combine_width(const ConstructedSeries& series, double lambda,
                                            std::uint64_t N);

/// Abscissae of f(s) + zeta(s + lambda): A = 1, B = C = 1 - lambda.
series::AbscissaTriple combined_abscissae(double lambda);

void write_manifest_jsonl(std::ostream& out, const std::vector<BlockManifest>& blocks);

}  // namespace dirichlet::construction
