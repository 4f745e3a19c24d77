#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dirichlet::monomials {

/// A degree-`degree` monomial z_1^{e_1} ... z_n^{e_n}; the exponents sum to
/// `degree`.
struct ExponentVector {
  std::vector<std::uint32_t> exponents;
  std::uint32_t degree = 0;

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
};

/// Exact C(n_vars + degree - 1, degree). Throws InvalidArgument when
/// n_vars == 0 and OverflowError when the count does not fit in 64 bits.
std::uint64_t count_monomials(std::uint64_t n_vars, std::uint64_t degree);

/// Exact binomial coefficient with 128-bit intermediates; OverflowError if the
/// result exceeds 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Streams every exponent vector of the given degree in lexicographically
/// decreasing order: (d,0,...,0) first, (0,...,0,d) last. The position in this
/// order is the monomial's canonical rank.
///
///     for (ExponentStream s(3, 2); !s.done(); s.advance()) use(s.current());
class ExponentStream {
 public:
  ExponentStream(std::uint32_t n_vars, std::uint32_t degree, std::uint64_t first_rank = 0);

  bool done() const noexcept { return done_; }
  const ExponentVector& current() const noexcept { return current_; }
  std::uint64_t rank() const noexcept { return rank_; }
  void advance();

 private:
  ExponentVector current_;
  std::uint64_t rank_ = 0;
  bool done_ = false;
};

/// Materializes the whole stream; intended for small cases.
std::vector<ExponentVector> enumerate_exponents(std::uint32_t n_vars, std::uint32_t degree);

/// Exponent vector at a canonical rank, without enumerating its predecessors.
ExponentVector unrank(std::uint32_t n_vars, std::uint32_t degree, std::uint64_t rank);

/// Canonical rank of an exponent vector (inverse of unrank).
std::uint64_t rank_of(const ExponentVector& monomial);

/// Nondecreasing variable-index form: (2,0,1) -> [0,0,2]. Lexicographically
/// decreasing exponent vectors correspond to lexicographically increasing
/// index sequences.
std::vector<std::uint32_t> to_index_sequence(const ExponentVector& monomial);

}  // namespace dirichlet::monomials
