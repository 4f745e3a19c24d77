#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "dirichlet/series.hpp"

namespace dirichlet::zeta {

using Complex = std::complex<double>;

inline constexpr double kDefaultSingularTolerance = 1e-8;

/// sum_{n<=N} (-1)^{n+1} n^{-s}, ascending. Requires N >= 1.
Complex eta_partial(Complex s, std::uint64_t N);

struct EtaOptions {
  /// Minimum number of directly summed terms before the Euler tail. The
  /// evaluator raises this to |s| + 64 so every difference order used is in
  /// its decaying regime.
  std::uint64_t direct_terms = 32;
  double target = 1e-10;
  unsigned max_depth = 64;
};

struct EtaValue {
  Complex value;
  std::uint64_t direct_terms = 0;
  unsigned depth = 0;
  /// Modulus of the last Euler term added.
  double last_term = 0.0;
};

/// eta(s) as a direct partial sum plus the Euler transform
/// sum_k (-1)^k Delta^k u_0 / 2^{k+1} of the alternating tail. The depth is
/// adaptive up to max_depth; NumericError if the target is not reached.
EtaValue eta_euler(Complex s, const EtaOptions& options = {});

/// Shorthand for eta_euler(s).value.
Complex eta(Complex s);

/// zeta(s) = eta(s) / (1 - 2^{1-s}) for Re s > 0. `direct_terms` seeds the
/// Euler evaluator (0 keeps its default). Throws SingularFactorError when
/// |1 - 2^{1-s}| < tol (s = 1 + 2 pi i k / ln 2) and InvalidArgument when
/// Re s <= 0.
Complex zeta_via_eta(Complex s, std::uint64_t direct_terms = 0,
                     double tol = kDefaultSingularTolerance);

/// Running partial sums followed by `order` levels of running arithmetic
/// means, one accumulator per level.
class CesaroAccumulator {
 public:
  explicit CesaroAccumulator(unsigned order);

  void push(Complex term);

  unsigned order() const noexcept { return static_cast<unsigned>(levels_.size() - 1); }
  std::uint64_t count() const noexcept { return count_; }
  /// Level 0 is the partial sum; level j the j-fold iterated mean.
  Complex value(unsigned level) const { return levels_.at(level); }
  Complex top() const { return levels_.back(); }

 private:
  std::uint64_t count_ = 0;
  std::vector<Complex> levels_;
  std::vector<Complex> running_;
};

/// Top-level Cesaro mean after N terms; `term(n)` yields the n-th term,
/// 1-based. order 0 returns the N-th partial sum.
Complex cesaro_value(const std::function<Complex(std::uint64_t)>& term, unsigned order,
                     std::uint64_t N);

/// Iterated Cesaro mean of the eta series terms at any s.
Complex cesaro_eta(Complex s, unsigned order, std::uint64_t N);

/// zeta(s) continued through the Cesaro-summed eta series; usable for
/// Re s <= 0 with enough averaging order (e.g. order 1 at s = 0, order 2 at
/// s = -1).
Complex zeta_via_cesaro(Complex s, unsigned order, std::uint64_t N,
                        double tol = kDefaultSingularTolerance);

/// Theoretical abscissae of the eta series: conditional convergence for
/// Re s > 0, absolute for Re s > 1, uniform convergence only where absolute.
series::AbscissaTriple eta_abscissae();
/// The zeta series: A = B = C = 1.
series::AbscissaTriple zeta_abscissae();

}  // namespace dirichlet::zeta
