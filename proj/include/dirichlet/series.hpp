#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "dirichlet/int128.hpp"

namespace dirichlet::series {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultEntryCap = 10'000'000;

struct Term {
  Index n;
  double a;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Finite, sparse, real coefficient sequence of sum_n a_n n^{-s}. Entries are
/// kept sorted by index with no stored zeros.
class DirichletCoefficients {
 public:
  explicit DirichletCoefficients(std::size_t cap = kDefaultEntryCap) : cap_(cap) {}

  /// Sorts, sums duplicate indices and drops zeros. Throws InvalidArgument on
  /// index 0 and ResourceError if more than `cap` entries remain.
  static DirichletCoefficients from_terms(std::vector<Term> terms,
                                          std::size_t cap = kDefaultEntryCap);

  /// Sets a_n; a zero value erases the entry.
  void set(Index n, double a);
  /// a_n, or 0 when n is not stored.
  double at(Index n) const;

  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t cap() const noexcept { return cap_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  auto begin() const noexcept { return terms_.begin(); }
  auto end() const noexcept { return terms_.end(); }
  Index min_index() const;
  Index max_index() const;

  /// Entries with n <= limit.
  std::span<const Term> up_to(Index limit) const;

  friend bool operator==(const DirichletCoefficients& x, const DirichletCoefficients& y) {
    return x.terms_ == y.terms_;
  }

 private:
  std::vector<Term> terms_;
  std::size_t cap_;
};

/// a_n = (-1)^{n+1} for n <= count.
DirichletCoefficients eta_coefficients(std::uint64_t count);

/// sum_{n <= N} a_n n^{-s}, ascending n, with n^{-s} = exp(-s ln n).
Complex partial_sum(const DirichletCoefficients& coeffs, Complex s, Index N);

/// sum_{n <= N} |a_n| n^{-sigma}.
double absolute_partial_sum(const DirichletCoefficients& coeffs, double sigma, Index N);

/// sum_{n <= N} |a_n|^2 n^{-2b}: the long-time mean of |F(b + it)|^2.
double diagonal_square_sum(const DirichletCoefficients& coeffs, double b, Index N);

enum class AverageMode { closed_form, quadrature };

/// (1 / 2T) int_{-T}^{T} |sum_{n <= N} a_n n^{-b-it}|^2 dt.
/// closed_form expands the square: the diagonal plus
/// 2 sum_{n<m} a_n a_m (nm)^{-b} sin(T ln(m/n)) / (T ln(m/n)).
/// quadrature integrates numerically with panels narrower than half the
/// fastest oscillation period. Throws InvalidArgument if T <= 0.
double time_average_square(const DirichletCoefficients& coeffs, double b, double T, Index N,
                           AverageMode mode, double tolerance = 1e-9);

/// (2/T) sum_{n<m} |a_n a_m| (nm)^{-b} / ln(m/n): bounds the distance between
/// the time average and the diagonal.
double sinc_tail_bound(const DirichletCoefficients& coeffs, double b, double T, Index N);

/// max over t in {t_max * i / samples : i = 0..samples} of |sum_{n<=N} a_n n^{-b-it}|.
/// A finite-sample stand-in for the supremum on the line Re s = b.
double sampled_line_sup(const DirichletCoefficients& coeffs, double b, Index N, double t_max,
                        std::size_t samples);

struct CauchySchwarzCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// lhs = sum |a_n| n^{-(b+eps+1/2)};
/// rhs = (sum |a_n|^2 n^{-2b})^{1/2} (sum_{n<=N} n^{-1-2eps})^{1/2}.
CauchySchwarzCheck cauchy_schwarz_check(const DirichletCoefficients& coeffs, double b, double eps,
                                        std::uint64_t N);

/// Pointwise sum; exact zeros are dropped. ResourceError if the result has
/// more entries than the larger of the two caps.
DirichletCoefficients add(const DirichletCoefficients& x, const DirichletCoefficients& y);

/// a_n = n^{-lambda} for 1 <= n <= N, so that sum a_n n^{-s} = sum n^{-(s+lambda)}.
DirichletCoefficients zeta_shift_coeffs(double lambda, std::uint64_t N,
                                        std::size_t cap = kDefaultEntryCap);

enum class Provenance { theoretical, empirical_diagnostic };

/// Abscissae of absolute (A), uniform (B) and conditional (C) convergence.
struct AbscissaTriple {
  double sigma_abs;
  double sigma_unif;
  double sigma_conv;
  Provenance provenance;

  /// Validates C <= B <= A and A - C <= 1 (when finite).
  static AbscissaTriple make(double sigma_abs, double sigma_unif, double sigma_conv,
                             Provenance provenance);

  double uniform_strip_width() const { return sigma_abs - sigma_unif; }
  double conditional_strip_width() const { return sigma_abs - sigma_conv; }
};

/// Growth-rate diagnostics over the stored entries: for N in `checkpoints`,
/// log(sum_{n<=N} |a_n|) / log N and log|sum_{n<=N} a_n| / log N. When the
/// corresponding series diverges these approach A and C from the data.
/// No correctness contract.
struct GrowthDiagnostic {
  std::vector<double> checkpoints;
  std::vector<double> abs_exponent;
  std::vector<double> conv_exponent;
};
GrowthDiagnostic growth_exponents(const DirichletCoefficients& coeffs,
                                  std::span<const std::uint64_t> checkpoints);

/// One JSON object per line: {"n":"<decimal>","a":<number>}.
void write_jsonl(std::ostream& out, const DirichletCoefficients& coeffs);
DirichletCoefficients read_jsonl(std::istream& in, std::size_t cap = kDefaultEntryCap);

}  // namespace dirichlet::series
