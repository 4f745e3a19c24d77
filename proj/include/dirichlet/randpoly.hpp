#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace dirichlet::randpoly {

using Complex = std::complex<double>;

/// Free constant in the random-polynomial sup bound. The classical theorem
/// only asserts that some c2 exists; 1 is the default.
inline constexpr double kDefaultC2 = 1.0;
/// Empirical slack applied to kahane_bound in statistical tests. Not part of
/// any theorem.
inline constexpr double kEmpiricalKahaneMultiplier = 3.0;

inline constexpr std::uint64_t kDefaultSupSamples = 100'000;
inline constexpr unsigned kDefaultRefinementSweeps = 2;

struct AllPlus {};
struct Seeded {
  std::uint64_t seed = 0;
};
using SignSource = std::variant<AllPlus, Seeded>;

/// Homogeneous polynomial of a fixed degree with every coefficient +1 or -1.
/// Coefficients are indexed by the canonical monomial rank; seeded signs are a
/// pure function of (seed, n_vars, degree, rank).
class SignedHomogeneousPolynomial {
 public:
  SignedHomogeneousPolynomial(std::uint32_t n_vars, std::uint32_t degree, SignSource source);

  std::uint32_t n_vars() const noexcept { return n_vars_; }
  std::uint32_t degree() const noexcept { return degree_; }
  const SignSource& sign_source() const noexcept { return source_; }
  std::uint64_t term_count() const noexcept { return term_count_; }

  /// +1 or -1. Throws InvalidArgument for rank >= term_count().
  int sign(std::uint64_t rank) const;
  /// Unchecked variant for hot loops.
  int sign_unchecked(std::uint64_t rank) const noexcept {
    if (all_plus_) return 1;
    return sign_from_key(key_, rank);
  }

  static int sign_from_key(std::uint64_t key, std::uint64_t rank) noexcept;

 private:
  std::uint32_t n_vars_;
  std::uint32_t degree_;
  SignSource source_;
  std::uint64_t term_count_;
  bool all_plus_;
  std::uint64_t key_ = 0;
};

/// Validates the (n_vars, degree) range for the sign source: seeded
/// polynomials need n_vars >= 2 and degree >= 2; all-plus allows n_vars >= 1
/// and any degree.
SignedHomogeneousPolynomial make_polynomial(std::uint32_t n_vars, std::uint32_t degree,
                                            SignSource source);

/// Structure-of-arrays batch of points in C^n_vars.
class PointBatch {
 public:
  PointBatch(std::size_t n_vars, std::size_t width);

  std::size_t n_vars() const noexcept { return n_vars_; }
  std::size_t width() const noexcept { return width_; }

  void set(std::size_t var, std::size_t lane, Complex z) noexcept {
    re_[var * width_ + lane] = z.real();
    im_[var * width_ + lane] = z.imag();
  }
  Complex get(std::size_t var, std::size_t lane) const noexcept {
    return {re_[var * width_ + lane], im_[var * width_ + lane]};
  }
  void set_point(std::size_t lane, std::span<const Complex> point);

  const double* re(std::size_t var) const noexcept { return re_.data() + var * width_; }
  const double* im(std::size_t var) const noexcept { return im_.data() + var * width_; }

 private:
  std::size_t n_vars_;
  std::size_t width_;
  std::vector<double> re_;
  std::vector<double> im_;
};

/// Evaluates a polynomial at many points. Terms are grouped by their first
/// degree-1 variable indices ("rows"); each row's last factor is a signed sum
/// over the remaining variables, which vectorizes across batch lanes.
/// Signs are cached when the term count is at most `kMaterializeLimit`, and
/// regenerated from the seed otherwise.
class PolynomialEvaluator {
 public:
  static constexpr std::uint64_t kMaterializeLimit = 20'000'000;
  static constexpr std::size_t kMaxBatch = 256;

  explicit PolynomialEvaluator(SignedHomogeneousPolynomial poly);

  const SignedHomogeneousPolynomial& polynomial() const noexcept { return poly_; }

  /// Sums every term at the point. Throws InvalidArgument on length mismatch.
  Complex evaluate(std::span<const Complex> point) const;

  /// One result per lane; batch.width() must not exceed kMaxBatch.
  void evaluate_batch(const PointBatch& batch, std::span<Complex> out) const;

 private:
  SignedHomogeneousPolynomial poly_;
  std::vector<double> signs_;  // empty when streaming
};

Complex evaluate(const SignedHomogeneousPolynomial& poly, std::span<const Complex> point);

struct SupEstimate {
  /// Largest modulus observed; a lower bound on the true supremum.
  double estimate = 0.0;
  std::vector<Complex> witness_point;
  std::uint64_t samples_used = 0;
  /// Set when the witness lies on a vertical line s = sigma + it.
  std::optional<double> witness_t;
};

struct SupOptions {
  std::uint64_t n_samples = kDefaultSupSamples;
  std::uint64_t sample_seed = 0;
  unsigned sweeps = kDefaultRefinementSweeps;
  /// Number of best samples that receive phase refinement.
  unsigned refine_candidates = 4;
};

/// Samples the polytorus {|z_j| = radii[j]} with uniformly random phases, then
/// refines the best samples by coordinate-wise phase maximization (exact
/// trigonometric-polynomial restriction, grid scan plus golden section).
SupEstimate estimate_sup_polytorus(const PolynomialEvaluator& evaluator,
                                   std::span<const double> radii, const SupOptions& options = {});
SupEstimate estimate_sup_polytorus(const SignedHomogeneousPolynomial& poly,
                                   std::span<const double> radii, const SupOptions& options = {});

/// c2 * n_vars^{(degree+1)/2} * sqrt(ln degree). Requires degree >= 2.
double kahane_bound(double n_vars, std::uint32_t degree, double c2 = kDefaultC2);

/// Maximizes |sum_e coeffs[e] e^{i e theta}| over theta: uniform grid scan
/// followed by golden-section search around the best grid point.
/// Returns (theta, modulus).
std::pair<double, double> maximize_trig_modulus(std::span<const Complex> coeffs);

}  // namespace dirichlet::randpoly
