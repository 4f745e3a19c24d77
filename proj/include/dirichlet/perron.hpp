#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "dirichlet/quadrature.hpp"
#include "dirichlet/series.hpp"

namespace dirichlet::perron {

using Complex = std::complex<double>;
/// f(z) on (part of) the contour. Must be pure.
using ComplexFunction = std::function<Complex(Complex)>;

/// Rectangle with vertices s - delta +- iH and s + (a - b) +- iH, where
/// H = M^{a-b+2} unless overridden. Integrating f(z) (M + 1/2)^{z-s} / (z - s)
/// over its right edge approximates sum_{n <= M} b_n n^{-s}.
struct ContourSpec {
  Complex s;
  double a = 0.0;
  double b = 0.0;
  double delta = 0.0;
  std::uint64_t M = 0;
  std::optional<double> height_override;
  quad::Options quadrature{1e-8, 1.0, 1'000'000};

  double height() const;
  /// M + 1/2: never an integer, so no term sits on the kernel's jump.
  double cutoff() const { return static_cast<double>(M) + 0.5; }
  /// Abscissa of the right edge, Re s + a - b.
  double right_abscissa() const { return s.real() + a - b; }

  /// Throws InvalidArgument unless b < a, 0 < delta < 1 and Re s >= b + delta.
  void validate() const;
};

/// (1/2 pi i) int_{c-iH}^{c+iH} r^w / w dw. Tends to 1 for r > 1 and 0 for
/// r < 1 as H grows. Throws InvalidArgument for r == 1 or non-positive c, H.
Complex kernel_edge_integral(double r, double c, double H, const quad::Options& options = {});

/// r^c / (pi H |ln r|): bound on |kernel_edge_integral - [r > 1]|.
double kernel_tail_bound(double r, double c, double H);

/// Right-edge integral (1/2 pi i) int f(z) (M+1/2)^{z-s} / (z - s) dz.
Complex perron_partial_sum(const ComplexFunction& f, const ContourSpec& spec);
/// Same, with f the finite Dirichlet polynomial itself.
Complex perron_partial_sum(const series::DirichletCoefficients& coeffs, const ContourSpec& spec);

/// Explicit bound on |right-edge integral - sum_{n<=M} b_n n^{-s}| for a
/// finite polynomial: sum_n |b_n| n^{-Re s} kernel_tail_bound(x/n, a - b, H).
double perron_truncation_bound(const series::DirichletCoefficients& coeffs, const ContourSpec& spec);

/// The four sides of the rectangle, each already divided by 2 pi i and
/// oriented counterclockwise. Their total equals f(s) by Cauchy's formula.
struct ContourEdges {
  Complex right;
  Complex top;
  Complex left;
  Complex bottom;
  double error_estimate = 0.0;

  Complex total() const { return right + top + left + bottom; }
};
ContourEdges contour_edges(const ComplexFunction& f, const ContourSpec& spec);

/// sum |b_n| n^{-sigma}: a certified bound on |f| over Re z >= sigma for a
/// finite Dirichlet polynomial.
double finite_series_bound(const series::DirichletCoefficients& coeffs, double sigma);

/// f(z) = sum b_n n^{-z} summed directly.
ComplexFunction finite_series_evaluator(const series::DirichletCoefficients& coeffs);
/// Euler-accelerated eta(z).
ComplexFunction eta_evaluator();

struct ErrorScanRow {
  std::uint64_t M;
  double error;
  double bound;  // M^{-delta} ln M
  double ratio;
};

/// error = |f(s) - sum_{n<=M} b_n n^{-s}| by direct truncation (not through
/// the contour), with ratio = error / (M^{-delta} ln M). M values must be
/// ascending and >= 2; requires Re s >= b + delta and b < a.
std::vector<ErrorScanRow> perron_error_scan(Complex f_at_s,
                                            const std::function<double(std::uint64_t)>& coefficient,
                                            Complex s, double b, double a, double delta,
                                            std::span<const std::uint64_t> M_list);
std::vector<ErrorScanRow> perron_error_scan(Complex f_at_s, const series::DirichletCoefficients& coeffs,
                                            Complex s, double b, double a, double delta,
                                            std::span<const std::uint64_t> M_list);

/// Header "M,error,M^-delta*logM,ratio".
void write_error_scan_csv(std::ostream& out, const std::vector<ErrorScanRow>& rows);

/// -ln((2M + 1) / (2M + 2)), the smallest |ln((M + 1/2)/n)| over n >= M + 1.
double half_offset_log_gap(std::uint64_t M);

}  // namespace dirichlet::perron
