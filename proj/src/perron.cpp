#include "dirichlet/perron.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "dirichlet/compensated.hpp"
#include "dirichlet/errors.hpp"
#include "dirichlet/format.hpp"
#include "dirichlet/zeta_eta.hpp"

namespace dirichlet::perron {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kI{0.0, 1.0};

quad::Options with_width(quad::Options options, double width) {
  options.max_panel_width = std::min(options.max_panel_width, width);
  return options;
}

// min(1, pi / |ln x|), the panel cap near the kernel's oscillation scale.
double oscillation_width(double x) {
  const double l = std::abs(std::log(x));
  return l > 0.0 ? std::min(1.0, std::numbers::pi / l) : 1.0;
}

}  // namespace

double ContourSpec::height() const {
  if (height_override) return *height_override;
  return std::pow(static_cast<double>(M), a - b + 2.0);
}

void ContourSpec::validate() const {
  if (!(b < a)) throw InvalidArgument("contour: requires b < a");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("contour: delta must lie in (0, 1)");
  if (!(s.real() >= b + delta)) throw InvalidArgument("contour: requires Re s >= b + delta");
  if (!(height() >= 0.0)) throw InvalidArgument("contour: height must be non-negative");
}

Complex kernel_edge_integral(double r, double c, double H, const quad::Options& options) {
  if (!(r > 0.0) || r == 1.0) throw InvalidArgument("kernel_edge_integral: r must be positive and != 1");
  if (!(c > 0.0) || !(H > 0.0)) throw InvalidArgument("kernel_edge_integral: c and H must be positive");
  const double log_r = std::log(r);
  // w = c + iy, dw = i dy; the 1/(2 pi i) leaves 1/(2 pi).
  auto integrand = [=](double y) {
    const Complex w(c, y);
    return std::exp(w * log_r) / w / kTwoPi;
  };
  return quad::integrate(integrand, -H, H, with_width(options, oscillation_width(r))).value;
}

double kernel_tail_bound(double r, double c, double H) {
  return std::pow(r, c) / (std::numbers::pi * H * std::abs(std::log(r)));
}

Complex perron_partial_sum(const ComplexFunction& f, const ContourSpec& spec) {
  spec.validate();
  const double H = spec.height();
  if (H == 0.0) return 0.0;
  const double log_x = std::log(spec.cutoff());
  const Complex s = spec.s;
  const double c = spec.right_abscissa();
  auto integrand = [&](double y) {
    const Complex z(c, y);
    const Complex shift = z - s;
    return f(z) * std::exp(shift * log_x) / shift / kTwoPi;
  };
  return quad::integrate(integrand, s.imag() - H, s.imag() + H,
                         with_width(spec.quadrature, oscillation_width(spec.cutoff())))
      .value;
}

Complex perron_partial_sum(const series::DirichletCoefficients& coeffs, const ContourSpec& spec) {
  return perron_partial_sum(finite_series_evaluator(coeffs), spec);
}

double perron_truncation_bound(const series::DirichletCoefficients& coeffs, const ContourSpec& spec) {
  const double H = spec.height();
  const double x = spec.cutoff();
  const double c = spec.a - spec.b;
  CompensatedSum sum;
  for (const auto& t : coeffs) {
    const double n = std::exp(log_index(t.n));
    sum.add(std::abs(t.a) * std::pow(n, -spec.s.real()) * kernel_tail_bound(x / n, c, H));
  }
  return sum.value();
}

ContourEdges contour_edges(const ComplexFunction& f, const ContourSpec& spec) {
  spec.validate();
  const double H = spec.height();
  const double log_x = std::log(spec.cutoff());
  const Complex s = spec.s;
  const double width = spec.a - spec.b;
  auto g = [&](Complex z) {
    const Complex shift = z - s;
    return f(z) * std::exp(shift * log_x) / shift;
  };
  const quad::Options vertical = with_width(spec.quadrature, oscillation_width(spec.cutoff()));
  ContourEdges edges;

  // Vertical sides: dz = i dy, so (1/2 pi i) dz = dy / 2 pi.
  auto right = quad::integrate([&](double y) { return g(Complex(s.real() + width, s.imag() + y)) / kTwoPi; },
                               -H, H, vertical);
  auto left = quad::integrate([&](double y) { return g(Complex(s.real() - spec.delta, s.imag() + y)) / kTwoPi; },
                              -H, H, vertical);
  // Horizontal sides: dz = dx.
  auto top = quad::integrate([&](double x) { return g(Complex(s.real() + x, s.imag() + H)) / (kTwoPi * kI); },
                             -spec.delta, width, spec.quadrature);
  auto bottom = quad::integrate([&](double x) { return g(Complex(s.real() + x, s.imag() - H)) / (kTwoPi * kI); },
                                -spec.delta, width, spec.quadrature);
  edges.right = right.value;
  edges.left = -left.value;  // traversed downward
  edges.top = -top.value;    // traversed leftward
  edges.bottom = bottom.value;
  edges.error_estimate = right.error_estimate + left.error_estimate + top.error_estimate + bottom.error_estimate;
  return edges;
}

double finite_series_bound(const series::DirichletCoefficients& coeffs, double sigma) {
  return series::absolute_partial_sum(coeffs, sigma, coeffs.empty() ? Index{0} : coeffs.max_index());
}

ComplexFunction finite_series_evaluator(const series::DirichletCoefficients& coeffs) {
  std::vector<double> a, log_n;
  for (const auto& t : coeffs) {
    a.push_back(t.a);
    log_n.push_back(log_index(t.n));
  }
  return [a = std::move(a), log_n = std::move(log_n)](Complex z) {
    CompensatedComplexSum sum;
    for (std::size_t i = 0; i < a.size(); ++i) sum.add(a[i] * std::exp(-z * log_n[i]));
    return sum.value();
  };
}

ComplexFunction eta_evaluator() {
  return [](Complex z) { return zeta::eta(z); };
}

std::vector<ErrorScanRow> perron_error_scan(Complex f_at_s,
                                            const std::function<double(std::uint64_t)>& coefficient,
                                            Complex s, double b, double a, double delta,
                                            std::span<const std::uint64_t> M_list) {
  if (!(b < a)) throw InvalidArgument("perron_error_scan: requires b < a");
  if (!(delta > 0.0)) throw InvalidArgument("perron_error_scan: delta must be positive");
  if (!(s.real() >= b + delta)) throw InvalidArgument("perron_error_scan: requires Re s >= b + delta");
  std::vector<ErrorScanRow> rows;
  CompensatedComplexSum partial;
  std::uint64_t summed = 0;
  std::uint64_t previous = 0;
  for (std::uint64_t M : M_list) {
    if (M < 2) throw InvalidArgument("perron_error_scan: M values must be >= 2");
    if (M <= previous && previous != 0) throw InvalidArgument("perron_error_scan: M values must ascend");
    previous = M;
    for (; summed < M; ++summed) {
      const std::uint64_t n = summed + 1;
      const double c = coefficient(n);
      if (c != 0.0) partial.add(c * std::exp(-s * std::log(static_cast<double>(n))));
    }
    const double Md = static_cast<double>(M);
    ErrorScanRow row;
    row.M = M;
    row.error = std::abs(f_at_s - partial.value());
    row.bound = std::pow(Md, -delta) * std::log(Md);
    row.ratio = row.error / row.bound;
    rows.push_back(row);
  }
  return rows;
}

std::vector<ErrorScanRow> perron_error_scan(Complex f_at_s, const series::DirichletCoefficients& coeffs,
                                            Complex s, double b, double a, double delta,
                                            std::span<const std::uint64_t> M_list) {
  return perron_error_scan(
      f_at_s, [&coeffs](std::uint64_t n) { return coeffs.at(n); }, s, b, a, delta, M_list);
}

void write_error_scan_csv(std::ostream& out, const std::vector<ErrorScanRow>& rows) {
  out << "M,error,M^-delta*logM,ratio\n";
  for (const auto& r : rows)
    out << r.M << ',' << format_number(r.error) << ',' << format_number(r.bound) << ','
        << format_number(r.ratio) << '\n';
}

double half_offset_log_gap(std::uint64_t M) {
  const double Md = static_cast<double>(M);
  return -std::log1p(-1.0 / (2.0 * Md + 2.0));
}

}  // namespace dirichlet::perron
