#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace dirichlet::quad {

struct Options {
  double abs_tolerance = 1e-8;
  /// Initial panels are no wider than this.
  double max_panel_width = 1.0;
  std::size_t max_panels = 1'000'000;
};

struct Result {
  std::complex<double> value;
  double error_estimate = 0.0;
  std::size_t panels = 0;
  std::size_t evaluations = 0;
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod integration of a complex-valued
/// function over [lo, hi]. The worst panel is bisected until the summed
/// Kronrod-Gauss discrepancy drops below the absolute tolerance. Panels are
/// summed in left-to-right order, so results are reproducible.
///
/// Throws NumericError (with JSON diagnostics) if the panel cap is reached
/// first.
Result integrate(const ComplexIntegrand& f, double lo, double hi,
                 const Options& options = {});

/// Real-valued convenience wrapper.
Result integrate_real(const std::function<double(double)>& f, double lo,
                      double hi, const Options& options = {});

}  // namespace dirichlet::quad
