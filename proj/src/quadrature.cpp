#include "dirichlet/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "dirichlet/compensated.hpp"
#include "dirichlet/errors.hpp"

namespace dirichlet::quad {

namespace {

// Kronrod abscissae on [0, 1] (symmetric), Gauss weights for the embedded
// 7-point rule on the odd-indexed nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  std::complex<double> value;
  double error;
};

struct WorseFirst {
  bool operator()(const Panel& a, const Panel& b) const {
    if (a.error != b.error) return a.error < b.error;
    return a.lo > b.lo;
  }
};

Panel gauss_kronrod(const ComplexIntegrand& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const std::complex<double> fc = f(center);
  std::complex<double> kronrod = fc * kKronrodWeights[7];
  std::complex<double> gauss = fc * kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const std::complex<double> pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

Result integrate(const ComplexIntegrand& f, double lo, double hi,
                 const Options& options) {
  if (!(hi >= lo)) throw InvalidArgument("integration interval must satisfy lo <= hi");
  if (!(options.abs_tolerance > 0.0) || !(options.max_panel_width > 0.0))
    throw InvalidArgument("quadrature tolerance and panel width must be positive");
  Result result;
  if (hi == lo) return result;

  const double length = hi - lo;
  const auto initial = static_cast<std::size_t>(
      std::max(1.0, std::ceil(length / options.max_panel_width)));
  if (initial > options.max_panels) {
    std::ostringstream diag;
    diag << R"({"reason":"initial partition exceeds panel cap","lo":)" << lo
         << R"(,"hi":)" << hi << R"(,"panels":)" << initial << R"(,"cap":)"
         << options.max_panels << "}";
    throw NumericError("quadrature: too many panels required", diag.str());
  }

  std::priority_queue<Panel, std::vector<Panel>, WorseFirst> queue;
  double total_error = 0.0;
  const double width = length / static_cast<double>(initial);
  for (std::size_t i = 0; i < initial; ++i) {
    const double a = lo + width * static_cast<double>(i);
    const double b = (i + 1 == initial) ? hi : lo + width * static_cast<double>(i + 1);
    Panel p = gauss_kronrod(f, a, b);
    total_error += p.error;
    queue.push(p);
  }
  std::size_t panels = initial;
  result.evaluations = 15 * initial;

  while (total_error > options.abs_tolerance) {
    if (panels >= options.max_panels) {
      std::ostringstream diag;
      diag.precision(17);
      diag << R"({"reason":"panel cap reached","lo":)" << lo << R"(,"hi":)" << hi
           << R"(,"panels":)" << panels << R"(,"error_estimate":)" << total_error
           << R"(,"tolerance":)" << options.abs_tolerance << "}";
      throw NumericError("quadrature did not converge", diag.str());
    }
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      std::ostringstream diag;
      diag.precision(17);
      diag << R"({"reason":"panel width underflow","at":)" << worst.lo
           << R"(,"error_estimate":)" << total_error << "}";
      throw NumericError("quadrature did not converge", diag.str());
    }
    Panel left = gauss_kronrod(f, worst.lo, mid);
    Panel right = gauss_kronrod(f, mid, worst.hi);
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++panels;
    result.evaluations += 30;
    // Recompute occasionally to avoid drift from incremental updates.
    if (panels % 4096 == 0) {
      auto copy = queue;
      double fresh = 0.0;
      while (!copy.empty()) {
        fresh += copy.top().error;
        copy.pop();
      }
      total_error = fresh;
    }
  }

  std::vector<Panel> all;
  all.reserve(queue.size());
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  CompensatedComplexSum sum;
  double err = 0.0;
  for (const auto& p : all) {
    sum.add(p.value);
    err += p.error;
  }
  result.value = sum.value();
  result.error_estimate = err;
  result.panels = all.size();
  return result;
}

Result integrate_real(const std::function<double(double)>& f, double lo,
                      double hi, const Options& options) {
  return integrate([&f](double x) { return std::complex<double>(f(x), 0.0); },
                   lo, hi, options);
}

}  // namespace dirichlet::quad
