#include "dirichlet/zeta_eta.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dirichlet/compensated.hpp"
#include "dirichlet/errors.hpp"

namespace dirichlet::zeta {

namespace {

Complex power_neg(double n, Complex s) { return std::exp(-s * std::log(n)); }

Complex singular_factor(Complex s) { return 1.0 - std::exp((1.0 - s) * std::log(2.0)); }

}  // namespace

Complex eta_partial(Complex s, std::uint64_t N) {
  if (N == 0) throw InvalidArgument("eta_partial: N must be >= 1");
  CompensatedComplexSum sum;
  for (std::uint64_t n = 1; n <= N; ++n) {
    const Complex term = power_neg(static_cast<double>(n), s);
    sum.add((n % 2 == 1) ? term : -term);
  }
  return sum.value();
}

EtaValue eta_euler(Complex s, const EtaOptions& options) {
  if (options.max_depth == 0) throw InvalidArgument("eta_euler: max_depth must be positive");
  const auto magnitude = static_cast<std::uint64_t>(std::ceil(std::abs(s)));
  const std::uint64_t N0 = std::max<std::uint64_t>({options.direct_terms, magnitude + 64, 1});

  EtaValue out;
  out.direct_terms = N0;
  const Complex head = eta_partial(s, N0);

  // Tail: sum_{n > N0} (-1)^{n+1} n^{-s} = (-1)^{N0} sum_j (-1)^j u_j with
  // u_j = (N0 + 1 + j)^{-s}.
  const unsigned D = options.max_depth;
  std::vector<Complex> diff(D + 1);
  for (unsigned j = 0; j <= D; ++j) diff[j] = power_neg(static_cast<double>(N0 + 1 + j), s);

  CompensatedComplexSum tail;
  double scale = 0.5;
  unsigned small_in_a_row = 0;
  bool converged = false;
  for (unsigned k = 0; k <= D; ++k) {
    // diff[0] holds Delta^k u_0.
    const Complex term = ((k % 2 == 0) ? 1.0 : -1.0) * scale * diff[0];
    tail.add(term);
    out.depth = k;
    out.last_term = std::abs(term);
    small_in_a_row = out.last_term <= 0.1 * options.target ? small_in_a_row + 1 : 0;
    if (small_in_a_row >= 3) {
      converged = true;
      break;
    }
    for (unsigned j = 0; j + k < D; ++j) diff[j] = diff[j + 1] - diff[j];
    scale *= 0.5;
  }
  if (!converged && out.last_term > options.target) {
    std::ostringstream diag;
    diag.precision(17);
    diag << R"({"reason":"euler transform depth cap","s_re":)" << s.real() << R"(,"s_im":)"
         << s.imag() << R"(,"depth":)" << out.depth << R"(,"last_term":)" << out.last_term
         << R"(,"target":)" << options.target << "}";
    throw NumericError("eta_euler: accuracy target not reached", diag.str());
  }
  const Complex sign = (N0 % 2 == 0) ? 1.0 : -1.0;
  out.value = head + sign * tail.value();
  return out;
}

Complex eta(Complex s) { return eta_euler(s).value; }

Complex zeta_via_eta(Complex s, std::uint64_t direct_terms, double tol) {
  if (!(s.real() > 0.0)) throw InvalidArgument("zeta_via_eta: requires Re s > 0");
  const Complex factor = singular_factor(s);
  if (std::abs(factor) < tol) {
    std::ostringstream diag;
    diag.precision(17);
    diag << "{\"reason\":\"singular factor 1-2^(1-s)\",\"s_re\":" << s.real() << R"(,"s_im":)"
         << s.imag() << R"(,"factor_modulus":)" << std::abs(factor) << R"(,"tol":)" << tol << "}";
    throw SingularFactorError("zeta_via_eta: 1 - 2^{1-s} vanishes", diag.str());
  }
  EtaOptions options;
  if (direct_terms > 0) options.direct_terms = direct_terms;
  return eta_euler(s, options).value / factor;
}

CesaroAccumulator::CesaroAccumulator(unsigned order)
    : levels_(order + 1, Complex{}), running_(order + 1, Complex{}) {}

void CesaroAccumulator::push(Complex term) {
  ++count_;
  levels_[0] += term;
  const double n = static_cast<double>(count_);
  for (std::size_t j = 1; j < levels_.size(); ++j) {
    running_[j] += levels_[j - 1];
    levels_[j] = running_[j] / n;
  }
}

Complex cesaro_value(const std::function<Complex(std::uint64_t)>& term, unsigned order,
                     std::uint64_t N) {
  if (N == 0) throw InvalidArgument("cesaro_value: N must be >= 1");
  CesaroAccumulator acc(order);
  for (std::uint64_t n = 1; n <= N; ++n) acc.push(term(n));
  return acc.top();
}

Complex cesaro_eta(Complex s, unsigned order, std::uint64_t N) {
  return cesaro_value(
      [s](std::uint64_t n) {
        const Complex t = power_neg(static_cast<double>(n), s);
        return (n % 2 == 1) ? t : -t;
      },
      order, N);
}

Complex zeta_via_cesaro(Complex s, unsigned order, std::uint64_t N, double tol) {
  const Complex factor = singular_factor(s);
  if (std::abs(factor) < tol)
    throw SingularFactorError("zeta_via_cesaro: 1 - 2^{1-s} vanishes");
  return cesaro_eta(s, order, N) / factor;
}

series::AbscissaTriple eta_abscissae() {
  return series::AbscissaTriple::make(1.0, 1.0, 0.0, series::Provenance::theoretical);
}

series::AbscissaTriple zeta_abscissae() {
  return series::AbscissaTriple::make(1.0, 1.0, 1.0, series::Provenance::theoretical);
}

}  // namespace dirichlet::zeta
