#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "dirichlet/errors.hpp"
#include "dirichlet/perron.hpp"
#include "dirichlet/rng.hpp"
#include "dirichlet/zeta_eta.hpp"
#include "oracles.hpp"

using namespace dirichlet;
using perron::Complex;
using perron::ContourSpec;
using series::DirichletCoefficients;

namespace {

ContourSpec small_spec(std::uint64_t M) {
  ContourSpec spec;
  spec.s = 1.0;
  spec.a = 2.0;
  spec.b = 0.0;
  spec.delta = 0.5;
  spec.M = M;
  return spec;
}

Complex direct_partial(const DirichletCoefficients& c, Complex s, std::uint64_t M) {
  Complex sum = 0.0;
  for (const auto& t : c)
    if (t.n <= M) sum += t.a * oracle::npow(static_cast<double>(t.n), s);
  return sum;
}

double abs_sum(const DirichletCoefficients& c) {
  double total = 0.0;
  for (const auto& t : c) total += std::abs(t.a);
  return total;
}

}  // namespace

TEST_SUITE("perron") {

TEST_CASE("contour geometry") {
  auto spec = small_spec(3);
  CHECK(spec.height() == doctest::Approx(81.0));
  CHECK(spec.cutoff() == 3.5);
  CHECK(spec.right_abscissa() == 3.0);
  CHECK_NOTHROW(spec.validate());
  spec.height_override = 10.0;
  CHECK(spec.height() == 10.0);
  auto bad = small_spec(3);
  bad.a = bad.b;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = small_spec(3);
  bad.delta = 1.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = small_spec(3);
  bad.b = 0.8;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("kernel examples") {
  CHECK(std::abs(perron::kernel_edge_integral(2.0, 1.0, 1e3) - 1.0) < 1e-3);
  CHECK(std::abs(perron::kernel_edge_integral(0.5, 1.0, 1e3)) < 1e-3);
  for (double r : {0.3, 0.9, 1.1, 5.0})
    for (double H : {1.0, 37.0, 500.0}) CHECK(std::abs(perron::kernel_edge_integral(r, 0.7, H).imag()) < 1e-12);
  CHECK_THROWS_AS(perron::kernel_edge_integral(1.0, 1.0, 10.0), InvalidArgument);
  CHECK_THROWS_AS(perron::kernel_edge_integral(2.0, 0.0, 10.0), InvalidArgument);
  CHECK_THROWS_AS(perron::kernel_edge_integral(2.0, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("kernel dichotomy within the explicit tail bound") {
  const double tol = 1e-8;
  for (double r : {0.25, 0.5, 2.0, 4.0})
    for (double H : {1e2, 1e3}) {
      const Complex v = perron::kernel_edge_integral(r, 1.0, H);
      const double limit = r > 1.0 ? 1.0 : 0.0;
      CAPTURE(r);
      CAPTURE(H);
      CHECK(std::abs(v - limit) <= perron::kernel_tail_bound(r, 1.0, H) + tol);
    }
  CHECK(perron::kernel_tail_bound(2.0, 1.0, 100.0) == doctest::Approx(2.0 / (std::numbers::pi * 100.0 * std::log(2.0))));
}

TEST_CASE("kernel matches an independent closed form") {
  // The real part of the integrand is even in y, so the value is
  // (1/pi) int_0^H Re(r^{c+iy} / (c+iy)) dy. Fine trapezoidal rule.
  const double r = 3.0, c = 0.5, H = 20.0, L = std::log(r);
  const int steps = 400'000;
  double sum = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double y = H * i / steps;
    const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
    sum += w * std::real(std::exp(Complex(c, y) * L) / Complex(c, y));
  }
  const double expected = sum * (H / steps) / std::numbers::pi;
  CHECK(perron::kernel_edge_integral(r, c, H).real() == doctest::Approx(expected).epsilon(1e-7));
}

TEST_CASE("right-edge recovery of a small polynomial") {
  // {1:1, 2:-1, 3:2}: the partial sum up to 2 at s = 1 is 1 - 1/2. With the
  // height M^{a-b+2} = 16 the right edge alone carries an O(1/H) kernel
  // error, which the explicit truncation bound controls.
  const auto c = DirichletCoefficients::from_terms({{1, 1.0}, {2, -1.0}, {3, 2.0}});
  const auto spec = small_spec(2);
  const Complex v = perron::perron_partial_sum(c, spec);
  CHECK(std::abs(v.imag()) < 1e-12);
  CHECK(std::abs(v - 0.5) <= perron::perron_truncation_bound(c, spec) + 1e-6);

  // A taller rectangle drives the right edge alone toward the partial sum.
  auto tall = spec;
  tall.height_override = 2e4;
  tall.quadrature.max_panels = 2'000'000;
  const Complex v_tall = perron::perron_partial_sum(c, tall);
  CHECK(std::abs(v_tall - 0.5) <= perron::perron_truncation_bound(c, tall) + 1e-6);
  CHECK(std::abs(v_tall - 0.5) < std::abs(v - 0.5));
}

TEST_CASE("empty cutoff gives zero") {
  const auto c = DirichletCoefficients::from_terms({{1, 1.0}, {2, -1.0}, {3, 2.0}});
  CHECK(std::abs(perron::perron_partial_sum(c, small_spec(0))) < 1e-8);
}

TEST_CASE("full contour reproduces finite partial sums") {
  // With every index <= M, Cauchy's formula makes the closed contour equal
  // f(s), which is then exactly the partial sum.
  const double tau = 1e-8;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto key = rng::derive_key(seed, 0x9e);
    const std::uint64_t M = 2 + seed % 4;
    std::vector<series::Term> terms;
    for (std::uint64_t n = 1; n <= M; ++n) terms.push_back({n, 4.0 * rng::draw_unit(key, n) - 2.0});
    const auto c = DirichletCoefficients::from_terms(terms);
    ContourSpec spec;
    spec.s = Complex(0.6 + 0.2 * static_cast<double>(seed), 0.5 * static_cast<double>(seed));
    spec.b = spec.s.real() - 0.4;
    spec.a = spec.b + 1.0;
    spec.delta = 0.4;
    spec.M = M;
    spec.quadrature.abs_tolerance = tau;
    const auto edges = perron::contour_edges(perron::finite_series_evaluator(c), spec);
    CAPTURE(seed);
    CHECK(std::abs(edges.total() - direct_partial(c, spec.s, M)) <= 10 * tau * (1 + abs_sum(c)));
  }
}

TEST_CASE("full contour of a polynomial reaching past M equals f(s)") {
  const auto c = DirichletCoefficients::from_terms({{1, 1.0}, {2, -1.0}, {3, 2.0}});
  const auto edges = perron::contour_edges(perron::finite_series_evaluator(c), small_spec(2));
  CHECK(std::abs(edges.total() - (1.0 - 0.5 + 2.0 / 3.0)) < 1e-7);
}

TEST_CASE("left, top and bottom edges are small") {
  const auto c = DirichletCoefficients::from_terms({{1, 1.0}, {2, -0.5}, {3, 0.75}, {5, -1.0}, {7, 0.3}});
  for (std::uint64_t M : {7ULL, 10ULL, 14ULL}) {
    ContourSpec spec;
    spec.s = 1.2;
    spec.b = 0.8;
    spec.a = 1.3;
    spec.delta = 0.35;
    spec.M = M;
    const auto edges = perron::contour_edges(perron::finite_series_evaluator(c), spec);
    const double H = spec.height();
    const double Mf = static_cast<double>(M);
    // |f| left of the right edge is at most sum |b_n| n^{-(Re s - delta)}.
    const double K = perron::finite_series_bound(c, spec.s.real() - spec.delta);
    CAPTURE(M);
    CHECK(std::abs(edges.left) <= K * std::pow(Mf, -spec.delta) * (2 * std::log(H / spec.delta) + 2));
    const double width = spec.a - spec.b + spec.delta;
    const double horizontal = width * K * std::pow(spec.cutoff() / Mf, spec.a - spec.b) /
                              (2 * std::numbers::pi) * std::pow(Mf, -2.0);
    CHECK(std::abs(edges.top) <= horizontal);
    CHECK(std::abs(edges.bottom) <= horizontal);
    CHECK(std::abs(edges.total() - direct_partial(c, spec.s, M)) < 1e-6);
  }
}

TEST_CASE("eta through the right edge") {
  ContourSpec spec;
  spec.s = 1.5;
  spec.a = 1.2;
  spec.b = 0.6;
  spec.delta = 0.3;
  spec.M = 20;
  const Complex v = perron::perron_partial_sum(perron::eta_evaluator(), spec);
  double direct = 0.0;
  for (int n = 1; n <= 20; ++n) direct += (n % 2 ? 1.0 : -1.0) * std::pow(n, -1.5);
  CHECK(std::abs(v - direct) <= 5e-3);
}

TEST_CASE("finite series helpers") {
  const auto c = DirichletCoefficients::from_terms({{1, 2.0}, {4, -1.0}});
  CHECK(perron::finite_series_bound(c, 0.5) == doctest::Approx(2.5));
  const auto f = perron::finite_series_evaluator(c);
  CHECK(std::abs(f(Complex(1.0, 0.0)) - 1.75) < 1e-15);
  const auto eta = perron::eta_evaluator();
  CHECK(std::abs(eta(2.0) - std::numbers::pi * std::numbers::pi / 12) < 1e-10);
}

TEST_CASE("error scans") {
  const std::vector<std::uint64_t> Ms{8, 16, 32, 64};
  auto sign = [](std::uint64_t n) { return n % 2 ? 1.0 : -1.0; };

  const auto rows = perron::perron_error_scan(zeta::eta(0.8), sign, 0.8, 0.5, 1.5, 0.3, Ms);
  REQUIRE(rows.size() == 4);
  double lo = INFINITY, hi = 0.0;
  for (const auto& r : rows) {
    const double Mf = static_cast<double>(r.M);
    CHECK(r.bound == doctest::Approx(std::pow(Mf, -0.3) * std::log(Mf)));
    CHECK(r.error == doctest::Approx(std::abs(zeta::eta(0.8) - zeta::eta_partial(0.8, r.M))).epsilon(1e-12));
    CHECK(r.ratio == doctest::Approx(r.error / r.bound));
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
  }
  CHECK(hi / lo <= 10.0);

  const auto two = perron::perron_error_scan(zeta::eta(2.0), sign, 2.0, 1.5, 2.5, 0.3, Ms);
  for (std::size_t i = 1; i < two.size(); ++i) CHECK(two[i].error < two[i - 1].error);

  const auto c = DirichletCoefficients::from_terms({{1, 1.0}, {3, -2.0}, {7, 0.5}});
  const std::vector<std::uint64_t> large{7, 8, 20};
  const Complex s(0.9, 2.0);
  const auto exact = perron::perron_error_scan(series::partial_sum(c, s, 7), c, s, 0.5, 1.5, 0.3, large);
  for (const auto& r : exact) CHECK(r.error == doctest::Approx(0.0));

  const std::vector<std::uint64_t> descending{16, 8};
  CHECK_THROWS_AS(perron::perron_error_scan(0.0, sign, 0.8, 0.5, 1.5, 0.3, descending), InvalidArgument);
  const std::vector<std::uint64_t> one{1};
  CHECK_THROWS_AS(perron::perron_error_scan(0.0, sign, 0.8, 0.5, 1.5, 0.3, one), InvalidArgument);
}

TEST_CASE("error scan CSV") {
  std::ostringstream out;
  perron::write_error_scan_csv(out, {{8, 0.5, 0.25, 2.0}});
  CHECK(out.str() == "M,error,M^-delta*logM,ratio\n8,0.5,0.25,2\n");
}

TEST_CASE("logarithm gap past the cutoff") {
  for (std::uint64_t M = 1; M <= 1'000'000; ++M) {
    const double gap = perron::half_offset_log_gap(M);
    REQUIRE(gap > 1.0 / (2.0 * static_cast<double>(M) + 2.0));
  }
  CHECK(perron::half_offset_log_gap(1) == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-15));
}

}
