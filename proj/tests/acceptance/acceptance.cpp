// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "dirichlet/cli.hpp"
#include "dirichlet/construction.hpp"
#include "dirichlet/errors.hpp"
#include "dirichlet/monomials.hpp"
#include "dirichlet/perron.hpp"
#include "dirichlet/primes.hpp"
#include "dirichlet/randpoly.hpp"
#include "dirichlet/rng.hpp"
#include "dirichlet/series.hpp"
#include "dirichlet/zeta_eta.hpp"

using namespace dirichlet;
using Complex = std::complex<double>;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + ("violated: " + what);
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

unsigned __int128 pascal_binomial(unsigned n, unsigned k) {
  std::vector<unsigned __int128> row(k + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = std::min(i, k); j >= 1; --j) row[j] += row[j - 1];
  return row[k];
}

series::DirichletCoefficients random_coefficients(std::uint64_t seed, std::uint64_t N, bool signs_only) {
  const auto key = rng::derive_key(seed, 0xacce);
  std::vector<series::Term> terms;
  for (std::uint64_t n = 1; n <= N; ++n) {
    const double u = rng::draw_unit(key, n);
    terms.push_back({n, signs_only ? (u < 0.5 ? -1.0 : 1.0) : 4.0 * u - 2.0});
  }
  return series::DirichletCoefficients::from_terms(std::move(terms));
}

// 1. Blocks 2..5: exact counts, signs, disjoint supports, smallest index 49.
Verdict construction_shape() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  const auto built = construction::build_series(5, 0);
  std::vector<Index> all;
  std::uint64_t expected_total = 0;
  for (unsigned k = 2; k <= 5; ++k) {
    const auto support = construction::block_support(k);
    const auto expected = static_cast<std::uint64_t>(pascal_binomial((1u << k) + k - 1, k));
    v.require(support.size() == expected, "block " + std::to_string(k) + " count");
    expected_total += expected;
    for (const auto& e : support) all.push_back(e.n);
  }
  std::sort(all.begin(), all.end());
  v.require(std::adjacent_find(all.begin(), all.end()) == all.end(), "disjoint supports");
  v.require(built.materialized.size() == expected_total, "total count");
  v.require(expected_total == 10 + 120 + 3876 + 376'992, "10 + 120 + 3876 + 376992");
  bool signs = true;
  for (const auto& t : built.materialized) signs &= (t.a == 1.0 || t.a == -1.0);
  v.require(signs, "coefficients in {-1, +1}");
  v.require(built.materialized.min_index() == 49, "minimum index 49");
  const double elapsed = seconds_since(start);
  v.require(elapsed < 30.0, "runtime < 30 s");
  v.note(std::to_string(built.materialized.size()) + " coefficients, min index " +
         to_string(built.materialized.min_index()) + ", " + fmt(elapsed, 3) + " s");
  return v;
}

// 2. n^m/m! <= count <= n^m in exact integer arithmetic.
Verdict monomial_bracketing() {
  Verdict v;
  int cases = 0;
  for (std::uint64_t n = 2; n <= 64; ++n) {
    unsigned __int128 power = n, factorial = 1;
    for (std::uint64_t m = 2; m <= 9; ++m) {
      power *= n;
      factorial *= m;
      const unsigned __int128 count = monomials::count_monomials(n, m);
      const bool ok = count * factorial >= power && count <= power;
      v.require(ok, "n=" + std::to_string(n) + " m=" + std::to_string(m));
      ++cases;
    }
  }
  v.note(std::to_string(cases) + " (n, m) pairs");
  return v;
}

// 3. 1/3 < p_n / (n ln n) < 3 for 2 <= n <= 10^6.
Verdict pnt_window() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  const auto report = primes::pnt_ratio_scan(1'000'000, 3.0);
  const double elapsed = seconds_since(start);
  v.require(report.all_within, "ratio inside (1/3, 3)");
  v.require(elapsed < 60.0, "runtime < 60 s");
  v.note("ratio range [" + fmt(report.min_ratio) + ", " + fmt(report.max_ratio) + "], " + fmt(elapsed, 3) + " s");
  return v;
}

// 4. Closed form vs quadrature of the mean square, and sinc decay at T = 10^4.
Verdict time_average() {
  Verdict v;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto key = rng::derive_key(seed, 0x71a);
    const auto N = 1 + static_cast<std::uint64_t>(50 * rng::draw_unit(key, 0));
    const double b = rng::draw_unit(key, 1);
    const double T = 1.0 + 999.0 * rng::draw_unit(key, 2);
    const auto c = random_coefficients(seed, N, false);
    const double closed = series::time_average_square(c, b, T, N, series::AverageMode::closed_form);
    const double quad = series::time_average_square(c, b, T, N, series::AverageMode::quadrature);
    worst = std::max(worst, std::abs(closed - quad));
  }
  v.require(worst <= 1e-6, "closed form vs quadrature within 1e-6");

  const auto two = series::DirichletCoefficients::from_terms({{1, 1.0}, {2, 1.0}});
  const double x = 1e4 * std::log(2.0);
  const double exact = 2.0 + 2.0 * std::sin(x) / x;
  double worst_decay = 0.0, worst_exact = 0.0;
  for (auto mode : {series::AverageMode::closed_form, series::AverageMode::quadrature}) {
    const double avg = series::time_average_square(two, 0.0, 1e4, 2, mode);
    worst_decay = std::max(worst_decay, std::abs(avg - series::diagonal_square_sum(two, 0.0, 2)));
    worst_exact = std::max(worst_exact, std::abs(avg - exact));
  }
  v.require(worst_decay <= 1e-3, "|average(T=1e4) - diagonal| <= 1e-3");
  v.require(worst_exact <= 1e-8, "two-term value matches 2 + 2 sin(T ln 2)/(T ln 2)");
  v.note("max |closed - quadrature| = " + fmt(worst, 3) + ", |avg - diag| = " + fmt(worst_decay, 3));
  return v;
}

// 5. Cauchy-Schwarz on random coefficient sets and eta truncations.
Verdict cauchy_schwarz() {
  Verdict v;
  int failures = 0, cases = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto key = rng::derive_key(seed, 0xc5);
    const auto N = 1 + static_cast<std::uint64_t>(500 * rng::draw_unit(key, 0));
    const double b = rng::draw_unit(key, 1);
    const double eps = 0.01 + rng::draw_unit(key, 2);
    failures += !series::cauchy_schwarz_check(random_coefficients(seed, N, seed % 2 == 0), b, eps, N).holds;
    ++cases;
  }
  for (std::uint64_t N : {10ULL, 100ULL, 1000ULL, 10'000ULL})
    for (double b : {0.0, 0.25, 0.5})
      for (double eps : {0.05, 0.25, 1.0}) {
        failures += !series::cauchy_schwarz_check(series::eta_coefficients(N), b, eps, N).holds;
        ++cases;
      }
  v.require(failures == 0, "zero failures");
  v.note(std::to_string(cases) + " instances, " + std::to_string(failures) + " failures");
  return v;
}

// 6. Sampled sups of random +-1 cubics in 64 variables vs 3 * kahane_bound.
Verdict kahane_decay() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  const double bound = randpoly::kEmpiricalKahaneMultiplier * randpoly::kahane_bound(64, 3, 1.0);
  const double terms = static_cast<double>(pascal_binomial(66, 3));
  int below = 0;
  double largest = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const randpoly::PolynomialEvaluator evaluator(randpoly::make_polynomial(64, 3, randpoly::Seeded{seed}));
    const std::vector<double> radii(64, 1.0);
    randpoly::SupOptions options;
    options.n_samples = 100'000;
    options.sample_seed = seed;
    const auto est = randpoly::estimate_sup_polytorus(evaluator, radii, options);
    below += est.estimate <= bound;
    largest = std::max(largest, est.estimate);
  }
  const double elapsed = seconds_since(start);
  v.require(terms == 45760.0, "term count 45760");
  v.require(largest <= terms, "every estimate below the term count");
  v.require(below >= 45, ">= 90% of 50 seeds below 3*kahane_bound");
  v.require(elapsed <= 180.0, "runtime <= 3 min");
  v.note(std::to_string(below) + "/50 below " + fmt(bound) + ", largest sup " + fmt(largest) + " vs " +
         fmt(terms) + " terms, " + fmt(elapsed, 3) + " s");
  return v;
}

// 7. Line sups decrease for k = 2..5 while absolute sums increase for k = 4..6.
Verdict block_decay_vs_growth() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> sups, sums;
  for (unsigned k = 2; k <= 5; ++k) sups.push_back(construction::block_line_sup(k, 0, 0.5).estimate);
  for (unsigned k = 4; k <= 6; ++k) sums.push_back(construction::block_absolute_sum(k, 0.5));
  for (std::size_t i = 1; i < sups.size(); ++i) v.require(sups[i] < sups[i - 1], "line sup decreases at k=" + std::to_string(i + 2));
  for (std::size_t i = 1; i < sums.size(); ++i) v.require(sums[i] > sums[i - 1], "absolute sum increases at k=" + std::to_string(i + 4));
  const double elapsed = seconds_since(start);
  v.require(elapsed <= 300.0, "runtime <= 5 min");
  std::string s = "sups";
  for (double x : sups) s += " " + fmt(x, 4);
  s += "; abs sums";
  for (double x : sums) s += " " + fmt(x, 4);
  v.note(s + ", " + fmt(elapsed, 3) + " s");
  return v;
}

// 8. Contour recovery of finite partial sums; kernel dichotomy.
Verdict perron_exactness() {
  Verdict v;
  const double tau = 1e-8;
  double worst = 0.0;
  const std::vector<series::DirichletCoefficients> polys{
      series::DirichletCoefficients::from_terms({{1, 1.0}, {2, -1.0}}),
      series::DirichletCoefficients::from_terms({{1, 1.0}, {2, -1.0}, {3, 2.0}}),
      random_coefficients(1, 5, false),
      random_coefficients(2, 8, true),
  };
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const auto& c = polys[i];
    perron::ContourSpec spec;
    spec.s = Complex(1.0, 0.5 * static_cast<double>(i));
    spec.a = 2.0;
    spec.b = 0.0;
    spec.delta = 0.5;
    spec.M = static_cast<std::uint64_t>(c.max_index());
    spec.quadrature.abs_tolerance = tau;
    const auto edges = perron::contour_edges(perron::finite_series_evaluator(c), spec);
    worst = std::max(worst, std::abs(edges.total() - series::partial_sum(c, spec.s, c.max_index())));
  }
  v.require(worst <= 10 * tau, "contour total within 10*tau of the partial sum");

  double worst_ratio = 0.0;
  for (double r : {0.25, 0.5, 2.0, 4.0})
    for (double H : {1e2, 1e3}) {
      const double dev = std::abs(perron::kernel_edge_integral(r, 1.0, H) - (r > 1.0 ? 1.0 : 0.0));
      const double bound = perron::kernel_tail_bound(r, 1.0, H);
      worst_ratio = std::max(worst_ratio, dev / bound);
      v.require(dev <= bound, "kernel r=" + fmt(r) + " H=" + fmt(H));
    }
  v.note("max contour deviation " + fmt(worst, 3) + " (10*tau = " + fmt(10 * tau) + "), max kernel deviation/bound " +
         fmt(worst_ratio, 3));
  return v;
}

// 9. eta at s = 0.8: error / (M^-delta ln M) is bounded over M = 8..64.
Verdict perron_error_law() {
  Verdict v;
  const std::vector<std::uint64_t> Ms{8, 16, 32, 64};
  const Complex s = 0.8;
  const auto rows = perron::perron_error_scan(
      zeta::eta(s), [](std::uint64_t n) { return n % 2 ? 1.0 : -1.0; }, s, 0.5, 1.5, 0.3, Ms);
  double lo = INFINITY, hi = 0.0;
  for (const auto& r : rows) {
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
  }
  v.require(hi / lo <= 10.0, "max/min ratio <= 10");
  v.note("ratios in [" + fmt(lo, 4) + ", " + fmt(hi, 4) + "], max/min " + fmt(hi / lo, 4));
  return v;
}

// 10. zeta(2), the singular factor at s = 1, Grandi and zeta(0).
Verdict zeta_identities() {
  Verdict v;
  const double z2 = std::abs(zeta::zeta_via_eta(2.0) - std::numbers::pi * std::numbers::pi / 6);
  v.require(z2 <= 1e-6, "zeta(2)");
  bool raised = false;
  try {
    (void)zeta::zeta_via_eta(1.0);
  } catch (const SingularFactorError&) {
    raised = true;
  }
  v.require(raised, "s = 1 raises the singular-factor error");
  const double grandi = std::abs(zeta::cesaro_value([](std::uint64_t n) { return Complex(n % 2 ? 1.0 : -1.0); }, 1, 10'000) - 0.5);
  v.require(grandi <= 1e-3, "Grandi (C,1) value 1/2");
  const double z0 = std::abs(zeta::zeta_via_cesaro(0.0, 1, 10'000) + 0.5);
  v.require(z0 <= 1e-3, "zeta(0) = -1/2");
  v.note("|zeta(2) - pi^2/6| = " + fmt(z2, 3) + ", Grandi error " + fmt(grandi, 3) + ", zeta(0) error " + fmt(z0, 3));
  return v;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 11. construct twice with identical flags gives byte-identical files.
Verdict determinism() {
  Verdict v;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("dirichlet-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string out = (dir / "series.jsonl").string();
  const std::vector<std::string> files{out, out + ".blocks.jsonl", out + ".manifest.json"};
  const std::vector<std::string> args{"dirichlet-strip", "construct", "--kmax", "6", "--seed", "17", "--out", out};
  std::vector<std::string> first, second;
  std::ostringstream sink, err;
  v.require(cli::run(args, sink, err) == 0, "first run exits 0");
  for (const auto& f : files) first.push_back(slurp(f));
  for (const auto& f : files) fs::remove(f);
  v.require(cli::run(args, sink, err) == 0, "second run exits 0");
  for (const auto& f : files) second.push_back(slurp(f));
  for (std::size_t i = 0; i < files.size(); ++i) {
    v.require(!first[i].empty(), fs::path(files[i]).filename().string() + " non-empty");
    v.require(first[i] == second[i], fs::path(files[i]).filename().string() + " identical");
  }
  v.note("coefficients digest " + cli::fnv1a64_hex(first[0]) + " (" + std::to_string(first[0].size()) + " bytes) on both runs");
  fs::remove_all(dir);
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"construction shape", construction_shape},
      {"monomial bracketing", monomial_bracketing},
      {"prime ratio window", pnt_window},
      {"time-average identity", time_average},
      {"Cauchy-Schwarz step", cauchy_schwarz},
      {"random polynomial sup decay", kahane_decay},
      {"block decay vs absolute growth", block_decay_vs_growth},
      {"contour recovery and kernel dichotomy", perron_exactness},
      {"partial-sum error law", perron_error_law},
      {"zeta identities", zeta_identities},
      {"construct determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.note(std::string("exception: ") + e.what());
    }
    failed += !v.pass;
    std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
