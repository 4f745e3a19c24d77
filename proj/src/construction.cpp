#include "dirichlet/construction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "dirichlet/compensated.hpp"
#include "dirichlet/errors.hpp"
#include "dirichlet/monomials.hpp"
#include "dirichlet/primes.hpp"
#include "dirichlet/rng.hpp"

namespace dirichlet::construction {

namespace {

constexpr std::uint64_t kLineDomain = 0x4c494e45;  // "LINE"
constexpr std::size_t kLineBatch = 64;

void check_block(unsigned k) {
  if (k < kMinBlock || k > kMaxBlock)
    throw InvalidArgument("block index k must be in [" + std::to_string(kMinBlock) + ", " +
                          std::to_string(kMaxBlock) + "], got " + std::to_string(k));
}

void check_materializable(unsigned k) {
  if (k > kMaxMaterializedBlock)
    throw ResourceError("block " + std::to_string(k) +
                        " is stream-only; materialization is limited to k <= " +
                        std::to_string(kMaxMaterializedBlock));
}

Index power(std::uint64_t base, unsigned exponent) {
  Index out = 1;
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

}  // namespace

std::uint64_t BlockSpec::count() const { return monomials::count_monomials(n_vars, degree); }

Index BlockSpec::min_index() const { return power(primes.front(), degree); }

Index BlockSpec::max_index() const { return power(primes.back(), degree); }

BlockSpec block_spec(unsigned k) {
  check_block(k);
  BlockSpec spec;
  spec.k = k;
  spec.n_vars = 1u << k;
  spec.degree = k;
  spec.first_prime_index = std::uint64_t{1} << k;
  spec.last_prime_index = (std::uint64_t{1} << (k + 1)) - 1;
  spec.primes = primes::prime_window(spec.first_prime_index, spec.n_vars);
  return spec;
}

std::vector<SupportEntry> block_support(unsigned k) {
  check_block(k);
  check_materializable(k);
  const BlockSpec spec = block_spec(k);
  std::vector<SupportEntry> out;
  out.reserve(spec.count());
  for_each_support(spec, [&](std::uint64_t rank, Index n) { out.push_back({rank, n}); });
  return out;
}

randpoly::SignedHomogeneousPolynomial block_polynomial(unsigned k, std::uint64_t seed) {
  check_block(k);
  return randpoly::make_polynomial(1u << k, k, randpoly::Seeded{seed});
}

BlockStream::BlockStream(unsigned k, std::uint64_t seed)
    : spec_(block_spec(k)), seed_(seed), poly_(block_polynomial(k, seed)) {}

series::DirichletCoefficients build_block(unsigned k, std::uint64_t seed) {
  check_block(k);
  check_materializable(k);
  const BlockStream stream(k, seed);
  std::vector<series::Term> terms;
  terms.reserve(stream.count());
  stream.for_each([&](std::uint64_t, Index n, int sign) {
    terms.push_back({n, static_cast<double>(sign)});
  });
  return series::DirichletCoefficients::from_terms(std::move(terms));
}

std::vector<BlockManifest> ConstructedSeries::manifest() const {
  std::vector<BlockManifest> out;
  for (unsigned k = kMinBlock; k <= k_max; ++k) {
    const BlockSpec spec = block_spec(k);
    out.push_back({k, seed, spec.count(), spec.min_index(), spec.max_index()});
  }
  return out;
}

ConstructedSeries build_series(unsigned k_max, std::uint64_t seed) {
  check_block(k_max);
  ConstructedSeries out;
  out.k_max = k_max;
  out.seed = seed;
  std::vector<series::Term> terms;
  for (unsigned k = kMinBlock; k <= std::min(k_max, kMaxMaterializedBlock); ++k) {
    const BlockStream stream(k, seed);
    stream.for_each([&](std::uint64_t, Index n, int sign) {
      terms.push_back({n, static_cast<double>(sign)});
    });
  }
  out.materialized = series::DirichletCoefficients::from_terms(std::move(terms));
  for (unsigned k = kMaxMaterializedBlock + 1; k <= k_max; ++k) out.streaming.emplace_back(k, seed);
  return out;
}

double block_absolute_sum(unsigned k, double sigma) {
  const BlockSpec spec = block_spec(k);
  const auto n_vars = spec.n_vars;
  std::vector<double> weight(n_vars);
  for (std::uint32_t j = 0; j < n_vars; ++j)
    weight[j] = std::exp(-sigma * std::log(static_cast<double>(spec.primes[j])));

  // Same traversal as for_each_support, carrying n^{-sigma} as a product of
  // per-prime weights instead of the integer n.
  const unsigned depth = spec.degree - 1;
  std::vector<std::uint32_t> idx(depth, 0);
  std::vector<double> prefix(depth + 1, 1.0);
  for (unsigned d = 0; d < depth; ++d) prefix[d + 1] = prefix[d] * weight[idx[d]];
  CompensatedSum total;
  while (true) {
    const std::uint32_t start = depth ? idx[depth - 1] : 0;
    CompensatedSum row;
    for (std::uint32_t l = start; l < n_vars; ++l) row.add(prefix[depth] * weight[l]);
    total.add(row.value());
    if (depth == 0) break;
    int i = static_cast<int>(depth) - 1;
    while (i >= 0 && idx[static_cast<unsigned>(i)] == n_vars - 1) --i;
    if (i < 0) break;
    const auto pos = static_cast<unsigned>(i);
    ++idx[pos];
    for (unsigned j = pos + 1; j < depth; ++j) idx[j] = idx[pos];
    for (unsigned d = pos; d < depth; ++d) prefix[d + 1] = prefix[d] * weight[idx[d]];
  }
  return total.value();
}

std::vector<double> block_radii(unsigned k, double sigma) {
  const BlockSpec spec = block_spec(k);
  std::vector<double> radii(spec.n_vars);
  for (std::uint32_t j = 0; j < spec.n_vars; ++j)
    radii[j] = std::exp(-sigma * std::log(static_cast<double>(spec.primes[j])));
  return radii;
}

randpoly::SupEstimate block_line_sup(unsigned k, std::uint64_t seed, double sigma,
                                     const LineSupOptions& options) {
  if (options.samples == 0) throw InvalidArgument("block_line_sup: samples must be positive");
  if (!(options.t_max >= options.t_min)) throw InvalidArgument("block_line_sup: t_max < t_min");
  const BlockSpec spec = block_spec(k);
  const randpoly::PolynomialEvaluator evaluator(block_polynomial(k, seed));
  const std::size_t n = spec.n_vars;
  std::vector<double> log_p(n), radius(n);
  for (std::size_t j = 0; j < n; ++j) {
    log_p[j] = std::log(static_cast<double>(spec.primes[j]));
    radius[j] = std::exp(-sigma * log_p[j]);
  }
  auto point_at = [&](double t) {
    std::vector<randpoly::Complex> z(n);
    for (std::size_t j = 0; j < n; ++j) z[j] = std::polar(radius[j], -t * log_p[j]);
    return z;
  };
  auto modulus_at = [&](double t) { return std::abs(evaluator.evaluate(point_at(t))); };

  const std::uint64_t key = rng::derive_key(options.sample_seed, kLineDomain, k);
  const double span = options.t_max - options.t_min;
  double best_t = options.t_min;
  double best = -1.0;
  std::array<randpoly::Complex, kLineBatch> values{};
  for (std::size_t start = 0; start < options.samples; start += kLineBatch) {
    const std::size_t width = std::min(kLineBatch, options.samples - start);
    randpoly::PointBatch batch(n, width);
    std::array<double, kLineBatch> ts{};
    for (std::size_t lane = 0; lane < width; ++lane) {
      ts[lane] = options.t_min + span * rng::draw_unit(key, start + lane);
      for (std::size_t j = 0; j < n; ++j) batch.set(j, lane, std::polar(radius[j], -ts[lane] * log_p[j]));
    }
    evaluator.evaluate_batch(batch, values);
    for (std::size_t lane = 0; lane < width; ++lane) {
      const double m = std::abs(values[lane]);
      if (m > best) {
        best = m;
        best_t = ts[lane];
      }
    }
  }

  if (options.refine && span > 0.0) {
    // Golden-section search within one mean sample spacing of the best t.
    const double h = span / static_cast<double>(options.samples);
    constexpr double kInvPhi = 0.618033988749894848204586834365638;
    double lo = std::max(options.t_min, best_t - h), hi = std::min(options.t_max, best_t + h);
    double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
    double f1 = modulus_at(x1), f2 = modulus_at(x2);
    for (int iter = 0; iter < 48; ++iter) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + kInvPhi * (hi - lo);
        f2 = modulus_at(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - kInvPhi * (hi - lo);
        f1 = modulus_at(x1);
      }
    }
    const double t = f1 > f2 ? x1 : x2;
    const double m = std::max(f1, f2);
    if (m > best) {
      best = m;
      best_t = t;
    }
  }

  randpoly::SupEstimate out;
  out.witness_point = point_at(best_t);
  out.estimate = std::abs(evaluator.evaluate(out.witness_point));
  out.samples_used = options.samples;
  out.witness_t = best_t;
  return out;
}

double theoretical_block_sup_bound(unsigned k, double sigma, double c1, double c2) {
  if (k < 2) throw InvalidArgument("theoretical_block_sup_bound: k must be >= 2");
  const double kd = static_cast<double>(k);
  const double log_numerator =
      std::log(c2) + kd * (kd + 1.0) / 2.0 * std::numbers::ln2 + 0.5 * std::log(std::log(kd));
  const double log_base = std::log(kd) + kd * std::numbers::ln2 - std::log(2.0 * c1);
  return std::exp(log_numerator - kd * sigma * log_base);
}

double divergence_lower_bound_log(double k, double sigma, double c1) {
  return k * k * (1.0 - sigma) * std::numbers::ln2 - k * (1.0 + sigma) * std::log(3.0 * c1 * k);
}

double divergence_lower_bound(unsigned k, double sigma, double c1) {
  if (k < 2) throw InvalidArgument("divergence_lower_bound: k must be >= 2");
  return std::exp(divergence_lower_bound_log(static_cast<double>(k), sigma, c1));
}

series::DirichletCoefficients combine_width(const ConstructedSeries& series, double lambda,
                                            std::uint64_t N) {
  if (!(lambda >= 0.0 && lambda <= 0.5))
    throw InvalidArgument("combine_width: lambda must lie in [0, 1/2]");
  const auto truncated = series.materialized.up_to(N);
  const auto head = series::DirichletCoefficients::from_terms(
      {truncated.begin(), truncated.end()}, series.materialized.cap());
  return series::add(head, series::zeta_shift_coeffs(lambda, N));
}

series::AbscissaTriple combined_abscissae(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 0.5))
    throw InvalidArgument("combined_abscissae: lambda must lie in [0, 1/2]");
  return series::AbscissaTriple::make(1.0, 1.0 - lambda, 1.0 - lambda,
                                      series::Provenance::theoretical);
}

void write_manifest_jsonl(std::ostream& out, const std::vector<BlockManifest>& blocks) {
  for (const auto& b : blocks) {
    nlohmann::ordered_json line;
    line["k"] = b.k;
    line["seed"] = b.seed;
    line["count"] = b.count;
    line["min_n"] = to_string(b.min_n);
    line["max_n"] = to_string(b.max_n);
    out << line.dump() << '\n';
  }
}

}  // namespace dirichlet::construction
