#include "dirichlet/randpoly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "dirichlet/errors.hpp"
#include "dirichlet/monomials.hpp"
#include "dirichlet/rng.hpp"

namespace dirichlet::randpoly {

namespace {

constexpr std::uint64_t kSignDomain = 0x5349474e;   // "SIGN"
constexpr std::uint64_t kPhaseDomain = 0x50484153;  // "PHAS"
constexpr std::size_t kSampleBatch = 64;

}  // namespace

SignedHomogeneousPolynomial::SignedHomogeneousPolynomial(std::uint32_t n_vars,
                                                         std::uint32_t degree,
                                                         SignSource source)
    : n_vars_(n_vars),
      degree_(degree),
      source_(source),
      term_count_(monomials::count_monomials(n_vars, degree)),
      all_plus_(std::holds_alternative<AllPlus>(source)) {
  if (!all_plus_) {
    const auto seed = std::get<Seeded>(source).seed;
    key_ = rng::derive_key(seed, kSignDomain ^ n_vars, degree);
  }
}

int SignedHomogeneousPolynomial::sign_from_key(std::uint64_t key, std::uint64_t rank) noexcept {
  return (rng::draw(key, rank) >> 63) ? -1 : 1;
}

int SignedHomogeneousPolynomial::sign(std::uint64_t rank) const {
  if (rank >= term_count_) throw InvalidArgument("sign: rank out of range");
  return sign_unchecked(rank);
}

SignedHomogeneousPolynomial make_polynomial(std::uint32_t n_vars, std::uint32_t degree,
                                            SignSource source) {
  if (std::holds_alternative<Seeded>(source)) {
    if (n_vars < 2 || degree < 2)
      throw InvalidArgument("make_polynomial: seeded polynomials need n_vars >= 2 and degree >= 2");
  } else if (n_vars < 1) {
    throw InvalidArgument("make_polynomial: n_vars must be >= 1");
  }
  return SignedHomogeneousPolynomial(n_vars, degree, source);
}

PointBatch::PointBatch(std::size_t n_vars, std::size_t width)
    : n_vars_(n_vars), width_(width), re_(n_vars * width, 0.0), im_(n_vars * width, 0.0) {}

void PointBatch::set_point(std::size_t lane, std::span<const Complex> point) {
  for (std::size_t j = 0; j < n_vars_; ++j) set(j, lane, point[j]);
}

PolynomialEvaluator::PolynomialEvaluator(SignedHomogeneousPolynomial poly)
    : poly_(std::move(poly)) {
  if (poly_.term_count() <= kMaterializeLimit) {
    signs_.resize(poly_.term_count());
    for (std::uint64_t r = 0; r < poly_.term_count(); ++r)
      signs_[r] = static_cast<double>(poly_.sign_unchecked(r));
  }
}

void PolynomialEvaluator::evaluate_batch(const PointBatch& batch, std::span<Complex> out) const {
  const std::uint32_t n = poly_.n_vars();
  const std::uint32_t m = poly_.degree();
  const std::size_t width = batch.width();
  if (batch.n_vars() != n) throw InvalidArgument("evaluate_batch: dimension mismatch");
  if (width > kMaxBatch) throw InvalidArgument("evaluate_batch: batch too wide");
  if (out.size() < width) throw InvalidArgument("evaluate_batch: output too short");
  if (m == 0) {
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(width),
              Complex(poly_.sign_unchecked(0), 0.0));
    return;
  }

  // Rows are the nondecreasing index prefixes of length m - 1, in lex order.
  const std::size_t depth = m - 1;
  std::vector<std::uint32_t> idx(depth, 0);
  std::vector<double> pre_re(depth * width), pre_im(depth * width);
  auto recompute_from = [&](std::size_t from) {
    for (std::size_t d = from; d < depth; ++d) {
      const double* zr = batch.re(idx[d]);
      const double* zi = batch.im(idx[d]);
      double* pr = pre_re.data() + d * width;
      double* pi = pre_im.data() + d * width;
      if (d == 0) {
        std::copy(zr, zr + width, pr);
        std::copy(zi, zi + width, pi);
      } else {
        const double* qr = pre_re.data() + (d - 1) * width;
        const double* qi = pre_im.data() + (d - 1) * width;
        for (std::size_t b = 0; b < width; ++b) {
          pr[b] = qr[b] * zr[b] - qi[b] * zi[b];
          pi[b] = qr[b] * zi[b] + qi[b] * zr[b];
        }
      }
    }
  };
  recompute_from(0);

  std::array<double, kMaxBatch> acc_re{}, acc_im{}, tot_re{}, tot_im{};
  std::uint64_t rank = 0;
  const bool cached = !signs_.empty();
  while (true) {
    const std::uint32_t start = depth ? idx[depth - 1] : 0;
    std::fill(acc_re.begin(), acc_re.begin() + static_cast<std::ptrdiff_t>(width), 0.0);
    std::fill(acc_im.begin(), acc_im.begin() + static_cast<std::ptrdiff_t>(width), 0.0);
    for (std::uint32_t l = start; l < n; ++l) {
      const double s = cached ? signs_[rank + (l - start)]
                              : static_cast<double>(poly_.sign_unchecked(rank + (l - start)));
      const double* zr = batch.re(l);
      const double* zi = batch.im(l);
      for (std::size_t b = 0; b < width; ++b) {
        acc_re[b] += s * zr[b];
        acc_im[b] += s * zi[b];
      }
    }
    rank += n - start;
    if (depth == 0) {
      for (std::size_t b = 0; b < width; ++b) {
        tot_re[b] += acc_re[b];
        tot_im[b] += acc_im[b];
      }
      break;
    }
    const double* pr = pre_re.data() + (depth - 1) * width;
    const double* pi = pre_im.data() + (depth - 1) * width;
    for (std::size_t b = 0; b < width; ++b) {
      tot_re[b] += pr[b] * acc_re[b] - pi[b] * acc_im[b];
      tot_im[b] += pr[b] * acc_im[b] + pi[b] * acc_re[b];
    }
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(depth) - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - 1) --i;
    if (i < 0) break;
    const auto pos = static_cast<std::size_t>(i);
    ++idx[pos];
    for (std::size_t j = pos + 1; j < depth; ++j) idx[j] = idx[pos];
    recompute_from(pos);
  }
  for (std::size_t b = 0; b < width; ++b) out[b] = {tot_re[b], tot_im[b]};
}

Complex PolynomialEvaluator::evaluate(std::span<const Complex> point) const {
  if (point.size() != poly_.n_vars())
    throw InvalidArgument("evaluate: point length must equal n_vars");
  PointBatch batch(point.size(), 1);
  batch.set_point(0, point);
  Complex out;
  evaluate_batch(batch, std::span<Complex>(&out, 1));
  return out;
}

Complex evaluate(const SignedHomogeneousPolynomial& poly, std::span<const Complex> point) {
  return PolynomialEvaluator(poly).evaluate(point);
}

std::pair<double, double> maximize_trig_modulus(std::span<const Complex> coeffs) {
  auto value = [&](double theta) {
    Complex sum = 0.0;
    for (std::size_t e = coeffs.size(); e-- > 0;) sum = sum * std::polar(1.0, theta) + coeffs[e];
    return std::abs(sum);
  };
  const std::size_t grid = std::max<std::size_t>(16, 16 * coeffs.size());
  const double step = 2.0 * std::numbers::pi / static_cast<double>(grid);
  double best_theta = 0.0;
  double best = value(0.0);
  for (std::size_t g = 1; g < grid; ++g) {
    const double theta = step * static_cast<double>(g);
    const double v = value(theta);
    if (v > best) {
      best = v;
      best_theta = theta;
    }
  }
  // Golden-section search for the maximum on [best - step, best + step].
  constexpr double kInvPhi = 0.618033988749894848204586834365638;
  double lo = best_theta - step, hi = best_theta + step;
  double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
  double f1 = value(x1), f2 = value(x2);
  for (int iter = 0; iter < 80; ++iter) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = value(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = value(x1);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fm = value(mid);
  if (fm > best) return {mid, fm};
  return {best_theta, best};
}

namespace {

// Coordinate-wise ascent of |P| over the phases of `point`.
void refine_phases(const PolynomialEvaluator& evaluator, std::span<const double> radii,
                   std::vector<Complex>& point, unsigned sweeps) {
  const std::uint32_t m = evaluator.polynomial().degree();
  if (m == 0) return;
  const std::size_t n = point.size();
  const std::size_t lanes = m + 1;
  std::vector<Complex> roots(lanes), values(lanes), coeffs(lanes);
  for (std::size_t q = 0; q < lanes; ++q)
    roots[q] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(q) /
                                   static_cast<double>(lanes));
  PointBatch batch(n, lanes);
  for (unsigned sweep = 0; sweep < sweeps; ++sweep) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t q = 0; q < lanes; ++q) {
        batch.set_point(q, point);
        batch.set(j, q, radii[j] * roots[q]);
      }
      evaluator.evaluate_batch(batch, values);
      // P restricted to z_j = radii[j] w is a polynomial of degree <= m in w;
      // recover its coefficients by an inverse DFT over the (m+1)-th roots.
      for (std::size_t e = 0; e < lanes; ++e) {
        Complex c = 0.0;
        for (std::size_t q = 0; q < lanes; ++q) c += values[q] * std::conj(roots[(q * e) % lanes]);
        coeffs[e] = c / static_cast<double>(lanes);
      }
      const double current_theta = std::arg(point[j]);
      Complex current = 0.0;
      for (std::size_t e = lanes; e-- > 0;) current = current * std::polar(1.0, current_theta) + coeffs[e];
      const auto [theta, modulus] = maximize_trig_modulus(coeffs);
      if (modulus > std::abs(current)) point[j] = std::polar(radii[j], theta);
    }
  }
}

struct Candidate {
  double modulus;
  std::uint64_t index;
};

}  // namespace

SupEstimate estimate_sup_polytorus(const PolynomialEvaluator& evaluator,
                                   std::span<const double> radii, const SupOptions& options) {
  const auto& poly = evaluator.polynomial();
  const std::size_t n = poly.n_vars();
  if (radii.size() != n) throw InvalidArgument("estimate_sup_polytorus: radii length must equal n_vars");
  if (options.n_samples == 0) throw InvalidArgument("estimate_sup_polytorus: n_samples must be positive");
  for (double r : radii)
    if (!(r > 0.0)) throw InvalidArgument("estimate_sup_polytorus: radii must be positive");

  const std::uint64_t key = rng::derive_key(options.sample_seed, kPhaseDomain, n);
  auto sample_point = [&](std::uint64_t i) {
    std::vector<Complex> point(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double theta = 2.0 * std::numbers::pi * rng::draw_unit(key, i * n + j);
      point[j] = std::polar(radii[j], theta);
    }
    return point;
  };

  const std::size_t keep = std::max<unsigned>(1, options.refine_candidates);
  std::vector<Candidate> best;
  std::array<Complex, kSampleBatch> values{};
  for (std::uint64_t start = 0; start < options.n_samples; start += kSampleBatch) {
    const std::size_t width =
        static_cast<std::size_t>(std::min<std::uint64_t>(kSampleBatch, options.n_samples - start));
    PointBatch batch(n, width);
    for (std::size_t lane = 0; lane < width; ++lane) {
      const std::uint64_t i = start + lane;
      for (std::size_t j = 0; j < n; ++j) {
        const double theta = 2.0 * std::numbers::pi * rng::draw_unit(key, i * n + j);
        batch.set(j, lane, std::polar(radii[j], theta));
      }
    }
    evaluator.evaluate_batch(batch, values);
    for (std::size_t lane = 0; lane < width; ++lane) {
      const Candidate c{std::abs(values[lane]), start + lane};
      if (best.size() == keep && c.modulus <= best.back().modulus) continue;
      auto pos = std::upper_bound(best.begin(), best.end(), c, [](const Candidate& a, const Candidate& b) {
        return a.modulus > b.modulus;
      });
      best.insert(pos, c);
      if (best.size() > keep) best.pop_back();
    }
  }

  SupEstimate result;
  result.samples_used = options.n_samples;
  result.estimate = -1.0;
  for (const auto& candidate : best) {
    std::vector<Complex> point = sample_point(candidate.index);
    refine_phases(evaluator, radii, point, options.sweeps);
    const double modulus = std::abs(evaluator.evaluate(point));
    if (modulus > result.estimate) {
      result.estimate = modulus;
      result.witness_point = std::move(point);
    }
  }
  return result;
}

SupEstimate estimate_sup_polytorus(const SignedHomogeneousPolynomial& poly,
                                   std::span<const double> radii, const SupOptions& options) {
  return estimate_sup_polytorus(PolynomialEvaluator(poly), radii, options);
}

double kahane_bound(double n_vars, std::uint32_t degree, double c2) {
  if (degree < 2) throw InvalidArgument("kahane_bound: degree must be >= 2");
  return c2 * std::pow(n_vars, (static_cast<double>(degree) + 1.0) / 2.0) *
         std::sqrt(std::log(static_cast<double>(degree)));
}

}  // namespace dirichlet::randpoly
