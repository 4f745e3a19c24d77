#include "dirichlet/series.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include <json.hpp>

#include "dirichlet/compensated.hpp"
#include "dirichlet/errors.hpp"
#include "dirichlet/quadrature.hpp"

namespace dirichlet::series {

namespace {

bool by_index(const Term& x, const Term& y) { return x.n < y.n; }

// Precomputed weights a_n n^{-b} and frequencies ln n for n <= N.
struct LineTerms {
  std::vector<double> weight;
  std::vector<double> log_n;
};

LineTerms line_terms(const DirichletCoefficients& coeffs, double b, Index N) {
  LineTerms out;
  for (const Term& t : coeffs.up_to(N)) {
    const double ln = log_index(t.n);
    out.weight.push_back(t.a * std::exp(-b * ln));
    out.log_n.push_back(ln);
  }
  return out;
}

double line_modulus_squared(const LineTerms& terms, double t) {
  CompensatedSum re, im;
  for (std::size_t i = 0; i < terms.weight.size(); ++i) {
    const double phase = -t * terms.log_n[i];
    re.add(terms.weight[i] * std::cos(phase));
    im.add(terms.weight[i] * std::sin(phase));
  }
  return std::norm(Complex(re.value(), im.value()));
}

}  // namespace

DirichletCoefficients DirichletCoefficients::from_terms(std::vector<Term> terms, std::size_t cap) {
  std::sort(terms.begin(), terms.end(), by_index);
  DirichletCoefficients out(cap);
  for (const Term& t : terms) {
    if (t.n == 0) throw InvalidArgument("Dirichlet coefficients are indexed from 1");
    if (!out.terms_.empty() && out.terms_.back().n == t.n)
      out.terms_.back().a += t.a;
    else
      out.terms_.push_back(t);
  }
  std::erase_if(out.terms_, [](const Term& t) { return t.a == 0.0; });
  if (out.terms_.size() > cap)
    throw ResourceError("Dirichlet coefficients exceed the materialization cap (" +
                        std::to_string(cap) + ")");
  return out;
}

void DirichletCoefficients::set(Index n, double a) {
  if (n == 0) throw InvalidArgument("Dirichlet coefficients are indexed from 1");
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{n, 0.0}, by_index);
  const bool present = it != terms_.end() && it->n == n;
  if (a == 0.0) {
    if (present) terms_.erase(it);
    return;
  }
  if (present) {
    it->a = a;
    return;
  }
  if (terms_.size() >= cap_)
    throw ResourceError("Dirichlet coefficients exceed the materialization cap (" +
                        std::to_string(cap_) + ")");
  terms_.insert(it, Term{n, a});
}

double DirichletCoefficients::at(Index n) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{n, 0.0}, by_index);
  return (it != terms_.end() && it->n == n) ? it->a : 0.0;
}

Index DirichletCoefficients::min_index() const {
  if (terms_.empty()) throw InvalidArgument("min_index of empty coefficients");
  return terms_.front().n;
}

Index DirichletCoefficients::max_index() const {
  if (terms_.empty()) throw InvalidArgument("max_index of empty coefficients");
  return terms_.back().n;
}

std::span<const Term> DirichletCoefficients::up_to(Index limit) const {
  auto it = std::upper_bound(terms_.begin(), terms_.end(), Term{limit, 0.0}, by_index);
  return {terms_.data(), static_cast<std::size_t>(it - terms_.begin())};
}

DirichletCoefficients eta_coefficients(std::uint64_t count) {
  std::vector<Term> terms;
  terms.reserve(count);
  for (std::uint64_t n = 1; n <= count; ++n) terms.push_back({n, (n % 2 == 1) ? 1.0 : -1.0});
  return DirichletCoefficients::from_terms(std::move(terms), std::max<std::size_t>(count, kDefaultEntryCap));
}

Complex partial_sum(const DirichletCoefficients& coeffs, Complex s, Index N) {
  CompensatedComplexSum sum;
  for (const Term& t : coeffs.up_to(N)) sum.add(t.a * std::exp(-s * log_index(t.n)));
  return sum.value();
}

double absolute_partial_sum(const DirichletCoefficients& coeffs, double sigma, Index N) {
  CompensatedSum sum;
  for (const Term& t : coeffs.up_to(N)) sum.add(std::abs(t.a) * std::exp(-sigma * log_index(t.n)));
  return sum.value();
}

double diagonal_square_sum(const DirichletCoefficients& coeffs, double b, Index N) {
  CompensatedSum sum;
  for (const Term& t : coeffs.up_to(N)) sum.add(t.a * t.a * std::exp(-2.0 * b * log_index(t.n)));
  return sum.value();
}

double time_average_square(const DirichletCoefficients& coeffs, double b, double T, Index N,
                           AverageMode mode, double tolerance) {
  if (!(T > 0.0)) throw InvalidArgument("time_average_square: T must be positive");
  const LineTerms terms = line_terms(coeffs, b, N);
  const std::size_t count = terms.weight.size();
  if (count == 0) return 0.0;

  if (mode == AverageMode::closed_form) {
    CompensatedSum sum;
    for (std::size_t i = 0; i < count; ++i) sum.add(terms.weight[i] * terms.weight[i]);
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        const double x = T * (terms.log_n[j] - terms.log_n[i]);
        sum.add(2.0 * terms.weight[i] * terms.weight[j] * std::sin(x) / x);
      }
    }
    return sum.value();
  }

  // Real coefficients make |F(b+it)|^2 even in t, so average over [0, T].
  const double fastest = terms.log_n.back() - terms.log_n.front();
  quad::Options options;
  options.abs_tolerance = tolerance * T;
  options.max_panel_width = fastest > 0.0 ? std::numbers::pi / fastest : T;
  const auto result = quad::integrate_real(
      [&terms](double t) { return line_modulus_squared(terms, t); }, 0.0, T, options);
  return result.value.real() / T;
}

double sinc_tail_bound(const DirichletCoefficients& coeffs, double b, double T, Index N) {
  const LineTerms terms = line_terms(coeffs, b, N);
  CompensatedSum sum;
  for (std::size_t i = 0; i < terms.weight.size(); ++i)
    for (std::size_t j = i + 1; j < terms.weight.size(); ++j)
      sum.add(std::abs(terms.weight[i] * terms.weight[j]) / (terms.log_n[j] - terms.log_n[i]));
  return 2.0 / T * sum.value();
}

double sampled_line_sup(const DirichletCoefficients& coeffs, double b, Index N, double t_max,
                        std::size_t samples) {
  const LineTerms terms = line_terms(coeffs, b, N);
  double best = 0.0;
  for (std::size_t i = 0; i <= samples; ++i) {
    const double t = samples == 0 ? 0.0 : t_max * static_cast<double>(i) / static_cast<double>(samples);
    best = std::max(best, std::sqrt(line_modulus_squared(terms, t)));
  }
  return best;
}

CauchySchwarzCheck cauchy_schwarz_check(const DirichletCoefficients& coeffs, double b, double eps,
                                        std::uint64_t N) {
  if (!(eps > 0.0)) throw InvalidArgument("cauchy_schwarz_check: eps must be positive");
  CompensatedSum lhs, weighted, harmonic;
  for (const Term& t : coeffs.up_to(N)) {
    const double ln = log_index(t.n);
    lhs.add(std::abs(t.a) * std::exp(-(b + eps + 0.5) * ln));
    weighted.add(t.a * t.a * std::exp(-2.0 * b * ln));
  }
  for (std::uint64_t n = 1; n <= N; ++n)
    harmonic.add(std::exp(-(1.0 + 2.0 * eps) * std::log(static_cast<double>(n))));
  CauchySchwarzCheck out;
  out.lhs = lhs.value();
  out.rhs = std::sqrt(weighted.value()) * std::sqrt(harmonic.value());
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-12);
  return out;
}

DirichletCoefficients add(const DirichletCoefficients& x, const DirichletCoefficients& y) {
  std::vector<Term> merged;
  merged.reserve(x.size() + y.size());
  merged.insert(merged.end(), x.begin(), x.end());
  merged.insert(merged.end(), y.begin(), y.end());
  return DirichletCoefficients::from_terms(std::move(merged), std::max(x.cap(), y.cap()));
}

DirichletCoefficients zeta_shift_coeffs(double lambda, std::uint64_t N, std::size_t cap) {
  if (N > cap) throw ResourceError("zeta_shift_coeffs: N exceeds the materialization cap");
  std::vector<Term> terms;
  terms.reserve(N);
  for (std::uint64_t n = 1; n <= N; ++n)
    terms.push_back({n, std::exp(-lambda * std::log(static_cast<double>(n)))});
  return DirichletCoefficients::from_terms(std::move(terms), cap);
}

AbscissaTriple AbscissaTriple::make(double sigma_abs, double sigma_unif, double sigma_conv,
                                    Provenance provenance) {
  if (!(sigma_conv <= sigma_unif && sigma_unif <= sigma_abs))
    throw InvalidArgument("abscissae must satisfy C <= B <= A");
  if (std::isfinite(sigma_abs) && std::isfinite(sigma_conv) && sigma_abs - sigma_conv > 1.0)
    throw InvalidArgument("abscissae must satisfy A - C <= 1");
  return {sigma_abs, sigma_unif, sigma_conv, provenance};
}

GrowthDiagnostic growth_exponents(const DirichletCoefficients& coeffs,
                                  std::span<const std::uint64_t> checkpoints) {
  GrowthDiagnostic out;
  for (std::uint64_t N : checkpoints) {
    if (N < 2) continue;
    CompensatedSum abs_sum, sum;
    for (const Term& t : coeffs.up_to(N)) {
      abs_sum.add(std::abs(t.a));
      sum.add(t.a);
    }
    const double log_n = std::log(static_cast<double>(N));
    out.checkpoints.push_back(static_cast<double>(N));
    out.abs_exponent.push_back(std::log(abs_sum.value()) / log_n);
    out.conv_exponent.push_back(std::log(std::abs(sum.value())) / log_n);
  }
  return out;
}

void write_jsonl(std::ostream& out, const DirichletCoefficients& coeffs) {
  for (const Term& t : coeffs) {
    nlohmann::ordered_json line;
    line["n"] = to_string(t.n);
    line["a"] = t.a;
    out << line.dump() << '\n';
  }
}

DirichletCoefficients read_jsonl(std::istream& in, std::size_t cap) {
  std::vector<Term> terms;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument("coefficient line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j["n"].is_string() || !j.contains("a") ||
        !j["a"].is_number())
      throw InvalidArgument("coefficient line " + std::to_string(line_no) +
                            ": expected {\"n\": string, \"a\": number}");
    terms.push_back({parse_index(j["n"].get<std::string>()), j["a"].get<double>()});
    if (terms.size() > cap) throw ResourceError("coefficient file exceeds the materialization cap");
  }
  return DirichletCoefficients::from_terms(std::move(terms), cap);
}

}  // namespace dirichlet::series
