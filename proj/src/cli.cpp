#include "dirichlet/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "dirichlet/construction.hpp"
#include "dirichlet/errors.hpp"
#include "dirichlet/format.hpp"
#include "dirichlet/perron.hpp"
#include "dirichlet/primes.hpp"
#include "dirichlet/randpoly.hpp"
#include "dirichlet/rng.hpp"
#include "dirichlet/series.hpp"
#include "dirichlet/zeta_eta.hpp"

namespace dirichlet::cli {

namespace {

using Json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << content;
  file.flush();
  if (!file) throw IoError("failed writing '" + path + "'");
}

struct Artifact {
  std::string path;
  std::string digest;
};

void write_run_manifest(const std::string& path, const std::string& command, const Json& parameters,
                        const std::vector<Artifact>& outputs) {
  Json manifest;
  manifest["command"] = command;
  manifest["parameters"] = parameters;
  manifest["tool_version"] = std::string(kToolVersion);
  Json list = Json::array();
  for (const auto& a : outputs) list.push_back(Json{{"path", a.path}, {"fnv1a64", a.digest}});
  manifest["outputs"] = list;
  write_file(path, manifest.dump(2) + "\n");
}

// Sends a report to --out (or the output stream) and records its manifest
// when --manifest was given.
void emit_report(const std::string& command, const Json& parameters, const std::string& text,
                 const std::string& out_path, const std::string& manifest_path, std::ostream& out) {
  if (out_path.empty())
    out << text;
  else
    write_file(out_path, text);
  if (!manifest_path.empty())
    write_run_manifest(manifest_path, command, parameters,
                       {{out_path.empty() ? "-" : out_path, fnv1a64_hex(text)}});
}

void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) row += ',';
    row += c;
    first = false;
  }
  return row + '\n';
}

std::string num(double x) { return format_number(x); }

// ---------------------------------------------------------------- construct

struct ConstructArgs {
  unsigned k_max = 5;
  std::uint64_t seed = 0;
  std::string out = "series.jsonl";
};

void run_construct(const ConstructArgs& a, std::ostream& out) {
  require(a.k_max >= construction::kMinBlock && a.k_max <= construction::kMaxBlock,
          "--kmax must be in [2, 9]");
  const auto built = construction::build_series(a.k_max, a.seed);
  std::ostringstream coeffs, blocks;
  series::write_jsonl(coeffs, built.materialized);
  construction::write_manifest_jsonl(blocks, built.manifest());
  const std::string blocks_path = a.out + ".blocks.jsonl";
  const std::string manifest_path = a.out + ".manifest.json";
  write_file(a.out, coeffs.str());
  write_file(blocks_path, blocks.str());
  Json params;
  params["kmax"] = a.k_max;
  params["seed"] = a.seed;
  params["out"] = a.out;
  write_run_manifest(manifest_path, "construct", params,
                     {{a.out, fnv1a64_hex(coeffs.str())}, {blocks_path, fnv1a64_hex(blocks.str())}});
  Json summary;
  summary["coefficients"] = built.materialized.size();
  summary["materialized_blocks"] = std::min(a.k_max, construction::kMaxMaterializedBlock) - 1;
  summary["streaming_blocks"] = built.streaming.size();
  summary["out"] = a.out;
  out << summary.dump() << '\n';
}

// ------------------------------------------------------------------ supnorm

struct SupnormArgs {
  std::uint32_t n_vars = 64;
  std::uint32_t degree = 3;
  std::uint64_t seed = 1;
  bool all_plus = false;
  std::uint64_t samples = randpoly::kDefaultSupSamples;
  std::uint64_t sample_seed = 0;
  unsigned sweeps = randpoly::kDefaultRefinementSweeps;
  double c2 = randpoly::kDefaultC2;
  std::string out, manifest;
};

void run_supnorm(const SupnormArgs& a, std::ostream& out) {
  randpoly::SignSource source = a.all_plus ? randpoly::SignSource{randpoly::AllPlus{}}
                                           : randpoly::SignSource{randpoly::Seeded{a.seed}};
  const auto poly = randpoly::make_polynomial(a.n_vars, a.degree, source);
  const std::vector<double> radii(a.n_vars, 1.0);
  randpoly::SupOptions options;
  options.n_samples = a.samples;
  options.sample_seed = a.sample_seed;
  options.sweeps = a.sweeps;
  const auto est = randpoly::estimate_sup_polytorus(poly, radii, options);
  const double bound = a.degree >= 2 ? randpoly::kahane_bound(a.n_vars, a.degree, a.c2) : NAN;
  std::string text = "n_vars,degree,sign_source,seed,samples,sample_seed,sweeps,sup_estimate,"
                     "c2*n^((m+1)/2)*sqrt(log m),term_count\n";
  text += csv_row({std::to_string(a.n_vars), std::to_string(a.degree), a.all_plus ? "all_plus" : "seeded",
                   std::to_string(a.seed), std::to_string(a.samples), std::to_string(a.sample_seed),
                   std::to_string(a.sweeps), num(est.estimate), num(bound),
                   std::to_string(poly.term_count())});
  Json params;
  params["nvars"] = a.n_vars;
  params["degree"] = a.degree;
  params["seed"] = a.seed;
  params["all_plus"] = a.all_plus;
  params["samples"] = a.samples;
  params["sample_seed"] = a.sample_seed;
  params["sweeps"] = a.sweeps;
  params["c2"] = a.c2;
  emit_report("supnorm", params, text, a.out, a.manifest, out);
}

// ------------------------------------------------------------------ reports

struct ReportCommon {
  std::string out, manifest;
};

struct BoundsArgs {
  std::vector<unsigned> k{2};
  double sigma = 0.5;
  double c1 = primes::kDefaultC1;
  double c2 = randpoly::kDefaultC2;
};

void run_bounds(const BoundsArgs& a, const ReportCommon& common, std::ostream& out) {
  std::string text = "k,sigma,c1,c2,block_sup_bound,block_sup_bound^(1/k),divergence_lower_bound\n";
  for (unsigned k : a.k) {
    require(k >= 2, "--k values must be >= 2");
    const double bound = construction::theoretical_block_sup_bound(k, a.sigma, a.c1, a.c2);
    text += csv_row({std::to_string(k), num(a.sigma), num(a.c1), num(a.c2), num(bound),
                     num(std::pow(bound, 1.0 / k)),
                     num(construction::divergence_lower_bound(k, a.sigma, a.c1))});
  }
  Json params;
  params["k"] = a.k;
  params["sigma"] = a.sigma;
  params["c1"] = a.c1;
  params["c2"] = a.c2;
  emit_report("report bounds", params, text, common.out, common.manifest, out);
}

struct SupscanArgs {
  unsigned k_min = 2;
  unsigned k_max = 5;
  std::uint64_t seed = 0;
  double sigma = 0.5;
  std::size_t samples = 4096;
  double t_max = 1e4;
  std::uint64_t sample_seed = 0;
  double c1 = primes::kDefaultC1;
  double c2 = randpoly::kDefaultC2;
};

void run_supscan(const SupscanArgs& a, const ReportCommon& common, std::ostream& out) {
  require(a.k_min >= 2 && a.k_min <= a.k_max && a.k_max <= construction::kMaxBlock,
          "--kmin/--kmax must satisfy 2 <= kmin <= kmax <= 9");
  std::string text = "k,count,line_sup,witness_t,block_absolute_sum,block_sup_bound\n";
  construction::LineSupOptions options;
  options.samples = a.samples;
  options.t_max = a.t_max;
  options.sample_seed = a.sample_seed;
  for (unsigned k = a.k_min; k <= a.k_max; ++k) {
    const auto est = construction::block_line_sup(k, a.seed, a.sigma, options);
    text += csv_row({std::to_string(k), std::to_string(construction::block_spec(k).count()),
                     num(est.estimate), num(est.witness_t.value_or(NAN)),
                     num(construction::block_absolute_sum(k, a.sigma)),
                     num(construction::theoretical_block_sup_bound(k, a.sigma, a.c1, a.c2))});
  }
  Json params;
  params["kmin"] = a.k_min;
  params["kmax"] = a.k_max;
  params["seed"] = a.seed;
  params["sigma"] = a.sigma;
  params["samples"] = a.samples;
  params["tmax"] = a.t_max;
  params["sample_seed"] = a.sample_seed;
  params["c1"] = a.c1;
  params["c2"] = a.c2;
  emit_report("report supscan", params, text, common.out, common.manifest, out);
}

struct DivergenceArgs {
  unsigned k_min = 2;
  unsigned k_max = 6;
  double sigma = 0.5;
  double c1 = primes::kDefaultC1;
};

void run_divergence(const DivergenceArgs& a, const ReportCommon& common, std::ostream& out) {
  require(a.k_min >= 2 && a.k_min <= a.k_max && a.k_max <= construction::kMaxBlock,
          "--kmin/--kmax must satisfy 2 <= kmin <= kmax <= 9");
  std::string text = "k,count,block_absolute_sum,divergence_lower_bound,log_divergence_lower_bound\n";
  for (unsigned k = a.k_min; k <= a.k_max; ++k) {
    text += csv_row({std::to_string(k), std::to_string(construction::block_spec(k).count()),
                     num(construction::block_absolute_sum(k, a.sigma)),
                     num(construction::divergence_lower_bound(k, a.sigma, a.c1)),
                     num(construction::divergence_lower_bound_log(k, a.sigma, a.c1))});
  }
  Json params;
  params["kmin"] = a.k_min;
  params["kmax"] = a.k_max;
  params["sigma"] = a.sigma;
  params["c1"] = a.c1;
  emit_report("report divergence", params, text, common.out, common.manifest, out);
}

struct PerronArgs {
  std::string series = "eta";
  std::string coeffs;
  double s = 0.8;
  double t = 0.0;
  double delta = 0.3;
  std::optional<double> b;
  std::optional<double> a;
  std::vector<std::uint64_t> M{8, 16, 32, 64};
};

void run_perron(const PerronArgs& p, const ReportCommon& common, std::ostream& out) {
  const perron::Complex s(p.s, p.t);
  const double b = p.b.value_or(p.s - p.delta);
  const double a = p.a.value_or(b + 1.0);
  std::vector<perron::ErrorScanRow> rows;
  if (!p.coeffs.empty()) {
    std::ifstream file(p.coeffs);
    if (!file) throw IoError("cannot open '" + p.coeffs + "'");
    const auto c = series::read_jsonl(file);
    require(!c.empty(), "coefficient file is empty");
    const auto f_at_s = series::partial_sum(c, s, c.max_index());
    rows = perron::perron_error_scan(f_at_s, c, s, b, a, p.delta, p.M);
  } else {
    require(p.series == "eta", "--series must be 'eta' (or pass --coeffs FILE)");
    const auto f_at_s = zeta::eta(s);
    rows = perron::perron_error_scan(
        f_at_s, [](std::uint64_t n) { return (n % 2 == 1) ? 1.0 : -1.0; }, s, b, a, p.delta, p.M);
  }
  std::ostringstream text;
  perron::write_error_scan_csv(text, rows);
  Json params;
  params["series"] = p.coeffs.empty() ? p.series : "file";
  params["coeffs"] = p.coeffs;
  params["s"] = p.s;
  params["t"] = p.t;
  params["delta"] = p.delta;
  params["b"] = b;
  params["a"] = a;
  params["M"] = p.M;
  emit_report("report perron", params, text.str(), common.out, common.manifest, out);
}

struct ZetaArgs {
  double s = 2.0;
  double t = 0.0;
  unsigned cesaro_order = 0;
  std::uint64_t N = 100000;
};

void run_zeta(const ZetaArgs& z, const ReportCommon& common, std::ostream& out) {
  const zeta::Complex s(z.s, z.t);
  zeta::Complex zeta_value, eta_value;
  std::string method;
  if (z.cesaro_order > 0 || s.real() <= 0.0) {
    require(z.cesaro_order > 0, "Re s <= 0 needs --cesaro-order >= 1");
    eta_value = zeta::cesaro_eta(s, z.cesaro_order, z.N);
    zeta_value = zeta::zeta_via_cesaro(s, z.cesaro_order, z.N);
    method = "cesaro" + std::to_string(z.cesaro_order);
  } else {
    eta_value = zeta::eta(s);
    zeta_value = zeta::zeta_via_eta(s);
    method = "euler";
  }
  std::string text = "s_re,s_im,zeta_re,zeta_im,eta_re,eta_im,method\n";
  text += csv_row({num(s.real()), num(s.imag()), num(zeta_value.real()), num(zeta_value.imag()),
                   num(eta_value.real()), num(eta_value.imag()), method});
  Json params;
  params["s"] = z.s;
  params["t"] = z.t;
  params["cesaro_order"] = z.cesaro_order;
  params["N"] = z.N;
  emit_report("report zeta", params, text, common.out, common.manifest, out);
}

struct AverageArgs {
  std::string series = "eta";
  std::uint64_t N = 50;
  double b = 0.0;
  double T = 1000.0;
  std::uint64_t seed = 0;
};

void run_average(const AverageArgs& a, const ReportCommon& common, std::ostream& out) {
  require(a.N >= 1, "--N must be >= 1");
  series::DirichletCoefficients c;
  if (a.series == "eta") {
    c = series::eta_coefficients(a.N);
  } else if (a.series == "ones") {
    c = series::zeta_shift_coeffs(0.0, a.N);
  } else if (a.series == "random") {
    const std::uint64_t key = rng::derive_key(a.seed, 0x52414e44, a.N);
    std::vector<series::Term> terms;
    for (std::uint64_t n = 1; n <= a.N; ++n)
      terms.push_back({n, (rng::draw(key, n) >> 63) ? -1.0 : 1.0});
    c = series::DirichletCoefficients::from_terms(std::move(terms));
  } else {
    throw InvalidArgument("--series must be one of eta, ones, random");
  }
  const double closed = series::time_average_square(c, a.b, a.T, a.N, series::AverageMode::closed_form);
  const double quad = series::time_average_square(c, a.b, a.T, a.N, series::AverageMode::quadrature);
  std::string text = "N,b,T,closed_form,quadrature,diagonal,sinc_tail_bound\n";
  text += csv_row({std::to_string(a.N), num(a.b), num(a.T), num(closed), num(quad),
                   num(series::diagonal_square_sum(c, a.b, a.N)),
                   num(series::sinc_tail_bound(c, a.b, a.T, a.N))});
  Json params;
  params["series"] = a.series;
  params["N"] = a.N;
  params["b"] = a.b;
  params["T"] = a.T;
  params["seed"] = a.seed;
  emit_report("report average", params, text, common.out, common.manifest, out);
}

void add_common(CLI::App* sub, ReportCommon& common) {
  sub->add_option("--out", common.out, "Write the CSV here instead of standard output");
  sub->add_option("--manifest", common.manifest, "Write a run manifest (JSON) to this path");
}

}  // namespace

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << hash;
  return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dirichlet series strip toolkit: extremal block construction, random polynomial "
               "sup norms, Perron partial sums and zeta/eta identities."};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  ConstructArgs construct_args;
  auto* construct = app.add_subcommand("construct", "Build the block series and export coefficients");
  construct->add_option("--kmax", construct_args.k_max, "Largest block index (2..9)")->required();
  construct->add_option("--seed", construct_args.seed, "Sign seed shared by all blocks");
  construct->add_option("--out", construct_args.out, "Coefficient JSON-lines path")->capture_default_str();

  SupnormArgs sup_args;
  auto* supnorm = app.add_subcommand("supnorm", "Sampled polytorus sup norm of a random +-1 polynomial");
  supnorm->add_option("--nvars", sup_args.n_vars)->capture_default_str();
  supnorm->add_option("--degree", sup_args.degree)->capture_default_str();
  supnorm->add_option("--seed", sup_args.seed)->capture_default_str();
  supnorm->add_flag("--all-plus", sup_args.all_plus, "Use all +1 coefficients");
  supnorm->add_option("--samples", sup_args.samples)->capture_default_str();
  supnorm->add_option("--sample-seed", sup_args.sample_seed)->capture_default_str();
  supnorm->add_option("--sweeps", sup_args.sweeps)->capture_default_str();
  supnorm->add_option("--c2", sup_args.c2)->capture_default_str();
  supnorm->add_option("--out", sup_args.out);
  supnorm->add_option("--manifest", sup_args.manifest);

  auto* report = app.add_subcommand("report", "Numerical verification tables (CSV)");
  report->require_subcommand(1);
  ReportCommon common;

  BoundsArgs bounds_args;
  auto* bounds = report->add_subcommand("bounds", "Block sup bound and divergence lower bound formulas");
  bounds->add_option("--k", bounds_args.k, "Block indices")->delimiter(',')->capture_default_str();
  bounds->add_option("--sigma", bounds_args.sigma)->capture_default_str();
  bounds->add_option("--c1", bounds_args.c1)->capture_default_str();
  bounds->add_option("--c2", bounds_args.c2)->capture_default_str();
  add_common(bounds, common);

  SupscanArgs supscan_args;
  auto* supscan = report->add_subcommand("supscan", "Sampled block sups along Re s = sigma");
  supscan->add_option("--kmin", supscan_args.k_min)->capture_default_str();
  supscan->add_option("--kmax", supscan_args.k_max)->capture_default_str();
  supscan->add_option("--seed", supscan_args.seed)->capture_default_str();
  supscan->add_option("--sigma", supscan_args.sigma)->capture_default_str();
  supscan->add_option("--samples", supscan_args.samples)->capture_default_str();
  supscan->add_option("--tmax", supscan_args.t_max)->capture_default_str();
  supscan->add_option("--sample-seed", supscan_args.sample_seed)->capture_default_str();
  supscan->add_option("--c1", supscan_args.c1)->capture_default_str();
  supscan->add_option("--c2", supscan_args.c2)->capture_default_str();
  add_common(supscan, common);

  DivergenceArgs divergence_args;
  auto* divergence = report->add_subcommand("divergence", "Exact block absolute sums vs the lower-bound formula");
  divergence->add_option("--kmin", divergence_args.k_min)->capture_default_str();
  divergence->add_option("--kmax", divergence_args.k_max)->capture_default_str();
  divergence->add_option("--sigma", divergence_args.sigma)->capture_default_str();
  divergence->add_option("--c1", divergence_args.c1)->capture_default_str();
  add_common(divergence, common);

  PerronArgs perron_args;
  auto* perron_cmd = report->add_subcommand("perron", "Partial-sum error against M^-delta log M");
  perron_cmd->add_option("--series", perron_args.series, "Built-in series (eta)")->capture_default_str();
  perron_cmd->add_option("--coeffs", perron_args.coeffs, "Finite series as coefficient JSON lines");
  perron_cmd->add_option("--s", perron_args.s, "Re s")->capture_default_str();
  perron_cmd->add_option("--t", perron_args.t, "Im s")->capture_default_str();
  perron_cmd->add_option("--delta", perron_args.delta)->capture_default_str();
  perron_cmd->add_option("--b", perron_args.b, "Default: Re s - delta");
  perron_cmd->add_option("--a", perron_args.a, "Default: b + 1");
  perron_cmd->add_option("--M", perron_args.M, "Ascending cutoffs")->delimiter(',')->capture_default_str();
  add_common(perron_cmd, common);

  ZetaArgs zeta_args;
  auto* zeta_cmd = report->add_subcommand("zeta", "zeta(s) through the eta identity");
  zeta_cmd->add_option("--s", zeta_args.s, "Re s")->capture_default_str();
  zeta_cmd->add_option("--t", zeta_args.t, "Im s")->capture_default_str();
  zeta_cmd->add_option("--cesaro-order", zeta_args.cesaro_order,
                       "Use iterated Cesaro means of this order (needed for Re s <= 0)");
  zeta_cmd->add_option("--N", zeta_args.N, "Terms for Cesaro averaging")->capture_default_str();
  add_common(zeta_cmd, common);

  AverageArgs average_args;
  auto* average = report->add_subcommand("average", "Time average of |partial sum|^2 on a vertical line");
  average->add_option("--series", average_args.series, "eta, ones or random")->capture_default_str();
  average->add_option("--N", average_args.N)->capture_default_str();
  average->add_option("--b", average_args.b)->capture_default_str();
  average->add_option("--T", average_args.T)->capture_default_str();
  average->add_option("--seed", average_args.seed)->capture_default_str();
  add_common(average, common);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    if (*construct) run_construct(construct_args, out);
    else if (*supnorm) run_supnorm(sup_args, out);
    else if (*bounds) run_bounds(bounds_args, common, out);
    else if (*supscan) run_supscan(supscan_args, common, out);
    else if (*divergence) run_divergence(divergence_args, common, out);
    else if (*perron_cmd) run_perron(perron_args, common, out);
    else if (*zeta_cmd) run_zeta(zeta_args, common, out);
    else if (*average) run_average(average_args, common, out);
    return kSuccess;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kIoError;
  } catch (const NumericError& e) {
    Json diag;
    diag["error"] = e.what();
    diag["diagnostics"] = Json::parse(e.diagnostics(), nullptr, false);
    err << diag.dump() << '\n';
    return kNumericFailure;
  } catch (const std::exception& e) {
    Json diag;
    diag["error"] = e.what();
    err << diag.dump() << '\n';
    return kNumericFailure;
  }
}

}  // namespace dirichlet::cli
