#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "divest/divest.hpp"

namespace divest::cli {

namespace {

enum class Command { Estimate, Exact, Basis, BiasSweep, Coverage };

struct RunConfig {
  Command command = Command::Estimate;
  std::string index;
  std::optional<double> r;
  int u = 1;
  int m = 0;
  std::string weights_path;
  std::optional<double> weight_bound;
  std::string input = "-";
  std::string probs;
  std::string estimator = "sharp";
  double level = 0.95;
  std::uint64_t seed = 0;
  std::size_t replicates = 0;
  std::string n_values;
  std::string mode = "exact";
  std::string format;
  std::optional<double> tol;
  int order = 10;
  unsigned workers = 1;
  double cap = kDefaultEnumerationCap;
  Count coverage_n = 2000;
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ResolvedIndex {
  IndexSpec spec;  // linear index actually estimated
  Target target;
  std::string name;
};

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(Errc::IoError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

double require_r(const RunConfig& cfg) {
  if (!cfg.r) throw UsageError("index '" + cfg.index + "' needs --r");
  return *cfg.r;
}

ResolvedIndex resolve_index(const RunConfig& cfg) {
  const std::string& name = cfg.index;
  if (name == "simpson") return {IndexSpec::simpson(), Target::Linear, name};
  if (name == "gini-simpson") return {IndexSpec::gini_simpson(), Target::Linear, name};
  if (name == "shannon") return {IndexSpec::shannon(), Target::Linear, name};
  if (name == "emlen") return {IndexSpec::emlen(), Target::Linear, name};
  if (name == "richness") return {IndexSpec::richness(), Target::Linear, name};
  if (name == "renyi-equivalent") return {IndexSpec::renyi_equivalent(require_r(cfg)), Target::Linear, name};
  if (name == "tsallis") return {IndexSpec::tsallis(require_r(cfg)), Target::Linear, name};
  if (name == "renyi") return {IndexSpec::renyi_equivalent(require_r(cfg)), Target::Renyi, name};
  if (name == "hill") return {IndexSpec::renyi_equivalent(require_r(cfg)), Target::Hill, name};
  if (name == "gen-simpson") return {IndexSpec::generalized_simpson(cfg.u, cfg.m), Target::Linear, name};
  if (name == "custom") {
    if (cfg.weights_path.empty() || !cfg.weight_bound) throw UsageError("index 'custom' needs --weights and --M");
    return {IndexSpec::custom(parse_weight_list(read_file(cfg.weights_path)), *cfg.weight_bound), Target::Linear,
            name};
  }
  throw UsageError("unknown index '" + name + "'");
}

std::string_view target_name(Target t) {
  switch (t) {
    case Target::Renyi: return "renyi";
    case Target::Hill: return "hill";
    default: return "linear";
  }
}

std::vector<std::string> flag_names(const Flags& flags) {
  std::vector<std::string> out;
  if (flags.has(Flag::DegenerateVariance)) out.emplace_back("DegenerateVariance");
  if (flags.has(Flag::RichnessWeights)) out.emplace_back("RichnessWeights");
  if (flags.has(Flag::TransformDomain)) out.emplace_back("TransformDomain");
  return out;
}

std::string csv_cell(std::optional<double> x) { return x && std::isfinite(*x) ? format_double(*x) : ""; }

void begin_document(JsonWriter& json, std::string_view command) {
  json.begin_object().field("schema_version", kSchemaVersion).field("command", command);
}

// estimate ------------------------------------------------------------------

std::string run_estimate(const RunConfig& cfg, std::istream& in, std::ostream& err) {
  const ResolvedIndex index = resolve_index(cfg);
  IngestResult ingested = cfg.input == "-" ? ingest_counts(in) : ingest_counts(std::string_view(read_file(cfg.input)));
  for (const auto& w : ingested.warnings) err << "warning: " << w << '\n';
  const SampleCounts& counts = ingested.counts;

  if (cfg.estimator != "sharp" && cfg.estimator != "plugin") throw UsageError("--estimator must be sharp or plugin");
  const PointEstimate point =
      cfg.estimator == "sharp" ? sharp_estimate(counts, index.spec) : plugin_estimate(counts, index.spec);

  EstimateReport report = [&] {
    switch (index.target) {
      case Target::Renyi: return renyi_inference(point, counts, cfg.level);
      case Target::Hill: return hill_inference(point, counts, cfg.level);
      default: return confidence_interval(point, counts, index.spec, cfg.level);
    }
  }();

  const std::optional<double> std_err = report.estimate ? std::optional<double>(report.std_err) : std::nullopt;
  const std::optional<double> lo = report.ci ? std::optional<double>(report.ci->low) : std::nullopt;
  const std::optional<double> hi = report.ci ? std::optional<double>(report.ci->high) : std::nullopt;
  const auto flags = flag_names(report.flags);

  if (cfg.format == "csv") {
    std::string flag_list;
    for (const auto& f : flags) flag_list += (flag_list.empty() ? "" : ";") + f;
    std::ostringstream os;
    os << "index,estimator,target,n,S,point,h_r,std_err,sigma2,ci_low,ci_high,level,flags\n"
       << index.name << ',' << cfg.estimator << ',' << target_name(index.target) << ',' << counts.n() << ','
       << counts.observed_species() << ',' << csv_cell(report.estimate) << ','
       << (index.target == Target::Linear ? "" : format_double(point.value)) << ',' << csv_cell(std_err) << ','
       << csv_cell(report.estimate ? std::optional<double>(report.sigma2) : std::nullopt) << ','
       << csv_cell(lo) << ',' << csv_cell(hi) << ',' << format_double(cfg.level) << ',' << flag_list << '\n';
    return os.str();
  }

  JsonWriter json;
  begin_document(json, "estimate");
  json.field("index", index.name)
      .field("index_spec", index.spec.name())
      .field("estimator", cfg.estimator)
      .field("target", target_name(index.target))
      .field("n", static_cast<std::int64_t>(counts.n()))
      .field("S", static_cast<std::int64_t>(counts.observed_species()))
      .field("point", report.estimate);
  if (index.target != Target::Linear) json.field("h_r", point.value);
  json.field("std_err", std_err)
      .field("sigma2", report.estimate ? std::optional<double>(report.sigma2) : std::nullopt)
      .field("ci_low", lo)
      .field("ci_high", hi)
      .field("level", cfg.level);
  json.key("flags").begin_array();
  for (const auto& f : flags) json.value(f);
  json.end_array();
  json.key("warnings").begin_array();
  for (const auto& w : ingested.warnings) json.value(w);
  json.end_array();
  json.end_object();
  return json.str() + "\n";
}

// exact / basis --------------------------------------------------------------

std::string run_exact(const RunConfig& cfg) {
  const ResolvedIndex index = resolve_index(cfg);
  const Distribution dist = parse_probabilities(cfg.probs);
  if (cfg.order < 0) throw UsageError("--V must be >= 0");
  const BasisVector basis = entropic_basis(dist, cfg.order);
  const double linear = exact_index(dist, index.spec);

  std::optional<double> h_r, renyi, hill, tsallis;
  if (index.spec.kind() == IndexKind::RenyiEquivalent || index.spec.kind() == IndexKind::Tsallis) {
    const double r = index.spec.order();
    h_r = exact_index(dist, IndexSpec::renyi_equivalent(r));
    renyi = renyi_entropy(*h_r, r);
    hill = hill_number(*h_r, r);
    tsallis = tsallis_entropy(*h_r, r);
  }
  double theta = linear;
  if (index.target == Target::Renyi) theta = *renyi;
  if (index.target == Target::Hill) theta = *hill;
  std::optional<double> via_basis;
  if (cfg.tol) via_basis = exact_index_via_basis(dist, index.spec, *cfg.tol);

  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "index,K,theta,h_r,H_r,hill,tsallis,theta_via_basis\n"
       << index.name << ',' << dist.support_size() << ',' << format_double(theta) << ',' << csv_cell(h_r) << ','
       << csv_cell(renyi) << ',' << csv_cell(hill) << ',' << csv_cell(tsallis) << ',' << csv_cell(via_basis) << '\n';
    return os.str();
  }
  JsonWriter json;
  begin_document(json, "exact");
  json.field("index", index.name)
      .field("index_spec", index.spec.name())
      .field("target", target_name(index.target))
      .field("K", static_cast<std::int64_t>(dist.support_size()))
      .field("theta", theta);
  if (h_r) json.field("h_r", h_r).field("H_r", renyi).field("hill", hill).field("tsallis", tsallis);
  // the basis route evaluates the linear index (h_r for the renyi and hill targets)
  if (via_basis)
    json.field(index.target == Target::Linear ? "theta_via_basis" : "h_r_via_basis", via_basis).field("tol", *cfg.tol);
  json.key("basis").begin_array();
  for (double z : basis) json.value(z);
  json.end_array().end_object();
  return json.str() + "\n";
}

std::string run_basis(const RunConfig& cfg) {
  const Distribution dist = parse_probabilities(cfg.probs);
  if (cfg.order < 0) throw UsageError("--V must be >= 0");
  const BasisVector basis = entropic_basis(dist, cfg.order);
  if (cfg.format == "json") {
    JsonWriter json;
    begin_document(json, "basis");
    json.field("K", static_cast<std::int64_t>(dist.support_size())).field("V", cfg.order);
    json.key("basis").begin_array();
    for (double z : basis) json.value(z);
    json.end_array().end_object();
    return json.str() + "\n";
  }
  std::string out = "v,zeta\n";
  for (Eigen::Index v = 0; v < basis.size(); ++v) out += std::to_string(v) + "," + format_double(basis[v]) + "\n";
  return out;
}

// experiments ------------------------------------------------------------------

std::string run_bias_sweep(const RunConfig& cfg) {
  const ResolvedIndex index = resolve_index(cfg);
  const Distribution dist = parse_probabilities(cfg.probs);
  if (cfg.n_values.empty()) throw UsageError("bias-sweep needs --n");
  const auto n_values = parse_n_values(cfg.n_values);
  SweepOptions options;
  if (cfg.mode == "exact")
    options.mode = SweepMode::Exact;
  else if (cfg.mode == "mc")
    options.mode = SweepMode::MonteCarlo;
  else
    throw UsageError("--mode must be exact or mc");
  options.replicates = cfg.replicates == 0 ? 1000 : cfg.replicates;
  options.seed = cfg.seed;
  options.workers = cfg.workers;
  options.cap = cfg.cap;
  const BiasTable table = bias_sweep(dist, index.spec, n_values, options);

  if (cfg.format == "json") {
    JsonWriter json;
    begin_document(json, "bias-sweep");
    json.field("index", index.name)
      .field("index_spec", index.spec.name()).field("mode", cfg.mode);
    if (options.mode == SweepMode::MonteCarlo)
      json.field("replicates", static_cast<std::uint64_t>(options.replicates)).field("seed", cfg.seed);
    json.key("rows").begin_array();
    for (const BiasRow& row : table.rows) {
      json.begin_object()
          .field("n", static_cast<std::int64_t>(row.n))
          .field("e_sharp", row.e_sharp)
          .field("e_plugin", row.e_plugin)
          .field("theta", row.theta)
          .field("eta_n", row.eta_n)
          .field("b2n", row.b2n)
          .field("bound", row.bound)
          .field("bias_sharp", row.e_sharp - row.theta)
          .field("bias_plugin", row.e_plugin - row.theta)
          .field("mc_std_err_sharp", row.mc_std_err_sharp)
          .field("mc_std_err_plugin", row.mc_std_err_plugin)
          .end_object();
    }
    json.end_array().end_object();
    return json.str() + "\n";
  }
  std::ostringstream os;
  os << "n,mode,e_sharp,e_plugin,theta,eta_n,b2n,bound,bias_sharp,bias_plugin,mc_std_err_sharp,mc_std_err_plugin\n";
  for (const BiasRow& row : table.rows) {
    os << row.n << ',' << cfg.mode << ',' << format_double(row.e_sharp) << ',' << format_double(row.e_plugin) << ','
       << format_double(row.theta) << ',' << format_double(row.eta_n) << ',' << format_double(row.b2n) << ','
       << format_double(row.bound) << ',' << format_double(row.e_sharp - row.theta) << ','
       << format_double(row.e_plugin - row.theta) << ',' << csv_cell(row.mc_std_err_sharp) << ','
       << csv_cell(row.mc_std_err_plugin) << '\n';
  }
  return os.str();
}

std::string run_coverage(const RunConfig& cfg) {
  const ResolvedIndex index = resolve_index(cfg);
  const Distribution dist = parse_probabilities(cfg.probs);
  CoverageOptions options;
  options.n = cfg.coverage_n;
  options.replicates = cfg.replicates == 0 ? 2000 : cfg.replicates;
  options.level = cfg.level;
  options.seed = cfg.seed;
  options.workers = cfg.workers;
  options.target = index.target;
  const CoverageReport rep = coverage_experiment(dist, index.spec, options);
  const std::size_t effective = rep.replicates - rep.degenerate_count;
  const auto when_effective = [&](double x) { return effective > 0 ? std::optional<double>(x) : std::nullopt; };

  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "index,target,n,replicates,level,seed,truth,hit_count,miss_count,degenerate_count,"
          "transform_domain_count,coverage_rate,standardized_mean,standardized_std\n"
       << index.name << ',' << target_name(rep.target) << ',' << rep.n << ',' << rep.replicates << ','
       << format_double(rep.level) << ',' << rep.seed << ',' << format_double(rep.truth) << ',' << rep.hit_count
       << ',' << rep.miss_count << ',' << rep.degenerate_count << ',' << rep.transform_domain_count << ','
       << csv_cell(when_effective(rep.coverage_rate)) << ',' << csv_cell(when_effective(rep.standardized_mean))
       << ',' << csv_cell(when_effective(rep.standardized_std)) << '\n';
    return os.str();
  }
  JsonWriter json;
  begin_document(json, "coverage");
  json.field("index", index.name)
      .field("index_spec", index.spec.name())
      .field("target", target_name(rep.target))
      .field("n", static_cast<std::int64_t>(rep.n))
      .field("replicates", static_cast<std::uint64_t>(rep.replicates))
      .field("level", rep.level)
      .field("seed", rep.seed)
      .field("truth", rep.truth)
      .field("hit_count", static_cast<std::uint64_t>(rep.hit_count))
      .field("miss_count", static_cast<std::uint64_t>(rep.miss_count))
      .field("degenerate_count", static_cast<std::uint64_t>(rep.degenerate_count))
      .field("transform_domain_count", static_cast<std::uint64_t>(rep.transform_domain_count))
      .field("coverage_rate", when_effective(rep.coverage_rate))
      .field("standardized_mean", when_effective(rep.standardized_mean))
      .field("standardized_std", when_effective(rep.standardized_std));
  json.key("histogram").begin_object().field("low", kHistogramLow).field("width", kHistogramWidth);
  json.key("counts").begin_array();
  for (std::size_t c : rep.histogram) json.value(static_cast<std::uint64_t>(c));
  json.end_array().end_object().end_object();
  return json.str() + "\n";
}

std::string error_document(std::string_view code, std::string_view message) {
  JsonWriter json;
  json.begin_object().field("schema_version", kSchemaVersion);
  json.key("error").begin_object().field("code", code).field("message", message).end_object();
  json.end_object();
  return json.str() + "\n";
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("DIVEST_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("DIVEST_SEED is not an unsigned integer");
    }
  }
  return 0;
}

void add_index_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--index", cfg.index,
                  "simpson, gini-simpson, shannon, renyi-equivalent, renyi, hill, tsallis, emlen, richness, "
                  "gen-simpson, custom")
      ->required();
  sub->add_option("--r", cfg.r, "order r > 0, r != 1 (renyi, hill, tsallis, renyi-equivalent)");
  sub->add_option("--u", cfg.u, "u >= 1 (gen-simpson)");
  sub->add_option("--m", cfg.m, "m >= 0 (gen-simpson)");
  sub->add_option("--weights", cfg.weights_path, "file with a finite weight list (custom)");
  sub->add_option("--M", cfg.weight_bound, "declared weight bound (custom)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Diversity index evaluation and estimation from species counts", "divest"};
  app.require_subcommand(1);

  auto* estimate = app.add_subcommand("estimate", "estimate an index with a confidence interval from counts");
  add_index_options(estimate, cfg);
  estimate->add_option("input", cfg.input, "counts file (CSV species,count or bare counts); '-' for stdin");
  estimate->add_option("--estimator", cfg.estimator, "sharp or plugin")->capture_default_str();
  estimate->add_option("--level", cfg.level, "confidence level in (0,1)")->capture_default_str();
  estimate->add_option("--format", cfg.format, "json or csv");

  auto* exact = app.add_subcommand("exact", "evaluate an index for a declared distribution");
  add_index_options(exact, cfg);
  exact->add_option("--p", cfg.probs, "comma-separated probabilities")->required();
  exact->add_option("--V", cfg.order, "number of basis terms beyond zeta_{1,0}")->capture_default_str();
  exact->add_option("--tol", cfg.tol, "also evaluate through the entropic basis at this tolerance");
  exact->add_option("--format", cfg.format, "json or csv");

  auto* basis = app.add_subcommand("basis", "entropic basis zeta_{1,0..V} of a distribution");
  basis->add_option("--p", cfg.probs, "comma-separated probabilities")->required();
  basis->add_option("--V", cfg.order, "truncation order")->capture_default_str();
  basis->add_option("--format", cfg.format, "csv or json");

  auto* sweep = app.add_subcommand("bias-sweep", "exact or Monte Carlo bias of both estimators over sample sizes");
  add_index_options(sweep, cfg);
  sweep->add_option("--p", cfg.probs, "comma-separated probabilities")->required();
  sweep->add_option("--n", cfg.n_values, "sample sizes, a:b or a,b,c")->required();
  sweep->add_option("--mode", cfg.mode, "exact or mc")->capture_default_str();
  sweep->add_option("--replicates", cfg.replicates, "Monte Carlo replicates (default 1000)");
  sweep->add_option("--seed", cfg.seed, "random seed (default $DIVEST_SEED or 0)");
  sweep->add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
  sweep->add_option("--cap", cfg.cap, "maximum number of enumerated outcomes")->capture_default_str();
  sweep->add_option("--format", cfg.format, "csv or json");

  auto* coverage = app.add_subcommand("coverage", "Monte Carlo coverage of the normal confidence interval");
  add_index_options(coverage, cfg);
  coverage->add_option("--p", cfg.probs, "comma-separated probabilities")->required();
  coverage->add_option("--n", cfg.coverage_n, "sample size")->capture_default_str();
  coverage->add_option("--replicates", cfg.replicates, "replicates, at least 100 (default 2000)");
  coverage->add_option("--level", cfg.level, "confidence level in (0,1)")->capture_default_str();
  coverage->add_option("--seed", cfg.seed, "random seed (default $DIVEST_SEED or 0)");
  coverage->add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
  coverage->add_option("--format", cfg.format, "json or csv");

  try {
    cfg.seed = default_seed();
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    out << error_document("usage", e.what());
    return 2;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    out << error_document("usage", e.what());
    return 2;
  }

  try {
    if (!cfg.format.empty() && cfg.format != "json" && cfg.format != "csv") throw UsageError("--format must be json or csv");
    std::string document;
    if (*estimate) {
      if (cfg.format.empty()) cfg.format = "json";
      document = run_estimate(cfg, in, err);
    } else if (*exact) {
      if (cfg.format.empty()) cfg.format = "json";
      document = run_exact(cfg);
    } else if (*basis) {
      if (cfg.format.empty()) cfg.format = "csv";
      document = run_basis(cfg);
    } else if (*sweep) {
      if (cfg.format.empty()) cfg.format = "csv";
      document = run_bias_sweep(cfg);
    } else {
      if (cfg.format.empty()) cfg.format = "json";
      document = run_coverage(cfg);
    }
    out << document;
    return 0;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    out << error_document("usage", e.what());
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    out << error_document(to_string(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    out << error_document("internal_error", e.what());
    return 1;
  }
}

}  // namespace divest::cli
