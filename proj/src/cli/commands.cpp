// SPDX-License-Identifier: Apache-2.0
#include "chanlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "chanlab/analysis.hpp"
#include "chanlab/episodes.hpp"
#include "chanlab/error.hpp"
#include "chanlab/io.hpp"
#include "chanlab/json_writer.hpp"
#include "chanlab/rng.hpp"
#include "chanlab/theory.hpp"

namespace chanlab::cli {

namespace fs = std::filesystem;

std::vector<double> parse_real_list(const std::string &text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception &) {
      throw ConfigError("cannot parse '" + item + "' as a number");
    }
    if (used != item.size() || !std::isfinite(v))
      throw ConfigError("cannot parse '" + item + "' as a number");
    out.push_back(v);
  }
  return out;
}

TransformSpec parse_transform(const std::string &text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw ConfigError("empty transform specification");
  std::vector<double> p;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto v = parse_real_list(parts[i]);
    if (v.size() != 1) throw ConfigError("bad transform parameter in '" + text + "'");
    p.push_back(v.front());
  }
  auto param = [&](std::size_t i, double fallback) { return i < p.size() ? p[i] : fallback; };
  const std::string &kind = parts[0];
  TransformSpec spec;
  if (kind == "none")
    spec = transform::None{};
  else if (kind == "simple")
    spec = transform::Simple{param(0, kDefaultK)};
  else if (kind == "extended")
    spec = transform::Extended{param(0, kDefaultK)};
  else if (kind == "power")
    spec = transform::Power{param(0, kDefaultK)};
  else if (kind == "log")
    spec = transform::Log{param(0, 1.0)};
  else if (kind == "piecewise")
    spec = transform::Piecewise{param(0, kDefaultK), param(1, 0.02), param(2, 0.05)};
  else if (kind == "offset")
    spec = transform::Offset{param(0, kDefaultK), param(1, 0.0)};
  else
    throw ConfigError("unknown transform '" + kind + "'");
  validate(spec);
  return spec;
}

std::size_t default_threads() {
  if (const char *env = std::getenv("CHANLAB_THREADS")) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

namespace {

const std::vector<std::string> kTransformNames = {"none", "simple", "extended", "power", "log",
                                                  "piecewise", "offset", "oracle"};

/// Flags shared by evaluate and sweep-k.
struct EvalFlags {
  std::string features;
  std::string transform = "none";
  double k = kDefaultK;
  double a = 1.0;
  double lambda0 = 0.02;
  double x0 = 0.05;
  double r = 0.0;
  double alpha = 50.0;
  double epsilon = 1e-8;
  std::size_t n_way = 5;
  std::size_t k_shot = 5;
  std::size_t m_query = 15;
  std::size_t episodes = 10000;
  std::uint64_t seed = 0;
  std::string seed_list;
  std::string classifier = "ncc";
  double l2 = 1.0;
  double lr = 0.5;
  std::size_t max_iters = 1000;
  double tol = 1e-8;
  std::size_t threads = 1;
  std::string output;
};

void add_eval_flags(CLI::App &cmd, EvalFlags &f, bool with_k) {
  cmd.add_option("--features", f.features, "Feature file (.csv, or .bin/.fslf binary)")
      ->required();
  cmd.add_option("--transform", f.transform, "Channel transform applied to every feature")
      ->check(CLI::IsMember(kTransformNames));
  if (with_k) cmd.add_option("--k", f.k, "Exponent k of simple/extended/power/piecewise/offset");
  cmd.add_option("--a", f.a, "Slope a of the log transform ln(a x + 1)");
  cmd.add_option("--lambda0", f.lambda0, "Switch point of the piecewise transform");
  cmd.add_option("--x0", f.x0, "Peak of the piecewise transform's quadratic branch");
  cmd.add_option("--r", f.r, "Constant added by the offset transform");
  cmd.add_option("--alpha", f.alpha, "Oracle cap: weight/original MMC ratio limit");
  cmd.add_option("--epsilon", f.epsilon, "Oracle degeneracy floor");
  cmd.add_option("--n-way", f.n_way, "Classes per episode")->check(CLI::PositiveNumber);
  cmd.add_option("--k-shot", f.k_shot, "Support vectors per class")->check(CLI::PositiveNumber);
  cmd.add_option("--m-query", f.m_query, "Query vectors per class")->check(CLI::PositiveNumber);
  cmd.add_option("--episodes", f.episodes, "Number of episodes")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", f.seed, "Episode sampling seed");
  cmd.add_option("--seed-list", f.seed_list,
                 "Comma-separated seeds; repeats the whole evaluation per seed");
  cmd.add_option("--classifier", f.classifier, "Test-time classifier")
      ->check(CLI::IsMember({"ncc", "lc"}));
  cmd.add_option("--l2", f.l2, "LC l2 strength (divided by the number of support vectors)");
  cmd.add_option("--lr", f.lr, "LC initial gradient-descent step");
  cmd.add_option("--max-iters", f.max_iters, "LC iteration cap");
  cmd.add_option("--tol", f.tol, "LC stopping tolerance on loss decrease");
  cmd.add_option("--threads", f.threads, "Worker threads (default: $CHANLAB_THREADS or 1)")
      ->check(CLI::PositiveNumber);
}

EvalTransform make_transform(const EvalFlags &f) {
  if (f.transform == "oracle") {
    OracleConfig cfg{f.alpha, f.epsilon};
    cfg.validate();
    if (f.n_way != 2) throw ConfigError("--transform oracle requires --n-way 2");
    return OracleTransform{cfg};
  }
  TransformSpec spec;
  if (f.transform == "none") spec = transform::None{};
  else if (f.transform == "simple") spec = transform::Simple{f.k};
  else if (f.transform == "extended") spec = transform::Extended{f.k};
  else if (f.transform == "power") spec = transform::Power{f.k};
  else if (f.transform == "log") spec = transform::Log{f.a};
  else if (f.transform == "piecewise") spec = transform::Piecewise{f.k, f.lambda0, f.x0};
  else if (f.transform == "offset") spec = transform::Offset{f.k, f.r};
  validate(spec);
  return spec;
}

EvalOptions make_options(const EvalFlags &f) {
  EvalOptions o;
  o.classifier = f.classifier == "lc" ? ClassifierKind::Linear : ClassifierKind::Ncc;
  o.linear.l2_strength = f.l2;
  o.linear.learning_rate = f.lr;
  o.linear.max_iters = f.max_iters;
  o.linear.tol = f.tol;
  o.threads = f.threads;
  return o;
}

EpisodeConfig make_episode_config(const EvalFlags &f, std::uint64_t seed) {
  EpisodeConfig c{f.n_way, f.k_shot, f.m_query, f.episodes, seed};
  c.validate();
  return c;
}

std::vector<std::uint64_t> seeds_of(const EvalFlags &f) {
  if (f.seed_list.empty()) return {f.seed};
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(f.seed_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      seeds.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw ConfigError("bad seed '" + item + "' in --seed-list");
    }
  }
  if (seeds.empty()) throw ConfigError("--seed-list is empty");
  return seeds;
}

fs::path seed_output_path(const fs::path &base, std::uint64_t seed) {
  fs::path p = base;
  p.replace_filename(base.stem().string() + ".seed" + std::to_string(seed) +
                     base.extension().string());
  return p;
}

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

// --------------------------------------------------------------------------

int cmd_evaluate(const EvalFlags &f, std::ostream &out) {
  const EmbeddingDataset dataset = load_features(f.features);
  const EvalTransform transform = make_transform(f);
  const EvalOptions options = make_options(f);
  const auto seeds = seeds_of(f);

  std::vector<double> means;
  for (const auto seed : seeds) {
    const EvalReport report = run_evaluation(dataset, make_episode_config(f, seed), transform, options);
    means.push_back(report.mean_accuracy);
    out << "seed " << seed << ": " << describe(transform) << " / " << f.classifier << ": "
        << fmt(100.0 * report.mean_accuracy, 2) << " +- " << fmt(100.0 * report.ci95_halfwidth, 2)
        << " % over " << report.per_episode_accuracy.size() << " episodes\n";
    if (!f.output.empty()) {
      const fs::path path = seeds.size() > 1 ? seed_output_path(f.output, seed) : fs::path(f.output);
      save_report(report, path);
      out << "report written to " << path.string() << "\n";
    }
  }
  if (seeds.size() > 1) {
    out << "over " << seeds.size() << " seeds: " << fmt(100.0 * mean_of(means), 2) << " +- "
        << fmt(100.0 * ci95_halfwidth(means), 2) << " %\n";
  }
  return kSuccess;
}

struct SweepFlags {
  std::string k_list;
  double k_min = 0.6;
  double k_max = 1.8;
  double k_step = 0.2;
};

int cmd_sweep_k(const EvalFlags &f, const SweepFlags &s, std::ostream &out) {
  std::vector<double> ks;
  if (!s.k_list.empty()) {
    ks = parse_real_list(s.k_list);
  } else {
    if (!(s.k_step > 0.0) || !(s.k_max >= s.k_min))
      throw ConfigError("sweep range needs k-step > 0 and k-max >= k-min");
    const auto n = static_cast<std::size_t>(std::floor((s.k_max - s.k_min) / s.k_step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) ks.push_back(s.k_min + static_cast<double>(i) * s.k_step);
  }
  if (ks.empty()) throw ConfigError("no k values to sweep");
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (f.transform == "none" || f.transform == "log" || f.transform == "oracle")
    throw ConfigError("sweep-k needs a transform with a k parameter");

  const EmbeddingDataset dataset = load_features(f.features);
  const EvalOptions options = make_options(f);
  const EpisodeConfig cfg = make_episode_config(f, f.seed);

  std::string csv = "k,mean_accuracy,ci95\n";
  for (double k : ks) {
    EvalFlags fk = f;
    fk.k = k;
    const EvalReport report = run_evaluation(dataset, cfg, make_transform(fk), options);
    csv += format_double(k) + "," + format_double(report.mean_accuracy) + "," +
           format_double(report.ci95_halfwidth) + "\n";
  }
  if (f.output.empty()) {
    out << csv;
  } else {
    write_file(f.output, csv);
    out << ks.size() << " rows written to " << f.output << "\n";
  }
  return kSuccess;
}

struct MmcFlags {
  std::string features;
  std::string vectors;
  std::string before = "original";
  std::string after = "oracle";
  double k = kDefaultK;
  double alpha = 50.0;
  double epsilon = 1e-8;
  std::string image_a = "none";
  std::string image_b = "simple";
  std::string csv;
};

MmcMode make_mode(const std::string &name, const MmcFlags &f) {
  if (name == "original") return mmc_mode::Original{};
  if (name == "simple") return mmc_mode::Simple{f.k};
  OracleConfig cfg{f.alpha, f.epsilon};
  cfg.validate();
  return mmc_mode::Oracle{cfg};
}

int cmd_mmc_report(const MmcFlags &f, std::ostream &out) {
  if (f.features.empty() == f.vectors.empty())
    throw ConfigError("mmc-report needs exactly one of --features or --vectors");

  if (!f.vectors.empty()) {
    // Each label holds a (before, after) pair of MMC vectors.
    const EmbeddingDataset pairs = load_features_csv(f.vectors);
    out << std::left << std::setw(16) << "vector" << std::setw(18) << "normalized_msd"
        << "msd\n";
    for (const auto &c : pairs.classes()) {
      if (c.vectors.size() != 2)
        throw ValidationError("label '" + c.name + "' must have exactly two rows (before, after)");
      out << std::setw(16) << c.name << std::setw(18)
          << fmt(normalized_msd(c.vectors[0], c.vectors[1]), 4)
          << fmt(msd(c.vectors[0], c.vectors[1]), 6) << "\n";
    }
    return kSuccess;
  }

  const EmbeddingDataset dataset = load_features(f.features);
  const MmcMode before = make_mode(f.before, f);
  const MmcMode after = make_mode(f.after, f);
  const DatasetMMC mmc_before = dataset_mmc(dataset, before);
  const DatasetMMC mmc_after = dataset_mmc(dataset, after);
  const TransformSpec image_a = parse_transform(f.image_a);
  const TransformSpec image_b = parse_transform(f.image_b);

  const double dataset_level = dataset_level_distance(mmc_before, mmc_after);
  const double task_level = task_level_distance(dataset, before, after);
  const double image_level = image_level_distance(dataset, image_a, image_b);

  out << std::left << std::setw(10) << "level" << std::setw(44) << "comparison" << "distance\n";
  out << std::setw(10) << "dataset" << std::setw(44)
      << (describe(before) + " vs " + describe(after) + " (nmsd)") << fmt(dataset_level, 6)
      << "\n";
  out << std::setw(10) << "task" << std::setw(44)
      << (describe(before) + " vs " + describe(after) + " (msd x1e6)")
      << fmt(task_level * kDistanceReportScale, 4) << "\n";
  out << std::setw(10) << "image" << std::setw(44)
      << (describe(image_a) + " vs " + describe(image_b) + " (msd x1e6)")
      << fmt(image_level * kDistanceReportScale, 4) << "\n";
  out << "class pairs: " << mmc_before.pair_count << "\n";

  if (!f.csv.empty()) {
    write_file(f.csv, channel_comparison_csv(mmc_before.weights, mmc_after.weights));
    out << dataset.dim() << " channel rows written to " << f.csv << "\n";
  }
  return kSuccess;
}

struct TheoryFlags {
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  std::vector<std::string> only;
  std::string json;
};

int cmd_verify_theory(const TheoryFlags &f, std::ostream &out, std::ostream &err) {
  TheorySuiteConfig cfg;
  cfg.trials = f.trials;
  cfg.seed = f.seed;
  if (!f.only.empty()) {
    auto has = [&](const char *n) { return std::find(f.only.begin(), f.only.end(), n) != f.only.end(); };
    cfg.cantelli = has("cantelli");
    cfg.lemma_min = has("lemma");
    cfg.risk_bound = has("risk_bound");
  }
  if (f.trials < 100000)
    err << "warning: " << f.trials
        << " trials gives a Monte Carlo margin of " << fmt(monte_carlo_margin(f.trials), 4)
        << "; margins are loose below 100000 trials\n";

  const auto results = run_theory_suite(cfg);
  out << theory_report_table(results);
  if (!f.json.empty()) write_file(f.json, dump_json(theory_report_json(results)));

  std::size_t failed = 0;
  for (const auto &r : results)
    if (!r.passed) {
      ++failed;
      err << "FAILED: " << r.family << " " << r.name << (r.note.empty() ? "" : ": " + r.note) << "\n";
    }
  out << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed ? kCheckFailed : kSuccess;
}

struct TableFlags {
  std::string k_list = "0.5,1.3,3";
  double lambda_min = 0.0;
  double lambda_max = 1.0;
  double lambda_step = 0.01;
  std::vector<std::string> extra;
  std::string output;
};

int cmd_transform_table(const TableFlags &f, std::ostream &out) {
  if (!(f.lambda_step > 0.0) || !(f.lambda_max >= f.lambda_min) || f.lambda_min < 0.0 ||
      !std::isfinite(f.lambda_max))
    throw ConfigError("lambda range needs 0 <= lambda-min <= lambda-max and lambda-step > 0");
  std::vector<TransformSpec> columns;
  std::string header = "lambda";
  for (double k : parse_real_list(f.k_list)) {
    columns.push_back(transform::Simple{k});
    validate(columns.back());
    header += ",phi_k=" + format_double(k);
  }
  for (const auto &e : f.extra) {
    columns.push_back(parse_transform(e));
    header += "," + describe(columns.back());
  }
  if (columns.empty()) throw ConfigError("transform-table needs at least one column");

  const auto n = static_cast<std::size_t>(
      std::floor((f.lambda_max - f.lambda_min) / f.lambda_step + 1e-9));
  std::string csv = header + "\n";
  for (std::size_t i = 0; i <= n; ++i) {
    const double lambda = f.lambda_min + static_cast<double>(i) * f.lambda_step;
    csv += format_double(lambda);
    for (const auto &spec : columns) csv += "," + format_double(apply_scalar(spec, lambda));
    csv += "\n";
  }
  if (f.output.empty())
    out << csv;
  else
    write_file(f.output, csv);
  return kSuccess;
}

struct SynthFlags {
  std::size_t classes = 2;
  std::size_t dim = 4;
  std::size_t n_per_class = 100;
  std::uint64_t seed = 7;
  double mean_min = 0.2;
  double mean_max = 1.0;
  double sigma_frac = 0.2;
  bool no_margin_rule = false;
  std::string spec;
  double bias_spread = 1.0;
  std::string bias_scales;
  std::uint64_t bias_seed = 1;
  std::string output;
};

SyntheticTaskSpec spec_from_json(const std::string &path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
    SyntheticTaskSpec spec;
    spec.dim = doc.at("d").get<std::size_t>();
    spec.margin_rule = doc.value("margin_rule", true);
    for (const auto &c : doc.at("classes")) {
      spec.classes.push_back({c.at("name").get<std::string>(), c.at("mu").get<std::vector<double>>(),
                              c.at("sigma").get<std::vector<double>>()});
    }
    return spec;
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(path + ": " + e.what());
  }
}

int cmd_synth_gen(const SynthFlags &f, std::ostream &out) {
  SyntheticTaskSpec spec;
  if (!f.spec.empty()) {
    spec = spec_from_json(f.spec);
    if (f.no_margin_rule) spec.margin_rule = false;
  } else {
    if (f.classes == 0 || f.dim == 0) throw ConfigError("--classes and --dim must be positive");
    if (!(f.mean_min > 0.0) || !(f.mean_max >= f.mean_min))
      throw ConfigError("need 0 < mean-min <= mean-max");
    if (!(f.sigma_frac >= 0.0)) throw ConfigError("--sigma-frac must be non-negative");
    spec.dim = f.dim;
    spec.margin_rule = !f.no_margin_rule;
    // Class means come from a stream disjoint from the sampling streams.
    CounterRng rng(mix64(f.seed ^ 0x5EEDC1A55E5ULL));
    for (std::size_t c = 0; c < f.classes; ++c) {
      ClassGaussian g{"class" + std::to_string(c), std::vector<double>(f.dim),
                      std::vector<double>(f.dim)};
      for (std::size_t l = 0; l < f.dim; ++l) {
        g.mu[l] = rng.uniform(f.mean_min, f.mean_max);
        g.sigma[l] = f.sigma_frac * g.mu[l];
      }
      spec.classes.push_back(std::move(g));
    }
  }
  EmbeddingDataset data = gen_gaussian_task(spec, f.n_per_class, f.seed);
  if (!f.bias_scales.empty()) {
    data = inject_bias(data, BiasInjection{parse_real_list(f.bias_scales)});
  } else if (f.bias_spread != 1.0) {
    data = inject_bias(data, BiasInjection::log_uniform(data.dim(), f.bias_spread, f.bias_seed));
  }
  save_features(data, f.output);
  out << data.total_vectors() << " vectors (" << data.num_classes() << " classes, d=" << data.dim()
      << ") written to " << f.output << "\n";
  return kSuccess;
}

int exit_code_for(const Error &e) {
  if (dynamic_cast<const IoError *>(&e) || dynamic_cast<const ParseError *>(&e) ||
      dynamic_cast<const FormatError *>(&e) || dynamic_cast<const ValidationError *>(&e) ||
      dynamic_cast<const EmptyInputError *>(&e))
    return kIoError;
  return kUsageError;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"chanlab: channel-wise feature transforms and channel-bias analysis for "
               "few-shot classification on embedding vectors"};
  app.name(args.empty() ? "chanlab" : fs::path(args.front()).filename().string());
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  EvalFlags eval;
  eval.threads = default_threads();
  auto *evaluate = app.add_subcommand("evaluate", "Episodic evaluation of one transform");
  add_eval_flags(*evaluate, eval, true);
  evaluate->add_option("--output", eval.output, "Report JSON path");

  EvalFlags sweep_eval;
  sweep_eval.threads = default_threads();
  sweep_eval.transform = "simple";
  SweepFlags sweep;
  auto *sweep_cmd = app.add_subcommand("sweep-k", "Accuracy as a function of k (CSV)");
  add_eval_flags(*sweep_cmd, sweep_eval, false);
  sweep_cmd->add_option("--k-list", sweep.k_list, "Comma-separated k values (overrides the range)");
  sweep_cmd->add_option("--k-min", sweep.k_min, "First k of the range");
  sweep_cmd->add_option("--k-max", sweep.k_max, "Last k of the range");
  sweep_cmd->add_option("--k-step", sweep.k_step, "Range step");
  sweep_cmd->add_option("--output", sweep_eval.output, "CSV path (stdout when omitted)");

  MmcFlags mmc;
  auto *mmc_cmd = app.add_subcommand("mmc-report", "Channel MMC scatter data and distance table");
  mmc_cmd->add_option("--features", mmc.features, "Feature file");
  mmc_cmd->add_option("--vectors", mmc.vectors,
                      "CSV of labelled (before, after) MMC vector pairs to compare directly");
  mmc_cmd->add_option("--before", mmc.before, "Reference MMC mode")
      ->check(CLI::IsMember({"original", "simple", "oracle"}));
  mmc_cmd->add_option("--after", mmc.after, "Compared MMC mode")
      ->check(CLI::IsMember({"original", "simple", "oracle"}));
  mmc_cmd->add_option("--k", mmc.k, "k of the simple mode");
  mmc_cmd->add_option("--alpha", mmc.alpha, "Oracle cap");
  mmc_cmd->add_option("--epsilon", mmc.epsilon, "Oracle degeneracy floor");
  mmc_cmd->add_option("--image-a", mmc.image_a, "Reference transform for the image level");
  mmc_cmd->add_option("--image-b", mmc.image_b, "Compared transform for the image level");
  mmc_cmd->add_option("--csv", mmc.csv, "Per-channel before/after CSV path");

  TheoryFlags theory;
  auto *theory_cmd = app.add_subcommand("verify-theory", "Numerical checks of the risk bound theory");
  theory_cmd->add_option("--trials", theory.trials, "Monte Carlo trials per check")
      ->check(CLI::PositiveNumber);
  theory_cmd->add_option("--seed", theory.seed, "Suite seed");
  theory_cmd->add_option("--only", theory.only, "Run only these families")
      ->check(CLI::IsMember({"cantelli", "lemma", "risk_bound"}));
  theory_cmd->add_option("--json", theory.json, "Machine-readable report path");

  TableFlags table;
  auto *table_cmd = app.add_subcommand("transform-table", "phi_k over a lambda grid (CSV)");
  table_cmd->add_option("--k-list", table.k_list, "Comma-separated k values");
  table_cmd->add_option("--lambda-min", table.lambda_min, "Grid start");
  table_cmd->add_option("--lambda-max", table.lambda_max, "Grid end");
  table_cmd->add_option("--lambda-step", table.lambda_step, "Grid step");
  table_cmd->add_option("--extra", table.extra,
                        "Additional columns such as power:0.5, log:10, offset:1.3:0.01");
  table_cmd->add_option("--output", table.output, "CSV path (stdout when omitted)");

  SynthFlags synth;
  auto *synth_cmd = app.add_subcommand("synth-gen", "Write a synthetic Gaussian feature dataset");
  synth_cmd->add_option("--classes", synth.classes, "Number of classes");
  synth_cmd->add_option("--dim", synth.dim, "Channels");
  synth_cmd->add_option("--n-per-class", synth.n_per_class, "Vectors per class")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");
  synth_cmd->add_option("--mean-min", synth.mean_min, "Lower bound of random class means");
  synth_cmd->add_option("--mean-max", synth.mean_max, "Upper bound of random class means");
  synth_cmd->add_option("--sigma-frac", synth.sigma_frac, "Channel std as a fraction of its mean");
  synth_cmd->add_flag("--no-margin-rule", synth.no_margin_rule,
                      "Allow mu < 4 sigma (more clipping at zero)");
  synth_cmd->add_option("--spec", synth.spec, "JSON spec {d, margin_rule, classes:[{name,mu,sigma}]}");
  synth_cmd->add_option("--bias-spread", synth.bias_spread,
                        "Inject log-uniform channel scales in [1/spread, 1]");
  synth_cmd->add_option("--bias-scales", synth.bias_scales, "Explicit comma-separated channel scales");
  synth_cmd->add_option("--bias-seed", synth.bias_seed, "Seed of the random bias");
  synth_cmd->add_option("--output", synth.output, "Output path (.csv, or .bin/.fslf)")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    app.parse(rev);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*evaluate) return cmd_evaluate(eval, out);
    if (*sweep_cmd) return cmd_sweep_k(sweep_eval, sweep, out);
    if (*mmc_cmd) return cmd_mmc_report(mmc, out);
    if (*theory_cmd) return cmd_verify_theory(theory, out, err);
    if (*table_cmd) return cmd_transform_table(table, out);
    if (*synth_cmd) return cmd_synth_gen(synth, out);
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kUsageError;
}

}  // namespace chanlab::cli
