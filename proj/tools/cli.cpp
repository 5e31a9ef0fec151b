#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "classif/baselines.hpp"
#include "classif/core.hpp"
#include "classif/estimator.hpp"
#include "classif/io.hpp"
#include "classif/neighbors.hpp"
#include "classif/oracle.hpp"
#include "classif/parallel.hpp"
#include "classif/random.hpp"
#include "classif/synth.hpp"

namespace classif::cli {
namespace {

using nlohmann::json;

/// Options shared by every command that estimates a limit.
struct NeighborhoodArgs {
  double radius = 0.0;
  std::size_t k = 0;
  double auto_fraction = 0.015;
  double radius_fraction = 0.0;
  std::size_t k_min = 6;
  std::size_t k_max = 32;
  bool brute_force = false;
  bool verify = false;
  std::size_t threads = 0;
  std::string metric = "l2";

  CLI::Option* radius_opt = nullptr;
  CLI::Option* k_opt = nullptr;
  CLI::Option* radius_fraction_opt = nullptr;

  void attach(CLI::App& app, const std::string& k_flag = "--k") {
    radius_opt = app.add_option("--radius", radius, "Neighborhood radius theta");
    k_opt = app.add_option(k_flag, k, "Number of nearest neighbors");
    auto* auto_opt = app.add_option("--auto-fraction", auto_fraction,
                                    "k = clamp(round(fraction * n), k-min, k-max)");
    radius_fraction_opt = app.add_option(
        "--radius-fraction", radius_fraction,
        "theta = mean distance to the round(fraction * n) nearest points");
    radius_opt->excludes(k_opt)->excludes(auto_opt)->excludes(radius_fraction_opt);
    k_opt->excludes(auto_opt)->excludes(radius_fraction_opt);
    auto_opt->excludes(radius_fraction_opt);
    app.add_option("--k-min", k_min, "Lower clip for --auto-fraction")->capture_default_str();
    app.add_option("--k-max", k_max, "Upper clip for --auto-fraction")->capture_default_str();
    app.add_flag("--brute-force", brute_force, "Disable the kd-tree");
    app.add_flag("--verify-entropy", verify, "Cross-check the full entropy formula");
    app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  }

  EstimateOptions options() const {
    EstimateOptions o;
    o.brute_force = brute_force;
    o.verify_entropy = verify;
    o.workers = threads;
    return o;
  }

  NeighborhoodSpec resolve(const LabeledDataset& data, MetricKind m) const {
    if (radius_opt->count() > 0) return NeighborhoodSpec::radius(radius, m);
    if (k_opt->count() > 0) return NeighborhoodSpec::nearest(k, m);
    if (radius_fraction_opt->count() > 0) {
      return NeighborhoodSpec::radius(
          threshold_from_fraction(data, radius_fraction, m, resolve_workers(threads)), m);
    }
    return NeighborhoodSpec::nearest(k_from_fraction(data.size(), auto_fraction, k_min, k_max), m);
  }
};

struct DatasetArgs {
  std::string path;
  std::string label = "label";
  bool scale = false;

  void attach(CLI::App& app) {
    app.add_option("--dataset", path, "CSV file with a header row")->required();
    app.add_option("--label", label, "Label column name")->capture_default_str();
    app.add_flag("--scale", scale, "Standard-scale every feature column first");
  }

  LabeledDataset load() const {
    LabeledDataset data = io::load_csv(path, label);
    if (scale) data = io::standard_scale(data).first;
    return data;
  }
};

const CLI::Validator kMetricName(
    [](std::string& name) -> std::string {
      return name == "all" || parse_metric(name) ? "" : "unknown metric '" + name + "'";
    },
    "METRIC");

MetricKind metric_or_throw(const std::string& name) {
  const auto m = parse_metric(name);
  if (!m) throw CLI::ValidationError("--metric", "unknown metric '" + name + "'");
  return *m;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("list", "'" + item + "' is not a number");
    }
  }
  return out;
}

std::string describe(const NeighborhoodSpec& spec) {
  std::ostringstream s;
  s << to_string(spec.metric) << ", ";
  if (spec.is_radius()) {
    s << "radius " << spec.theta();
  } else {
    s << "k = " << spec.k();
  }
  return s.str();
}

class Output {
 public:
  Output(std::ostream& fallback, std::string path) : fallback_(fallback), path_(std::move(path)) {}

  void emit(const json& doc) const {
    const std::string text = doc.dump(2) + "\n";
    if (path_.empty()) {
      fallback_ << text;
      return;
    }
    std::ofstream file(path_, std::ios::binary);
    if (!file) throw Error(ErrorKind::IoError, "cannot write '" + path_ + "'");
    file << text;
  }

 private:
  std::ostream& fallback_;
  std::string path_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Estimate the classifiability limit of labeled datasets", "classif"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "Write the JSON report to this file instead of stdout");

  std::function<void()> action;

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Estimate the classifiability limit");
  DatasetArgs est_data;
  NeighborhoodArgs est_nb;
  std::string est_entropy_csv;
  est_data.attach(*estimate);
  est_nb.attach(*estimate);
  estimate->add_option("--metric", est_nb.metric, "l1|l2|chebyshev|hamming|canberra|braycurtis|all")->check(kMetricName)
      ->capture_default_str();
  estimate->add_option("--entropy-csv", est_entropy_csv, "Also write per-point entropies here");
  estimate->add_option("--out", out_path, "Write the JSON report here");
  estimate->callback([&] {
    action = [&] {
      const LabeledDataset data = est_data.load();
      std::vector<MetricKind> metrics;
      if (est_nb.metric == "all") {
        metrics.assign(kAllMetrics.begin(), kAllMetrics.end());
      } else {
        metrics.push_back(metric_or_throw(est_nb.metric));
      }
      json results = json::array();
      std::size_t best = 0;
      double best_limit = -1.0;
      for (std::size_t i = 0; i < metrics.size(); ++i) {
        const NeighborhoodSpec spec = est_nb.resolve(data, metrics[i]);
        const EstimateReport report = classifiability(data, spec, est_nb.options());
        results.push_back(io::to_json(report, data.classes()));
        err << "limit " << std::setprecision(6) << report.limit << " (" << describe(spec)
            << ", n = " << report.n << ", empty neighborhoods = "
            << report.empty_neighborhood_count << ")\n";
        if (report.limit > best_limit) {
          best_limit = report.limit;
          best = i;
        }
        if (!est_entropy_csv.empty() && metrics.size() == 1) {
          std::ofstream csv(est_entropy_csv, std::ios::binary);
          if (!csv) throw Error(ErrorKind::IoError, "cannot write '" + est_entropy_csv + "'");
          io::write_entropy_csv(data, entropy_map(data, report), csv);
        }
      }
      if (metrics.size() == 1) {
        Output(out, out_path).emit(results.front());
      } else {
        if (!est_entropy_csv.empty()) {
          err << "note: --entropy-csv is ignored with --metric all\n";
        }
        Output(out, out_path)
            .emit(json{{"results", results},
                       {"best_metric", std::string(to_string(metrics[best]))},
                       {"best_limit", best_limit}});
        err << "best metric: " << to_string(metrics[best]) << "\n";
      }
    };
  });

  // generate
  auto* generate = app.add_subcommand("generate", "Write a synthetic dataset as CSV");
  synth::SynthSpec gen;
  std::string gen_kind = "circles";
  std::string gen_centers;
  std::string gen_out;
  generate->add_option("--kind", gen_kind, "circles|moons|blobs|linear1d|overlap1d|madelon")
      ->capture_default_str();
  generate->add_option("--n", gen.n, "Number of points")->capture_default_str();
  generate->add_option("--noise", gen.noise, "Gaussian noise level")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("--radius-ratio", gen.radius_ratio, "Inner/outer radius (circles)")
      ->capture_default_str();
  generate->add_option("--centers", gen_centers, "Blob centers, e.g. \"0,0;3,0;0,3\"");
  generate->add_option("--offset", gen.offset, "Second uniform's offset (overlap1d)")
      ->capture_default_str();
  generate->add_option("--n-features", gen.madelon.n_features)->capture_default_str();
  generate->add_option("--n-informative", gen.madelon.n_informative)->capture_default_str();
  generate->add_option("--n-redundant", gen.madelon.n_redundant)->capture_default_str();
  generate->add_option("--n-classes", gen.madelon.n_classes)->capture_default_str();
  generate->add_option("--clusters-per-class", gen.madelon.clusters_per_class)
      ->capture_default_str();
  generate->add_option("--class-sep", gen.madelon.class_sep)->capture_default_str();
  generate->add_option("--flip", gen.madelon.flip_fraction, "Label flip fraction q")
      ->capture_default_str();
  generate->add_option("--out", gen_out, "CSV destination (stdout when omitted)");
  generate->callback([&] {
    action = [&] {
      gen.kind = synth::parse_kind(gen_kind);
      if (!gen_centers.empty()) {
        std::stringstream ss(gen_centers);
        std::string item;
        while (std::getline(ss, item, ';')) gen.centers.push_back(parse_list(item));
      } else if (gen.kind == synth::Kind::Blobs) {
        gen.centers = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
      }
      const LabeledDataset data = synth::generate(gen);
      const json summary{{"kind", synth::to_string(gen.kind)},
                         {"n", data.size()},
                         {"d", data.dims()},
                         {"classes", data.classes().names()},
                         {"seed", gen.seed},
                         {"noise", gen.noise}};
      if (gen_out.empty()) {
        io::save_csv(data, out);
        err << summary.dump() << "\n";
      } else {
        io::save_csv(data, std::filesystem::path(gen_out));
        Output(out, out_path).emit(summary);
        err << "wrote " << data.size() << " rows to " << gen_out << "\n";
      }
    };
  });

  // sweep-noise
  auto* sweep_noise = app.add_subcommand("sweep-noise", "Mean limit of a generator across noise levels");
  std::string sn_kind = "circles";
  std::string sn_levels;
  std::size_t sn_n = 500;
  std::size_t sn_seeds = 25;
  std::uint64_t sn_seed = 0;
  double sn_noise_max = 0.5;
  std::size_t sn_steps = 10;
  double sn_ratio = 0.5;
  NeighborhoodArgs sn_nb;
  sn_nb.k = 16;
  sweep_noise->add_option("--kind", sn_kind, "circles|moons|blobs")->capture_default_str();
  sweep_noise->add_option("--n", sn_n)->capture_default_str();
  sweep_noise->add_option("--seeds", sn_seeds, "Datasets per noise level")->capture_default_str();
  sweep_noise->add_option("--seed", sn_seed)->capture_default_str();
  sweep_noise->add_option("--noise-levels", sn_levels, "Comma-separated noise levels");
  sweep_noise->add_option("--noise-max", sn_noise_max, "Largest level when --noise-levels is absent")
      ->capture_default_str();
  sweep_noise->add_option("--steps", sn_steps, "Number of evenly spaced levels from 0")
      ->capture_default_str();
  sweep_noise->add_option("--radius-ratio", sn_ratio)->capture_default_str();
  sn_nb.attach(*sweep_noise);
  sweep_noise->add_option("--metric", sn_nb.metric)->check(kMetricName)->capture_default_str();
  sweep_noise->add_option("--out", out_path);
  sweep_noise->callback([&] {
    action = [&] {
      const MetricKind metric = metric_or_throw(sn_nb.metric);
      std::vector<double> levels = parse_list(sn_levels);
      if (levels.empty()) {
        if (sn_steps < 2) throw CLI::ValidationError("--steps", "need at least two levels");
        for (std::size_t i = 0; i < sn_steps; ++i) {
          levels.push_back(sn_noise_max * static_cast<double>(i) /
                           static_cast<double>(sn_steps - 1));
        }
      }
      if (sn_seeds == 0) throw CLI::ValidationError("--seeds", "need at least one seed");
      synth::SynthSpec spec;
      spec.kind = synth::parse_kind(sn_kind);
      spec.n = sn_n;
      spec.radius_ratio = sn_ratio;
      spec.centers = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
      json curve = json::array();
      for (std::size_t li = 0; li < levels.size(); ++li) {
        spec.noise = levels[li];
        std::vector<double> limits;
        for (std::size_t s = 0; s < sn_seeds; ++s) {
          spec.seed = mix_seed(mix_seed(sn_seed, li), s);
          const LabeledDataset data = synth::generate(spec);
          limits.push_back(
              classifiability(data, sn_nb.resolve(data, metric), sn_nb.options()).limit);
        }
        const MeanStd ms = mean_std(limits);
        curve.push_back(
            {{"noise", levels[li]}, {"mean_limit", ms.mean}, {"std_limit", ms.std}, {"limits", limits}});
        err << "noise " << levels[li] << ": " << ms.mean << " +- " << ms.std << "\n";
      }
      Output(out, out_path).emit(json{{"kind", sn_kind}, {"n", sn_n}, {"curve", curve}});
    };
  });

  // sweep-subsample
  auto* sweep_sub = app.add_subcommand("sweep-subsample", "Limit versus subsample proportion");
  DatasetArgs ss_data;
  NeighborhoodArgs ss_nb;
  std::string ss_props = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0";
  std::size_t ss_repeats = 10;
  std::uint64_t ss_seed = 0;
  ss_data.attach(*sweep_sub);
  ss_nb.attach(*sweep_sub);
  sweep_sub->add_option("--metric", ss_nb.metric)->check(kMetricName)->capture_default_str();
  sweep_sub->add_option("--proportions", ss_props)->capture_default_str();
  sweep_sub->add_option("--repeats", ss_repeats)->capture_default_str();
  sweep_sub->add_option("--seed", ss_seed)->capture_default_str();
  sweep_sub->add_option("--out", out_path);
  sweep_sub->callback([&] {
    action = [&] {
      const LabeledDataset data = ss_data.load();
      const MetricKind metric = metric_or_throw(ss_nb.metric);
      const NeighborhoodSpec spec = ss_nb.resolve(data, metric);
      const std::vector<double> props = parse_list(ss_props);
      const auto curve = subsample_sweep(data, spec, props, ss_repeats, ss_seed, ss_nb.options());
      for (const auto& p : curve) {
        err << "proportion " << p.proportion << ": " << p.mean_limit << " +- " << p.std_limit
            << "\n";
      }
      Output(out, out_path).emit(json{{"config", io::to_json(spec)}, {"curve", io::to_json(curve)}});
    };
  });

  // jackknife
  auto* jack = app.add_subcommand("jackknife", "Stratified subsample (jackknife) limits");
  DatasetArgs jk_data;
  NeighborhoodArgs jk_nb;
  double jk_fraction = 0.8;
  std::size_t jk_rounds = 10;
  std::uint64_t jk_seed = 0;
  jk_data.attach(*jack);
  jk_nb.attach(*jack);
  jack->add_option("--metric", jk_nb.metric)->check(kMetricName)->capture_default_str();
  jack->add_option("--fraction", jk_fraction)->capture_default_str();
  jack->add_option("--rounds", jk_rounds)->capture_default_str();
  jack->add_option("--seed", jk_seed)->capture_default_str();
  jack->add_option("--out", out_path);
  jack->callback([&] {
    action = [&] {
      const LabeledDataset data = jk_data.load();
      const MetricKind metric = metric_or_throw(jk_nb.metric);
      const NeighborhoodSpec spec = jk_nb.resolve(data, metric);
      const JackknifeReport report =
          jackknife(data, spec, jk_fraction, jk_rounds, jk_seed, jk_nb.options());
      err << "max " << report.max_limit << ", mean " << report.mean_limit << " +- "
          << report.std_limit << " over " << report.rounds << " rounds\n";
      json doc = io::to_json(report);
      doc["config"] = io::to_json(spec);
      Output(out, out_path).emit(doc);
    };
  });

  // compare
  auto* compare = app.add_subcommand("compare", "Baseline test accuracy against the estimated limit");
  DatasetArgs cmp_data;
  NeighborhoodArgs cmp_nb;
  std::size_t cmp_k = 5;
  std::string cmp_metric = "l2";
  std::size_t cmp_repeats = 10;
  double cmp_train = 0.6667;
  std::string cmp_classifier = "both";
  double cmp_theta = 0.0;
  std::uint64_t cmp_seed = 0;
  cmp_data.attach(*compare);
  compare->add_option("--k", cmp_k, "k for the k-NN classifier")->capture_default_str();
  compare->add_option("--metric", cmp_metric)->check(kMetricName)->capture_default_str();
  compare->add_option("--repeats", cmp_repeats)->capture_default_str();
  compare->add_option("--train-fraction", cmp_train)->capture_default_str();
  compare->add_option("--classifier", cmp_classifier, "knn|radius|both")->capture_default_str();
  compare->add_option("--classifier-radius", cmp_theta,
                      "Radius classifier theta (default: 1.5% neighborhood mean distance)");
  compare->add_option("--seed", cmp_seed)->capture_default_str();
  cmp_nb.attach(*compare, "--estimate-k");
  compare->add_option("--out", out_path);
  compare->callback([&] {
    action = [&] {
      const LabeledDataset data = cmp_data.load();
      const MetricKind metric = metric_or_throw(cmp_metric);
      if (cmp_classifier != "knn" && cmp_classifier != "radius" && cmp_classifier != "both") {
        throw CLI::ValidationError("--classifier", "expected knn, radius or both");
      }
      const NeighborhoodSpec spec = cmp_nb.resolve(data, metric);
      const EstimateReport estimate = classifiability(data, spec, cmp_nb.options());
      const SplitSpec split{cmp_train, true, cmp_seed};
      json doc{{"limit", estimate.limit}, {"config", io::to_json(spec)}};
      err << "estimated limit " << estimate.limit << "\n";
      if (cmp_classifier != "radius") {
        ClassifierConfig cfg{ClassifierKind::KNearest, cmp_k, 0.0, metric};
        const AccuracyStats s = evaluate(data, split, cfg, cmp_repeats, cmp_nb.threads);
        doc["knn"] = io::to_json(s);
        doc["knn"]["k"] = cmp_k;
        err << "k-NN accuracy " << s.mean << " +- " << s.std << "\n";
      }
      if (cmp_classifier != "knn") {
        const double theta = cmp_theta > 0.0 ? cmp_theta
                                             : threshold_from_fraction(data, 0.015, metric,
                                                                       resolve_workers(cmp_nb.threads));
        ClassifierConfig cfg{ClassifierKind::Radius, 0, theta, metric};
        const AccuracyStats s = evaluate(data, split, cfg, cmp_repeats, cmp_nb.threads);
        doc["radius"] = io::to_json(s);
        doc["radius"]["theta"] = theta;
        err << "radius accuracy " << s.mean << " +- " << s.std << "\n";
      }
      Output(out, out_path).emit(doc);
    };
  });

  // entropy-map
  auto* emap = app.add_subcommand("entropy-map", "Per-point entropies for plotting");
  DatasetArgs em_data;
  NeighborhoodArgs em_nb;
  std::string em_csv;
  em_data.attach(*emap);
  em_nb.attach(*emap);
  emap->add_option("--metric", em_nb.metric)->check(kMetricName)->capture_default_str();
  emap->add_option("--out", em_csv, "CSV destination (stdout when omitted)");
  emap->callback([&] {
    action = [&] {
      const LabeledDataset data = em_data.load();
      const NeighborhoodSpec spec = em_nb.resolve(data, metric_or_throw(em_nb.metric));
      const EstimateReport report = classifiability(data, spec, em_nb.options());
      const auto records = entropy_map(data, report);
      if (em_csv.empty()) {
        io::write_entropy_csv(data, records, out);
        err << io::to_json(report, data.classes()).dump() << "\n";
      } else {
        std::ofstream csv(em_csv, std::ios::binary);
        if (!csv) throw Error(ErrorKind::IoError, "cannot write '" + em_csv + "'");
        io::write_entropy_csv(data, records, csv);
        Output(out, out_path).emit(io::to_json(report, data.classes()));
        err << "wrote " << records.size() << " records to " << em_csv << "\n";
      }
    };
  });

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Bayes accuracy of an analytic problem");
  std::string or_name;
  std::string or_file;
  double or_offset = 0.5;
  std::size_t or_cells = kDefaultCells1D;
  auto* name_opt = oracle->add_option(
      "--problem", or_name, "linear1d|identical-uniform|disjoint-uniform|overlap-uniform1d");
  auto* file_opt = oracle->add_option("--problem-file", or_file, "JSON problem definition");
  name_opt->excludes(file_opt);
  oracle->add_option("--offset", or_offset, "Offset for overlap-uniform1d")->capture_default_str();
  oracle->add_option("--cells", or_cells, "Grid cells for named problems")->capture_default_str();
  oracle->add_option("--out", out_path);
  oracle->callback([&] {
    action = [&] {
      AnalyticProblem problem;
      json doc;
      if (!or_file.empty()) {
        std::ifstream in(or_file);
        if (!in) throw Error(ErrorKind::IoError, "cannot open '" + or_file + "'");
        json def;
        try {
          in >> def;
        } catch (const json::exception& e) {
          throw Error(ErrorKind::ParseError, e.what());
        }
        problem = problem_from_json(def);
        doc["problem"] = or_file;
      } else if (!or_name.empty()) {
        problem = named_problem(or_name, or_offset, or_cells);
        doc["problem"] = or_name;
      } else {
        throw CLI::RequiredError("--problem or --problem-file");
      }
      doc["limit"] = bayes_limit(problem);
      doc["cells"] = problem.cell_count();
      err << "Bayes accuracy " << std::setprecision(10) << doc["limit"].get<double>() << "\n";
      Output(out, out_path).emit(doc);
    };
  });

  // overclass
  auto* overclass = app.add_subcommand("overclass", "Potential classes against the 20-points rule");
  std::string oc_res;
  std::uint64_t oc_points = 0;
  std::string oc_dataset;
  std::string oc_label = "label";
  auto* res_opt = overclass->add_option("--resolutions", oc_res, "Per-dimension resolutions, e.g. 4,4,3,3");
  auto* ds_opt = overclass->add_option("--dataset", oc_dataset,
                                       "Derive resolutions (distinct values per column) from a CSV");
  res_opt->excludes(ds_opt);
  overclass->add_option("--label", oc_label)->capture_default_str();
  overclass->add_option("--points", oc_points, "Number of data points");
  overclass->add_option("--out", out_path);
  overclass->callback([&] {
    action = [&] {
      std::vector<std::uint64_t> resolutions;
      std::uint64_t points = oc_points;
      if (!oc_dataset.empty()) {
        const LabeledDataset data = io::load_csv(oc_dataset, oc_label);
        for (std::size_t j = 0; j < data.dims(); ++j) {
          std::set<double> distinct;
          for (std::size_t i = 0; i < data.size(); ++i) distinct.insert(data.row(i)[j]);
          resolutions.push_back(distinct.size());
        }
        if (points == 0) points = data.size();
      } else {
        for (double r : parse_list(oc_res)) {
          if (!(r >= 1.0) || r != std::floor(r)) {
            throw CLI::ValidationError("--resolutions", "resolutions must be positive integers");
          }
          resolutions.push_back(static_cast<std::uint64_t>(r));
        }
        if (resolutions.empty()) throw CLI::RequiredError("--resolutions or --dataset");
      }
      const OverclassReport report = overclass_check(resolutions, points);
      err << "N = " << report.potential_classes << ", need >= " << report.min_points
          << " points, have " << report.actual_points
          << (report.over_classified ? " (over-classified)" : " (ok)") << "\n";
      Output(out, out_path).emit(io::to_json(report));
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace classif::cli
