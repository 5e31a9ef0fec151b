#include "classif/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>
#include <random>
#include <string>

#include "classif/random.hpp"

namespace classif {
namespace {

constexpr double kNormalizationTolerance = 1e-6;
constexpr double kWeightTolerance = 1e-9;

double mass(const std::vector<double>& values, double volume) {
  double total = 0.0;
  for (double v : values) total += v;
  return total * volume;
}

}  // namespace

std::size_t AnalyticProblem::cell_count() const noexcept {
  std::size_t count = 1;
  for (const Axis& a : axes) count *= a.cells;
  return count;
}

double AnalyticProblem::cell_volume() const noexcept {
  double volume = 1.0;
  for (const Axis& a : axes) volume *= a.width();
  return volume;
}

std::vector<double> AnalyticProblem::cell_center(std::size_t cell) const {
  std::vector<double> out(axes.size());
  for (std::size_t j = 0; j < axes.size(); ++j) {
    out[j] = axes[j].center(cell % axes[j].cells);
    cell /= axes[j].cells;
  }
  return out;
}

void AnalyticProblem::validate() const {
  if (axes.empty() || axes.size() > 2) {
    throw Error(ErrorKind::InvalidArgument, "problems must be 1D or 2D");
  }
  for (const Axis& a : axes) {
    if (a.cells == 0 || !(a.upper > a.lower) || !std::isfinite(a.lower) ||
        !std::isfinite(a.upper)) {
      throw Error(ErrorKind::InvalidArgument, "each axis needs cells >= 1 and upper > lower");
    }
  }
  if (densities.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two classes");
  if (class_weights.size() != densities.size()) {
    throw Error(ErrorKind::InvalidArgument, "one weight per class required");
  }
  if (!class_names.empty() && class_names.size() != densities.size()) {
    throw Error(ErrorKind::InvalidArgument, "one name per class required");
  }
  double weight_sum = 0.0;
  for (double w : class_weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::InvalidArgument, "class weights must be positive");
    }
    weight_sum += w;
  }
  if (std::abs(weight_sum - 1.0) > kWeightTolerance) {
    throw Error(ErrorKind::InvalidArgument, "class weights must sum to 1");
  }
  const std::size_t cells = cell_count();
  const double volume = cell_volume();
  for (std::size_t c = 0; c < densities.size(); ++c) {
    const auto& f = densities[c];
    if (f.size() != cells) {
      throw Error(ErrorKind::InvalidArgument, "density " + std::to_string(c) + " has " +
                                                  std::to_string(f.size()) + " cells, grid has " +
                                                  std::to_string(cells));
    }
    for (double v : f) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw Error(ErrorKind::InvalidArgument, "densities must be finite and non-negative");
      }
    }
    const double m = mass(f, volume);
    if (m == 0.0) {
      throw Error(ErrorKind::DegenerateProblem, "density " + std::to_string(c) + " is zero");
    }
    if (std::abs(m - 1.0) > kNormalizationTolerance) {
      throw Error(ErrorKind::DegenerateProblem,
                  "density " + std::to_string(c) + " integrates to " + std::to_string(m));
    }
  }
}

std::vector<double> tabulate(const density::Family& family, const std::vector<Axis>& axes) {
  AnalyticProblem grid;
  grid.axes = axes;
  const std::size_t cells = grid.cell_count();
  const std::size_t dims = axes.size();

  if (const auto* table = std::get_if<density::Table>(&family)) {
    if (table->values.size() != cells) {
      throw Error(ErrorKind::InvalidArgument, "table has " + std::to_string(table->values.size()) +
                                                  " values, grid has " + std::to_string(cells));
    }
    return table->values;
  }

  std::vector<double> values(cells, 0.0);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const std::vector<double> x = grid.cell_center(cell);
    double v = 0.0;
    if (const auto* u = std::get_if<density::Uniform>(&family)) {
      if (u->lower.size() != dims || u->upper.size() != dims) {
        throw Error(ErrorKind::InvalidArgument, "uniform bounds must match the grid dimension");
      }
      v = 1.0;
      for (std::size_t j = 0; j < dims; ++j) {
        if (x[j] < u->lower[j] || x[j] > u->upper[j]) v = 0.0;
      }
    } else if (const auto* t = std::get_if<density::Triangular>(&family)) {
      v = t->increasing ? x[0] - axes[0].lower : axes[0].upper - x[0];
    } else if (const auto* g = std::get_if<density::Gaussian>(&family)) {
      if (g->mean.size() != dims || !(g->sigma > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "gaussian needs a mean per axis and sigma > 0");
      }
      double r2 = 0.0;
      for (std::size_t j = 0; j < dims; ++j) r2 += (x[j] - g->mean[j]) * (x[j] - g->mean[j]);
      v = std::exp(-0.5 * r2 / (g->sigma * g->sigma));
    } else if (const auto* r = std::get_if<density::Ring>(&family)) {
      if (!(r->sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "ring needs sigma > 0");
      double r2 = 0.0;
      for (std::size_t j = 0; j < dims; ++j) r2 += x[j] * x[j];
      const double off = std::sqrt(r2) - r->radius;
      v = std::exp(-0.5 * off * off / (r->sigma * r->sigma));
    }
    values[cell] = v;
  }
  const double m = mass(values, grid.cell_volume());
  if (!(m > 0.0)) {
    throw Error(ErrorKind::DegenerateProblem, "density has no mass inside the grid");
  }
  for (double& v : values) v /= m;
  return values;
}

AnalyticProblem make_problem(std::vector<Axis> axes, const std::vector<density::Family>& families,
                             std::vector<double> weights, std::vector<std::string> names) {
  AnalyticProblem problem;
  problem.axes = std::move(axes);
  for (const auto& family : families) problem.densities.push_back(tabulate(family, problem.axes));
  if (weights.empty()) {
    weights.assign(families.size(), families.empty() ? 0.0 : 1.0 / static_cast<double>(families.size()));
  }
  problem.class_weights = std::move(weights);
  problem.class_names = std::move(names);
  problem.validate();
  return problem;
}

AnalyticProblem named_problem(const std::string& name, double offset, std::size_t cells) {
  using namespace density;
  if (name == "linear1d") {
    return make_problem({Axis{0.0, 1.0, cells}}, {Triangular{true}, Triangular{false}});
  }
  if (name == "identical-uniform") {
    return make_problem({Axis{0.0, 1.0, cells}}, {Uniform{{0.0}, {1.0}}, Uniform{{0.0}, {1.0}}});
  }
  if (name == "disjoint-uniform") {
    return make_problem({Axis{0.0, 1.0, cells}}, {Uniform{{0.0}, {0.5}}, Uniform{{0.5}, {1.0}}});
  }
  if (name == "overlap-uniform1d") {
    if (!(offset >= 0.0)) throw Error(ErrorKind::InvalidArgument, "offset must be >= 0");
    return make_problem({Axis{0.0, 1.0 + offset, cells}},
                        {Uniform{{0.0}, {1.0}}, Uniform{{offset}, {1.0 + offset}}});
  }
  throw Error(ErrorKind::InvalidArgument, "unknown problem '" + name + "'");
}

AnalyticProblem problem_from_json(const nlohmann::json& doc) {
  using namespace density;
  try {
    std::vector<Axis> axes;
    const auto& bounds = doc.at("bounds");
    const auto& cells = doc.at("cells");
    if (bounds.size() != cells.size()) {
      throw Error(ErrorKind::InvalidArgument, "bounds and cells must have the same length");
    }
    for (std::size_t j = 0; j < bounds.size(); ++j) {
      axes.push_back(Axis{bounds[j].at(0).get<double>(), bounds[j].at(1).get<double>(),
                          cells[j].get<std::size_t>()});
    }
    std::vector<Family> families;
    std::vector<std::string> names;
    bool any_name = false;
    for (const auto& cls : doc.at("classes")) {
      const std::string family = cls.at("family").get<std::string>();
      if (family == "uniform") {
        families.emplace_back(Uniform{cls.at("lower").get<std::vector<double>>(),
                                      cls.at("upper").get<std::vector<double>>()});
      } else if (family == "triangular-x") {
        const std::string dir = cls.value("direction", "increasing");
        if (dir != "increasing" && dir != "decreasing") {
          throw Error(ErrorKind::InvalidArgument, "direction must be increasing or decreasing");
        }
        families.emplace_back(Triangular{dir == "increasing"});
      } else if (family == "gaussian") {
        families.emplace_back(
            Gaussian{cls.at("mean").get<std::vector<double>>(), cls.at("sigma").get<double>()});
      } else if (family == "ring") {
        families.emplace_back(Ring{cls.at("radius").get<double>(), cls.at("sigma").get<double>()});
      } else if (family == "table") {
        families.emplace_back(Table{cls.at("values").get<std::vector<double>>()});
      } else {
        throw Error(ErrorKind::InvalidArgument, "unknown density family '" + family + "'");
      }
      if (cls.contains("name")) any_name = true;
      names.push_back(cls.value("name", std::to_string(names.size())));
    }
    std::vector<double> weights;
    if (doc.contains("weights")) weights = doc.at("weights").get<std::vector<double>>();
    return make_problem(std::move(axes), families, std::move(weights),
                        any_name ? std::move(names) : std::vector<std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("problem definition: ") + e.what());
  }
}

double bayes_limit(const AnalyticProblem& problem) {
  problem.validate();
  const std::size_t cells = problem.cell_count();
  double total = 0.0;
  double mixture_mass = 0.0;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    // mixture * max posterior == max_a w_a f_a
    double best = 0.0;
    double mix = 0.0;
    for (std::size_t c = 0; c < problem.num_classes(); ++c) {
      const double wf = problem.class_weights[c] * problem.densities[c][cell];
      mix += wf;
      best = std::max(best, wf);
    }
    total += best;
    mixture_mass += mix;
  }
  if (!(mixture_mass > 0.0)) throw Error(ErrorKind::DegenerateProblem, "all densities are zero");
  return total * problem.cell_volume();
}

LabeledDataset sample_problem(const AnalyticProblem& problem, std::size_t n, std::uint64_t seed) {
  problem.validate();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "n must be at least 1");
  const std::size_t classes = problem.num_classes();
  const std::size_t cells = problem.cell_count();

  std::vector<std::vector<double>> cdf(classes, std::vector<double>(cells));
  for (std::size_t c = 0; c < classes; ++c) {
    std::partial_sum(problem.densities[c].begin(), problem.densities[c].end(), cdf[c].begin());
    if (!(cdf[c].back() > 0.0)) throw Error(ErrorKind::DegenerateProblem, "empty density");
  }
  std::vector<double> weight_cdf(classes);
  std::partial_sum(problem.class_weights.begin(), problem.class_weights.end(), weight_cdf.begin());

  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto pick = [&](const std::vector<double>& cum) {
    const double u = unit(rng) * cum.back();
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cum.begin()), cum.size() - 1);
  };

  Matrix features(n, problem.dims());
  std::vector<ClassId> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t cls = pick(weight_cdf);
    // skip zero-mass cells that upper_bound can land on only through rounding
    std::size_t cell = pick(cdf[cls]);
    while (problem.densities[cls][cell] == 0.0 && cell + 1 < cells) ++cell;
    std::size_t rest = cell;
    for (std::size_t j = 0; j < problem.dims(); ++j) {
      const Axis& axis = problem.axes[j];
      const std::size_t idx = rest % axis.cells;
      rest /= axis.cells;
      features(i, j) = axis.lower + (static_cast<double>(idx) + unit(rng)) * axis.width();
    }
    labels[i] = static_cast<ClassId>(cls);
  }
  ClassTable table = problem.class_names.empty() ? ClassTable::numbered(classes)
                                                 : ClassTable(problem.class_names);
  return validate_dataset(std::move(features), std::move(labels), std::move(table));
}

namespace {

double tree_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return 0.0;
  if (hi - lo == 1) return v[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return tree_sum(v, lo, mid) + tree_sum(v, mid, hi);
}

}  // namespace

EstimateReport reference_estimate(const LabeledDataset& dataset, const NeighborhoodSpec& spec,
                                  double* max_identity_gap) {
  spec.check(dataset.size());
  const std::size_t n = dataset.size();
  const std::size_t classes = dataset.num_classes();

  EstimateReport report;
  report.n = n;
  report.d = dataset.dims();
  report.config = spec;
  report.per_point_entropy.assign(n, 0.0);
  report.neighborhood_size.assign(n, 0);
  double worst_gap = 0.0;

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<double, std::size_t>> ball;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      ball.emplace_back(distance(spec.metric, dataset.row(i), dataset.row(j)), j);
    }
    if (spec.is_radius()) {
      std::erase_if(ball, [&](const auto& c) { return !(c.first < spec.theta()); });
    } else {
      std::sort(ball.begin(), ball.end());
      ball.resize(spec.k());
    }
    report.neighborhood_size[i] = ball.size();
    if (ball.empty()) {
      ++report.empty_neighborhood_count;
      continue;
    }

    std::vector<double> p(classes, 0.0);
    for (const auto& c : ball) p[dataset.label(c.second)] += 1.0;
    for (double& v : p) v /= static_cast<double>(ball.size());
    double top = 0.0;
    for (double v : p) top = std::max(top, v);

    double full = 0.0;
    for (double v : p) {
      if (v > 0.0) {
        const double rho = v * std::exp(1.0 - top);
        full -= v * std::log(v / rho);
      }
    }
    const double simple = 1.0 - top;
    const double gap = std::abs(full - simple);
    worst_gap = std::max(worst_gap, gap);
    if (gap > 1e-12) {
      throw Error(ErrorKind::InvalidArgument,
                  "full entropy and 1 - max p disagree at row " + std::to_string(i));
    }
    report.per_point_entropy[i] = simple;
  }

  std::vector<double> counts(classes, 0.0);
  for (std::size_t i = 0; i < n; ++i) counts[dataset.label(i)] += 1.0;
  for (double& c : counts) c /= static_cast<double>(n);
  report.class_proportions = std::move(counts);
  report.limit = 1.0 - tree_sum(report.per_point_entropy, 0, n) / static_cast<double>(n);
  if (max_identity_gap != nullptr) *max_identity_gap = worst_gap;
  return report;
}

}  // namespace classif
