#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <numeric>
#include <random>

#include "classif/estimator.hpp"
#include "classif/oracle.hpp"
#include "helpers.hpp"

namespace classif {
namespace {

using test::make;
using namespace density;

TEST(BayesLimit, NamedProblems) {
  EXPECT_NEAR(bayes_limit(named_problem("identical-uniform")), 0.5, 1e-12);
  EXPECT_NEAR(bayes_limit(named_problem("disjoint-uniform")), 1.0, 1e-12);
  EXPECT_NEAR(bayes_limit(named_problem("linear1d")), 0.75, 1e-3);
  EXPECT_NEAR(bayes_limit(named_problem("linear1d", 0.5, 1000)), 0.75, 1e-3);
  for (double offset : {0.0, 0.25, 0.5, 0.9, 1.0, 2.0}) {
    EXPECT_NEAR(bayes_limit(named_problem("overlap-uniform1d", offset)),
                1.0 - std::max(0.0, 1.0 - offset) / 2.0, 2e-3)
        << offset;
  }
  EXPECT_ERROR_KIND(named_problem("nope"), ErrorKind::InvalidArgument);
}

TEST(BayesLimit, ClosedFormGaussians) {
  // Two unit Gaussians 2 apart: Bayes accuracy = Phi(1).
  const auto p = make_problem({Axis{-8, 10, 8192}}, {Gaussian{{0.0}, 1.0}, Gaussian{{2.0}, 1.0}});
  EXPECT_NEAR(bayes_limit(p), 0.5 * std::erfc(-1.0 / std::sqrt(2.0)), 1e-6);
}

TEST(BayesLimit, InvariantToClassOrderAndRefinement) {
  const std::vector<Family> fam = {Gaussian{{0.0, 0.0}, 1.0}, Ring{2.0, 0.4}, Gaussian{{1.0, -1.0}, 0.7}};
  const std::vector<double> w{0.5, 0.3, 0.2};
  const auto a = make_problem({Axis{-4, 4, 256}, Axis{-4, 4, 256}}, fam, w);
  const auto swapped = make_problem({Axis{-4, 4, 256}, Axis{-4, 4, 256}}, {fam[2], fam[0], fam[1]},
                                    {w[2], w[0], w[1]});
  EXPECT_NEAR(bayes_limit(a), bayes_limit(swapped), 1e-12);
  const auto fine = make_problem({Axis{-4, 4, 512}, Axis{-4, 4, 512}}, fam, w);
  EXPECT_LT(std::abs(bayes_limit(a) - bayes_limit(fine)), 1e-3);
}

TEST(BayesLimit, BoundedByPriorAndOne) {
  Rng rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t cells = 8 + t % 5;
    const std::size_t classes = 2 + t % 3;
    std::vector<Family> fam;
    for (std::size_t c = 0; c < classes; ++c) {
      std::vector<double> v(cells);
      double s = 0.0;
      for (auto& x : v) s += (x = u(rng) < 0.3 ? 0.0 : u(rng));
      if (s == 0.0) v[0] = s = 1.0;
      for (auto& x : v) x *= double(cells) / s;  // unit mass on [0, 1]
      fam.emplace_back(Table{v});
    }
    std::vector<double> w(classes);
    double ws = 0.0;
    for (auto& x : w) ws += (x = 0.1 + u(rng));
    for (auto& x : w) x /= ws;
    const auto p = make_problem({Axis{0, 1, cells}}, fam, w);
    const double limit = bayes_limit(p);
    EXPECT_GE(limit, *std::max_element(w.begin(), w.end()) - 1e-12);
    EXPECT_LE(limit, 1.0 + 1e-12);
  }
}

TEST(AnalyticProblem, Validation) {
  EXPECT_ERROR_KIND(make_problem({Axis{0, 1, 4}}, {Uniform{{0.0}, {1.0}}}), ErrorKind::InvalidArgument);
  EXPECT_ERROR_KIND(make_problem({Axis{0, 1, 4}}, {Uniform{{0.0}, {1.0}}, Uniform{{0.0}, {1.0}}}, {0.7, 0.7}),
                    ErrorKind::InvalidArgument);
  EXPECT_ERROR_KIND(make_problem({Axis{0, 1, 4}}, {Table{{1, 1, 1, 1}}, Table{{1, 1, 1, 2}}}),
                    ErrorKind::DegenerateProblem);
  EXPECT_ERROR_KIND(make_problem({Axis{0, 1, 4}}, {Table{{1, 1, 1, 1}}, Table{{0, 0, 0, 0}}}),
                    ErrorKind::DegenerateProblem);
  EXPECT_ERROR_KIND(make_problem({Axis{0, 1, 4}}, {Table{{1, 1, 1, 1}}, Table{{1, 1, 1}}}),
                    ErrorKind::InvalidArgument);
  EXPECT_ERROR_KIND(make_problem({Axis{0, 1, 4}}, {Table{{1, 1, 1, 1}}, Table{{-1, 1, 2, 2}}}),
                    ErrorKind::InvalidArgument);
  EXPECT_ERROR_KIND(make_problem({Axis{0, 1, 4}}, {Table{{1, 1, 1, 1}}, Uniform{{5.0}, {6.0}}}),
                    ErrorKind::DegenerateProblem);
  EXPECT_ERROR_KIND(make_problem({Axis{0, 1, 4}, Axis{0, 1, 4}, Axis{0, 1, 4}},
                                 {Uniform{{0, 0, 0}, {1, 1, 1}}, Uniform{{0, 0, 0}, {1, 1, 1}}}),
                    ErrorKind::InvalidArgument);
}

TEST(AnalyticProblem, GridGeometry) {
  const auto p = make_problem({Axis{0, 2, 4}, Axis{-1, 1, 2}},
                              {Uniform{{0, -1}, {2, 1}}, Uniform{{0, -1}, {1, 1}}}, {}, {"a", "b"});
  EXPECT_EQ(p.cell_count(), 8u);
  EXPECT_DOUBLE_EQ(p.cell_volume(), 0.5);
  EXPECT_EQ(p.cell_center(5), (std::vector<double>{0.75, 0.5}));
  EXPECT_EQ(p.class_names, (std::vector<std::string>{"a", "b"}));
  EXPECT_NEAR(bayes_limit(p), 0.75, 1e-12);
}

TEST(ProblemFromJson, ParsesAndReportsErrors) {
  const auto doc = nlohmann::json::parse(R"({
    "bounds": [[0, 1]], "cells": [1000], "weights": [0.5, 0.5],
    "classes": [{"family": "triangular-x", "direction": "increasing", "name": "up"},
                {"family": "triangular-x", "direction": "decreasing", "name": "down"}]})");
  const auto p = problem_from_json(doc);
  EXPECT_EQ(p.class_names, (std::vector<std::string>{"up", "down"}));
  EXPECT_NEAR(bayes_limit(p), 0.75, 1e-3);

  auto bad = doc;
  bad["classes"][0]["family"] = "weird";
  EXPECT_ERROR_KIND(problem_from_json(bad), ErrorKind::InvalidArgument);
  bad = doc;
  bad.erase("bounds");
  EXPECT_ERROR_KIND(problem_from_json(bad), ErrorKind::ParseError);
  bad = doc;
  bad["cells"] = "many";
  EXPECT_ERROR_KIND(problem_from_json(bad), ErrorKind::ParseError);

  const auto ring = nlohmann::json::parse(R"({
    "bounds": [[-2, 2], [-2, 2]], "cells": [200, 200],
    "classes": [{"family": "ring", "radius": 1.0, "sigma": 0.1},
                {"family": "gaussian", "mean": [0, 0], "sigma": 0.2}]})");
  EXPECT_GT(bayes_limit(problem_from_json(ring)), 0.99);
}

TEST(SampleProblem, CountsSupportsAndDeterminism) {
  const auto p = named_problem("disjoint-uniform");
  const auto ds = sample_problem(p, 1000, 3);
  EXPECT_EQ(ds.size(), 1000u);
  const auto props = class_proportions(ds);
  EXPECT_NEAR(props[0] * 1000.0, 500.0, 4.0 * std::sqrt(250.0));
  // disjoint-uniform: class 0 on [0, 0.5], class 1 on [0.5, 1].
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double x = ds.row(i)[0];
    if (ds.label(i) == 0) {
      EXPECT_TRUE(x >= 0.0 && x <= 0.5) << x;
    } else {
      EXPECT_TRUE(x >= 0.5 && x <= 1.0) << x;
    }
  }
  const auto again = sample_problem(p, 1000, 3);
  EXPECT_EQ(again.features().values, ds.features().values);
  EXPECT_EQ(again.labels(), ds.labels());
  EXPECT_NE(sample_problem(p, 1000, 4).features().values, ds.features().values);
}

TEST(ReferenceEstimate, Examples) {
  std::vector<double> x(10);
  std::iota(x.begin(), x.end(), 0.0);
  const auto ds = make(1, x, {0, 0, 1, 0, 1, 0, 1, 0, 1, 0});
  EXPECT_NEAR(reference_estimate(ds, NeighborhoodSpec::radius(1e6)).limit, 0.6, 1e-12);
  const auto pure = make(1, {0, 0.1, 0.2, 9, 9.1}, {0, 0, 0, 1, 1});
  EXPECT_EQ(reference_estimate(pure, NeighborhoodSpec::nearest(1)).limit, 1.0);
}

TEST(ReferenceEstimate, AgreesWithProductionBitForBit) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto ds = test::random_cloud(seed + 300, 150 + 50 * seed, 2, 3, seed % 2 == 1);
    for (MetricKind m : kAllMetrics) {
      for (const auto& spec : {NeighborhoodSpec::nearest(1 + seed * 3, m), NeighborhoodSpec::radius(0.5, m)}) {
        double gap = -1.0;
        const auto ref = reference_estimate(ds, spec, &gap);
        const auto got = classifiability(ds, spec);
        EXPECT_EQ(ref.limit, got.limit);
        EXPECT_EQ(ref.per_point_entropy, got.per_point_entropy);
        EXPECT_EQ(ref.neighborhood_size, got.neighborhood_size);
        EXPECT_EQ(ref.empty_neighborhood_count, got.empty_neighborhood_count);
        EXPECT_GE(gap, 0.0);
        EXPECT_LE(gap, 1e-12);
      }
    }
  }
}

TEST(Convergence, ErrorShrinksWithSampleSize) {
  const auto problem = named_problem("linear1d");
  const double truth = bayes_limit(problem);
  std::vector<double> mean_err;
  std::vector<double> std_err;
  for (std::size_t n : {500, 2000, 8000, 32000}) {
    const auto k = static_cast<std::size_t>(std::ceil(std::pow(double(n), 0.7)));
    std::vector<double> errs;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto ds = sample_problem(problem, n, mix_seed(n, seed));
      errs.push_back(std::abs(classifiability(ds, NeighborhoodSpec::nearest(k)).limit - truth));
    }
    const auto ms = mean_std(errs);
    mean_err.push_back(ms.mean);
    std_err.push_back(ms.std);
  }
  for (std::size_t i = 1; i < mean_err.size(); ++i) {
    EXPECT_LE(mean_err[i], mean_err[i - 1] + std_err[i]) << "step " << i;
  }
  EXPECT_LT(mean_err.back(), mean_err.front());
}

}  // namespace
}  // namespace classif
