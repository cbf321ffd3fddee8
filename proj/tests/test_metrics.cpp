/*
 * Copyright 2026 The NGR Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "ngr/ggm.hpp"
#include "ngr/metrics.hpp"
#include "oracles.hpp"

using namespace ngr;

namespace {

void random_instance(Rng& rng, std::vector<double>& scores, std::vector<int>& labels) {
  const std::size_t n = 10;  // pairs of a 5-node graph
  scores.assign(n, 0.0);
  labels.assign(n, 0);
  do {
    for (std::size_t k = 0; k < n; ++k) {
      // Few distinct values so ties are common.
      scores[k] = rng.coin() ? static_cast<double>(rng.below(4)) / 4.0 : rng.uniform();
      labels[k] = rng.uniform() < 0.4 ? 1 : 0;
    }
  } while (std::count(labels.begin(), labels.end(), 1) == 0 ||
           std::count(labels.begin(), labels.end(), 0) == 0);
}

}  // namespace

TEST_CASE("edge_scores flattens the upper triangle") {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 2) = s(2, 0) = 0.5;
  const RecoveredGraph g = graph_from_scores(s, default_feature_names(4));
  const CiGraph truth = ci_graph(chain_precision(4, 0));
  const EdgeScoreSet set = edge_scores(g, truth.adjacency);
  REQUIRE(set.pairs.size() == 6);
  CHECK(set.num_positive() == 3);
  for (const ScoredPair& p : set.pairs) {
    CHECK(p.i < p.j);
    CHECK(p.truth == (p.j == p.i + 1 ? 1 : 0));
    if (p.i == 0 && p.j == 2) CHECK(p.score == 1.0);
  }
  CHECK_THROWS_AS(edge_scores(g, ci_graph(chain_precision(5, 0)).adjacency), ShapeError);
}

TEST_CASE("auc and aupr simple cases") {
  const EdgeScoreSet perfect = oracle::make_score_set({0.9, 0.8, 0.1, 0.0}, {1, 1, 0, 0});
  CHECK(auc(perfect) == 1.0);
  CHECK(aupr(perfect) == 1.0);
  const EdgeScoreSet ties = oracle::make_score_set({0.3, 0.3, 0.3, 0.3, 0.3}, {1, 0, 1, 0, 0});
  CHECK(auc(ties) == 0.5);
  CHECK(aupr(ties) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK_THROWS_AS(auc(oracle::make_score_set({0.1, 0.2}, {1, 1})), UndefinedMetric);
  CHECK_THROWS_AS(aupr(oracle::make_score_set({0.1, 0.2}, {0, 0})), UndefinedMetric);
}

TEST_CASE("auc and aupr match brute-force oracles on 200 random instances") {
  Rng rng(81);
  std::vector<double> scores;
  std::vector<int> labels;
  for (int trial = 0; trial < 200; ++trial) {
    random_instance(rng, scores, labels);
    const EdgeScoreSet s = oracle::make_score_set(scores, labels);
    CHECK(std::abs(auc(s) - oracle::mann_whitney(scores, labels)) <= 1e-12);
    CHECK(std::abs(aupr(s) - oracle::threshold_sweep_ap(scores, labels)) <= 1e-12);
  }
}

TEST_CASE("property: auc invariant under strictly monotone transforms") {
  Rng rng(82);
  std::vector<double> scores;
  std::vector<int> labels;
  for (int trial = 0; trial < 100; ++trial) {
    random_instance(rng, scores, labels);
    std::vector<double> mapped(scores.size());
    std::transform(scores.begin(), scores.end(), mapped.begin(),
                   [](double v) { return std::exp(3.0 * v) - 7.0; });
    CHECK(auc(oracle::make_score_set(scores, labels)) == auc(oracle::make_score_set(mapped, labels)));
    CHECK(aupr(oracle::make_score_set(scores, labels)) == aupr(oracle::make_score_set(mapped, labels)));
  }
}

TEST_CASE("property: metrics do not depend on pair order") {
  Rng rng(83);
  std::vector<double> scores;
  std::vector<int> labels;
  for (int trial = 0; trial < 100; ++trial) {
    random_instance(rng, scores, labels);
    EdgeScoreSet s = oracle::make_score_set(scores, labels);
    const double a = auc(s);
    const double p = aupr(s);
    for (std::size_t k = s.pairs.size() - 1; k > 0; --k) {
      std::swap(s.pairs[k], s.pairs[rng.below(k + 1)]);
    }
    CHECK(auc(s) == a);
    CHECK(aupr(s) == p);
  }
}

TEST_CASE("property: aupr of random scores tracks prevalence") {
  Rng rng(84);
  const int trials = 1000;
  const std::size_t n = 45;
  std::vector<int> labels(n, 0);
  for (std::size_t k = 0; k < 9; ++k) labels[k] = 1;
  const double prevalence = 9.0 / 45.0;
  std::vector<double> values;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> scores(n);
    for (double& v : scores) v = rng.uniform();
    values.push_back(aupr(oracle::make_score_set(scores, labels)));
  }
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / trials;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double se = std::sqrt(var / (trials - 1) / trials);
  MESSAGE("mean random AUPR " << mean << " prevalence " << prevalence);
  // Exact expectation of average precision under a uniformly random ranking.
  double expected = 0.0;
  const double pos = 9.0;
  for (double k = 1; k <= n; ++k) expected += ((pos - 1.0) / (n - 1.0) * (k - 1.0) + 1.0) / k;
  expected /= static_cast<double>(n);
  CHECK(std::abs(mean - expected) <= 4.0 * se);
  CHECK(std::abs(mean - prevalence) <= 0.1);
}
