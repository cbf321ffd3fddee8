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

#include <cmath>
#include <vector>

#include <Eigen/Cholesky>

#include "ngr/ggm.hpp"
#include "oracles.hpp"

using namespace ngr;

TEST_CASE("chain precision structure") {
  const GgmSpec g = chain_precision(10, 3);
  CHECK(g.num_edges() == 9);
  for (Eigen::Index i = 0; i < 10; ++i) {
    for (Eigen::Index j = 0; j < 10; ++j) {
      const bool edge = std::abs(i - j) == 1;
      CHECK((g.structure(i, j) == 1.0) == edge);
      if (edge) {
        CHECK(std::abs(g.precision(i, j)) >= 0.5);
        CHECK(std::abs(g.precision(i, j)) <= 1.0);
        CHECK(g.signs(i, j) == (g.precision(i, j) < 0 ? 1.0 : -1.0));
      } else if (i != j) {
        CHECK(g.precision(i, j) == 0.0);
        CHECK(g.signs(i, j) == 0.0);
      }
    }
    const double off = g.precision.row(i).cwiseAbs().sum() - std::abs(g.precision(i, i));
    CHECK(g.precision(i, i) == doctest::Approx(off + kDiagonalDominanceMargin));
  }
  CHECK(Eigen::LLT<Matrix>(g.precision).info() == Eigen::Success);
  CHECK(chain_precision(10, 3).precision == g.precision);
  CHECK_THROWS_AS(chain_precision(1, 0), InvalidArgument);
}

TEST_CASE("ci_graph of a chain") {
  const CiGraph truth = ci_graph(chain_precision(10, 0));
  int upper = 0;
  for (Eigen::Index i = 0; i < 10; ++i) {
    for (Eigen::Index j = i + 1; j < 10; ++j) upper += truth.adjacency.matrix(i, j) == 1.0;
  }
  CHECK(upper == 9);
  CHECK(truth.adjacency.matrix.diagonal().isZero(0.0));
}

TEST_CASE("random sparse precision is symmetric and PD") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GgmSpec g = random_sparse_precision(8, 0.3, seed);
    CHECK(g.structure == g.structure.transpose());
    CHECK(g.structure.diagonal().isZero(0.0));
    CHECK(Eigen::LLT<Matrix>(g.precision).info() == Eigen::Success);
  }
}

TEST_CASE("edge counts follow binomial statistics over 1000 seeds") {
  for (double p : {0.05, 0.3}) {
    const int seeds = 1000;
    const double pairs = 10.0;  // C(5, 2)
    double total = 0.0;
    for (int s = 0; s < seeds; ++s) {
      total += static_cast<double>(random_sparse_precision(5, p, static_cast<std::uint64_t>(s)).num_edges());
    }
    const double mean = total / seeds;
    const double sigma = std::sqrt(pairs * p * (1 - p) / seeds);
    CHECK(std::abs(mean - p * pairs) <= 3.0 * sigma);
  }
}

TEST_CASE("ggm_from_precision validates its input") {
  Matrix asym(2, 2);
  asym << 2, 0.5, 0.4, 2;
  CHECK_THROWS(ggm_from_precision(asym, 0));
  Matrix indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  CHECK_THROWS(ggm_from_precision(indefinite, 0));
}

TEST_CASE("sampling: covariance and mean at M = 1e5") {
  const GgmSpec g = chain_precision(4, 12);
  const std::size_t m = 100000;
  const Dataset data = sample(g, m, 99);
  REQUIRE(data.num_samples() == m);
  const Vector mean = data.values.colwise().mean();
  const Matrix centered = data.values.rowwise() - mean.transpose();
  const Matrix emp = centered.transpose() * centered / static_cast<double>(m);
  const Matrix truth = covariance(g);
  CHECK((truth - g.precision.inverse()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(((emp - truth).array() / truth.array()).abs().maxCoeff() < 0.05);
  const double bound = 4.0 / std::sqrt(static_cast<double>(m));
  for (Eigen::Index j = 0; j < 4; ++j) CHECK(std::abs(mean(j)) < bound * std::sqrt(truth(j, j)));
}

TEST_CASE("sampling is deterministic and handles M = 1") {
  const GgmSpec g = random_sparse_precision(5, 0.4, 1);
  CHECK(sample(g, 20, 3).values == sample(g, 20, 3).values);
  CHECK(sample(g, 20, 3).values != sample(g, 20, 4).values);
  const Dataset one = sample(g, 1, 0);
  CHECK(one.num_samples() == 1);
  CHECK(one.values.allFinite());
  CHECK(one.feature_names[0] == "x0");
}
