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

#include "ngr/mlp.hpp"
#include "oracles.hpp"

using namespace ngr;

TEST_CASE("init_mlp shapes and determinism") {
  const std::vector<std::size_t> dims{10, 20, 10};
  const MlpParams a = init_mlp(dims, 7);
  const MlpParams b = init_mlp(dims, 7);
  REQUIRE(a.num_layers() == 2);
  CHECK(a.weights[0].rows() == 20);
  CHECK(a.weights[0].cols() == 10);
  CHECK(a.weights[1].rows() == 10);
  CHECK(a.weights[1].cols() == 20);
  CHECK(a.biases[0].size() == 20);
  CHECK(a.biases[1].size() == 10);
  for (std::size_t l = 0; l < 2; ++l) {
    CHECK(a.weights[l] == b.weights[l]);
    CHECK(a.biases[l].isZero(0.0));
  }
  CHECK(a.activations[0] == Activation::kRelu);
  CHECK(a.activations[1] == Activation::kIdentity);
  CHECK(a.num_parameters() == 20 * 10 + 20 + 10 * 20 + 10);

  const MlpParams c = init_mlp(dims, 8);
  CHECK(c.weights[0] != a.weights[0]);
}

TEST_CASE("init_mlp respects the uniform bound") {
  const std::vector<std::size_t> dims{4, 8, 4};
  const MlpParams m = init_mlp(dims, 3);
  const double bound = std::sqrt(6.0 / 12.0);
  for (const Matrix& w : m.weights) CHECK(w.cwiseAbs().maxCoeff() <= bound);
}

TEST_CASE("init_mlp rejects bad dims") {
  CHECK_THROWS_AS(init_mlp(std::vector<std::size_t>{}, 0), InvalidArgument);
  CHECK_THROWS_AS(init_mlp(std::vector<std::size_t>{3}, 0), InvalidArgument);
  CHECK_THROWS_AS(init_mlp(std::vector<std::size_t>{3, 0, 3}, 0), InvalidArgument);
}

TEST_CASE("forward hand examples") {
  MlpParams zero = init_mlp(std::vector<std::size_t>{3, 5, 3}, 1);
  for (Matrix& w : zero.weights) w.setZero();
  CHECK(forward(zero, Vector(Vector::Constant(3, 2.5))).isZero(0.0));

  MlpParams id = init_mlp(std::vector<std::size_t>{3, 3}, 1);
  id.weights[0] = Matrix::Identity(3, 3);
  Vector x(3);
  x << 1, -2, 3;
  CHECK(forward(id, x) == x);

  MlpParams two = init_mlp(std::vector<std::size_t>{2, 2, 1}, 1);
  two.weights[0] << 1, 0, 0, 1;
  two.biases[0] << -1, 0;
  two.weights[1] << 1, 1;
  Vector y(2);
  y << 2, 3;
  CHECK(forward(two, y)(0) == 4.0);
}

TEST_CASE("forward rejects width mismatch") {
  const MlpParams m = init_mlp(std::vector<std::size_t>{3, 4, 3}, 0);
  CHECK_THROWS_AS(forward(m, Vector(Vector::Zero(2))), ShapeError);
  CHECK_THROWS_AS(forward(m, Matrix(Matrix::Zero(5, 4))), ShapeError);
}

TEST_CASE("property: batch forward equals row-wise forward exactly") {
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t d = oracle::uniform_size(rng, 2, 7);
    const std::vector<std::size_t> dims{d, oracle::uniform_size(rng, 1, 16),
                                        oracle::uniform_size(rng, 1, 9), d};
    const MlpParams m = oracle::random_mlp(rng, dims);
    const Matrix batch = oracle::normal_matrix(rng, oracle::uniform_size(rng, 1, 40), d);
    const Matrix out = forward(m, batch);
    for (Eigen::Index k = 0; k < batch.rows(); ++k) {
      const Vector row = forward(m, Vector(batch.row(k).transpose()));
      CHECK(Vector(out.row(k).transpose()) == row);
    }
  }
}

TEST_CASE("activation names round-trip") {
  CHECK(activation_from_string(to_string(Activation::kRelu)) == Activation::kRelu);
  CHECK(activation_from_string(to_string(Activation::kIdentity)) == Activation::kIdentity);
  CHECK_THROWS(activation_from_string("tanh"));
}
