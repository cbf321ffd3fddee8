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

#include "ngr/mlp.hpp"

#include <cmath>

#include "ngr/random.hpp"

namespace ngr {

std::string to_string(Activation a) {
  switch (a) {
    case Activation::kIdentity:
      return "identity";
    case Activation::kRelu:
      return "relu";
  }
  return "unknown";
}

Activation activation_from_string(const std::string& name) {
  if (name == "identity") return Activation::kIdentity;
  if (name == "relu") return Activation::kRelu;
  throw InvalidArgument("unknown activation '" + name + "'");
}

std::size_t MlpParams::num_parameters() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    n += static_cast<std::size_t>(weights[l].size() + biases[l].size());
  }
  return n;
}

void MlpParams::validate() const {
  const std::size_t layers = weights.size();
  if (layers == 0) throw ShapeError("network has no layers");
  if (biases.size() != layers || activations.size() != layers ||
      layer_dims.size() != layers + 1) {
    throw ShapeError("layer count mismatch between weights, biases, activations and dims");
  }
  for (std::size_t l = 0; l < layers; ++l) {
    const auto rows = static_cast<std::size_t>(weights[l].rows());
    const auto cols = static_cast<std::size_t>(weights[l].cols());
    if (rows != layer_dims[l + 1] || cols != layer_dims[l]) {
      throw ShapeError("weights[" + std::to_string(l) + "] is " + std::to_string(rows) + "x" +
                       std::to_string(cols) + ", expected " + std::to_string(layer_dims[l + 1]) +
                       "x" + std::to_string(layer_dims[l]));
    }
    if (static_cast<std::size_t>(biases[l].size()) != rows) {
      throw ShapeError("biases[" + std::to_string(l) + "] has wrong length");
    }
  }
}

bool MlpParams::all_finite() const {
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (!weights[l].allFinite() || !biases[l].allFinite()) return false;
  }
  return true;
}

MlpParams init_mlp(std::span<const std::size_t> layer_dims, std::uint64_t seed) {
  if (layer_dims.size() < 2) {
    throw InvalidArgument("init_mlp needs at least an input and an output dimension");
  }
  for (std::size_t d : layer_dims) {
    if (d == 0) throw InvalidArgument("init_mlp: layer dimension must be positive");
  }

  MlpParams mlp;
  mlp.layer_dims.assign(layer_dims.begin(), layer_dims.end());
  mlp.seed = seed;
  Rng rng(seed);
  const std::size_t layers = layer_dims.size() - 1;
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t fan_in = layer_dims[l];
    const std::size_t fan_out = layer_dims[l + 1];
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    Matrix w(fan_out, fan_in);
    // Row-major fill order so the stream does not depend on Eigen storage.
    for (std::size_t r = 0; r < fan_out; ++r) {
      for (std::size_t c = 0; c < fan_in; ++c) {
        w(r, c) = rng.uniform(-bound, bound);
      }
    }
    mlp.weights.push_back(std::move(w));
    mlp.biases.push_back(Vector::Zero(static_cast<Eigen::Index>(fan_out)));
    mlp.activations.push_back(l + 1 == layers ? Activation::kIdentity : Activation::kRelu);
  }
  return mlp;
}

Vector forward(const MlpParams& mlp, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != mlp.input_dim()) {
    throw ShapeError("forward: input width " + std::to_string(x.size()) + " != " +
                     std::to_string(mlp.input_dim()));
  }
  Vector h = x;
  for (std::size_t l = 0; l < mlp.num_layers(); ++l) {
    Vector z = mlp.weights[l] * h + mlp.biases[l];
    if (mlp.activations[l] == Activation::kRelu) z = z.cwiseMax(0.0);
    h = std::move(z);
  }
  return h;
}

Matrix forward(const MlpParams& mlp, const Matrix& batch) {
  if (static_cast<std::size_t>(batch.cols()) != mlp.input_dim()) {
    throw ShapeError("forward: batch width " + std::to_string(batch.cols()) + " != " +
                     std::to_string(mlp.input_dim()));
  }
  Matrix out(batch.rows(), static_cast<Eigen::Index>(mlp.output_dim()));
  for (Eigen::Index k = 0; k < batch.rows(); ++k) {
    out.row(k) = forward(mlp, Vector(batch.row(k).transpose())).transpose();
  }
  return out;
}

ParamSet ParamSet::zeros_like(const MlpParams& mlp) {
  ParamSet p;
  for (std::size_t l = 0; l < mlp.num_layers(); ++l) {
    p.weights.push_back(Matrix::Zero(mlp.weights[l].rows(), mlp.weights[l].cols()));
    p.biases.push_back(Vector::Zero(mlp.biases[l].size()));
  }
  return p;
}

bool ParamSet::shape_matches(const MlpParams& mlp) const {
  if (weights.size() != mlp.num_layers() || biases.size() != mlp.num_layers()) return false;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (weights[l].rows() != mlp.weights[l].rows() ||
        weights[l].cols() != mlp.weights[l].cols() ||
        biases[l].size() != mlp.biases[l].size()) {
      return false;
    }
  }
  return true;
}

}  // namespace ngr
