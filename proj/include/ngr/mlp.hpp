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

#ifndef NGR_MLP_HPP_
#define NGR_MLP_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ngr/common.hpp"

namespace ngr {

enum class Activation { kIdentity, kRelu };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& name);

/// Dense feed-forward network. Layer l maps dim_l -> dim_{l+1}:
///   h_{l+1} = act_l(W_l h_l + b_l)
/// with weights[l] of shape (dim_{l+1} x dim_l).
struct MlpParams {
  std::vector<std::size_t> layer_dims;
  std::vector<Matrix> weights;
  std::vector<Vector> biases;
  std::vector<Activation> activations;
  std::uint64_t seed = 0;

  std::size_t num_layers() const { return weights.size(); }
  std::size_t input_dim() const { return layer_dims.front(); }
  std::size_t output_dim() const { return layer_dims.back(); }
  std::size_t num_parameters() const;

  /// Throws ShapeError if the layer shapes do not chain.
  void validate() const;
  bool all_finite() const;
};

/// Glorot-uniform weights, zero biases. Hidden layers use ReLU and the
/// final layer is affine.
MlpParams init_mlp(std::span<const std::size_t> layer_dims, std::uint64_t seed);

/// Evaluate on a single input vector.
Vector forward(const MlpParams& mlp, const Vector& x);

/// Evaluate on a batch whose rows are samples. Row k of the result equals
/// forward(mlp, batch.row(k)) exactly.
Matrix forward(const MlpParams& mlp, const Matrix& batch);

/// Parameter-shaped container used for gradients and optimizer moments.
struct ParamSet {
  std::vector<Matrix> weights;
  std::vector<Vector> biases;

  static ParamSet zeros_like(const MlpParams& mlp);
  bool shape_matches(const MlpParams& mlp) const;
};

}  // namespace ngr

#endif  // NGR_MLP_HPP_
