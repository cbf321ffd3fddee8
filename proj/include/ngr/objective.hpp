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

#ifndef NGR_OBJECTIVE_HPP_
#define NGR_OBJECTIVE_HPP_

// Regression loss plus path-norm structure penalties, and its exact gradient.
//
//   total = mean_k ||x_k - f(x_k)||^2
//         + lambda * g(|| sym(S_core) * S_diag ||_1)
//         + gamma  * g(|| sym(S_core) ||_1)
//         + eta    * g(|| S_enc_path * (J - S_enc) ||_1)
//         + beta   * g(|| S_dec_path * (J - S_dec) ||_1)
//         + symmetry * g(|| S_core - S_core^T ||_F)
//
// g is the identity, or log(1e-12 + .) when log scaling is on. The core is
// the span of layers between the optional encoder and decoder segments; for
// a plain network it is the whole network.

#include <cstddef>
#include <optional>

#include "ngr/common.hpp"
#include "ngr/mlp.hpp"
#include "ngr/pathnorm.hpp"

namespace ngr {

inline constexpr double kLogScalingEpsilon = 1e-12;

struct PenaltyWeights {
  double lambda = 1.0;
  double gamma = 1.0;
  double eta = 0.0;
  double beta = 0.0;
  /// Soft symmetry penalty on the core path matrix; off by default.
  double symmetry = 0.0;
  bool log_scaling = false;
};

/// Masks that define the structure penalties and where the core sits.
struct PenaltyMasks {
  /// Self-dependency pattern over the core path view (S_diag).
  GraphMask diagonal;
  /// Allowed input -> embedding paths (S_enc); absent for plain networks.
  std::optional<GraphMask> encoder;
  /// Allowed embedding -> output paths (S_dec).
  std::optional<GraphMask> decoder;
  std::size_t encoder_layers = 0;
  std::size_t decoder_layers = 0;

  static PenaltyMasks unimodal(std::size_t num_features);

  std::size_t core_begin() const { return encoder_layers; }
  std::size_t core_end(const MlpParams& mlp) const {
    return mlp.num_layers() - decoder_layers;
  }

  /// Throws ShapeError when the masks do not fit the network.
  void validate(const MlpParams& mlp) const;
};

/// Unweighted terms plus the weighted total.
struct LossBreakdown {
  double regression = 0.0;
  double diag_penalty = 0.0;
  double sparsity_penalty = 0.0;
  double enc_penalty = 0.0;
  double dec_penalty = 0.0;
  double symmetry_penalty = 0.0;
  double total = 0.0;
};

/// Reassemble the weighted total from the parts.
double combine(const LossBreakdown& parts, const PenaltyWeights& weights);

/// Loss on a batch (rows are samples). Throws NumericalDivergence naming
/// the first non-finite term.
LossBreakdown loss(const MlpParams& mlp, const Matrix& batch,
                   const PenaltyWeights& weights, const PenaltyMasks& masks);

struct LossAndGradient {
  LossBreakdown loss;
  ParamSet gradient;
};

/// Loss and the exact gradient of its total. The subgradient of |w| at
/// w = 0 is taken as 0, as is that of the symmetry norm at a symmetric core.
LossAndGradient gradients(const MlpParams& mlp, const Matrix& batch,
                          const PenaltyWeights& weights, const PenaltyMasks& masks);

/// Mean squared reconstruction error only.
double regression_loss(const MlpParams& mlp, const Matrix& batch);

}  // namespace ngr

#endif  // NGR_OBJECTIVE_HPP_
