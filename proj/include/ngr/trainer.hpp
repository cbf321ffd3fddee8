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

#ifndef NGR_TRAINER_HPP_
#define NGR_TRAINER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ngr/dataset.hpp"
#include "ngr/mlp.hpp"
#include "ngr/multimodal.hpp"
#include "ngr/objective.hpp"
#include "ngr/pathnorm.hpp"

namespace ngr {

/// Datasets up to this many rows are trained full-batch by default.
inline constexpr std::size_t kFullBatchLimit = 5000;
inline constexpr std::size_t kDefaultBatchSize = 512;

struct TrainConfig {
  // Penalty constants. With auto_penalty set, lambda and gamma (and eta/beta
  // for hypernode training) are balanced against the initial regression loss.
  double lambda = 1.0;
  double gamma = 1.0;
  // Encoder/decoder penalties; only used for hypernode training.
  double eta = 1.0;
  double beta = 1.0;
  double symmetry = 0.0;
  bool auto_penalty = false;
  bool log_scaling = false;

  int epochs = 2000;
  /// 0 selects full batch up to kFullBatchLimit rows, else kDefaultBatchSize.
  std::size_t batch_size = 0;
  double learning_rate = 1e-3;
  /// Empty selects one hidden layer of width 2 * (core width).
  std::vector<std::size_t> hidden_dims;
  double val_fraction = 0.2;
  /// Epochs without a new best validation regression before warning.
  int patience = 500;
  std::uint64_t seed = 0;

  PenaltyWeights penalty_weights() const;
  /// Throws InvalidArgument.
  void validate() const;
};

struct TrainHistory {
  std::vector<LossBreakdown> train;
  /// NaN when there is no validation split.
  std::vector<double> val_regression;
  std::vector<double> seconds;

  std::size_t epochs_run() const { return train.size(); }
};

/// Uniform partition without replacement, deterministic per seed.
std::pair<Dataset, Dataset> split(const Dataset& data, double val_fraction, std::uint64_t seed);

struct BalancedPenalties {
  double lambda = 1.0;
  double gamma = 1.0;
  double eta = 0.0;
  double beta = 0.0;
};

/// Ratio balancing: each weighted penalty equals the regression loss.
/// Falls back to lambda = gamma = 1 (with a warning) if a raw penalty is zero.
BalancedPenalties balance_penalties(const LossBreakdown& initial, bool multimodal);

/// Resolves cfg's penalty constants on the initial network and first batch.
/// Passes user values through unless cfg.auto_penalty is set.
BalancedPenalties init_penalties(const MlpParams& initial, const Matrix& batch,
                                 const TrainConfig& cfg, const PenaltyMasks& masks);

struct TrainResult {
  MlpParams mlp;
  TrainHistory history;
  RecoveredGraph graph;
  BalancedPenalties penalties;
  PenaltyMasks masks;
  bool early_stop_warned = false;
};

/// Fits the network and extracts the graph. The dataset must be standardized.
/// With a schema, the hypernode encoder/core/decoder network is trained and
/// the graph is collapsed to schema features.
TrainResult train(const Dataset& data, const TrainConfig& cfg,
                  const std::optional<FeatureSchema>& schema = std::nullopt);

/// Standardize (if needed), train and return the graph.
RecoveredGraph recover(const Dataset& data, const TrainConfig& cfg);

}  // namespace ngr

#endif  // NGR_TRAINER_HPP_
