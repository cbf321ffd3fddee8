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

#include "ngr/trainer.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "ngr/adam.hpp"
#include "ngr/random.hpp"

namespace ngr {

namespace {

bool finite_nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

// Sub-streams of cfg.seed; init_mlp uses cfg.seed itself.
constexpr std::uint64_t kSplitStream = 1;
constexpr std::uint64_t kBatchStream = 2;

class BatchSampler {
 public:
  BatchSampler(const Matrix& data, std::size_t batch_size, std::uint64_t seed)
      : data_(data), batch_size_(batch_size), rng_(seed), order_(static_cast<std::size_t>(data.rows())) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
  }

  bool full_batch() const { return batch_size_ >= order_.size(); }

  // Uniform sample without replacement (partial Fisher-Yates).
  const Matrix& next() {
    if (full_batch()) return data_;
    batch_.resize(static_cast<Eigen::Index>(batch_size_), data_.cols());
    for (std::size_t k = 0; k < batch_size_; ++k) {
      const std::size_t pick = k + static_cast<std::size_t>(rng_.below(order_.size() - k));
      std::swap(order_[k], order_[pick]);
      batch_.row(static_cast<Eigen::Index>(k)) = data_.row(static_cast<Eigen::Index>(order_[k]));
    }
    return batch_;
  }

 private:
  const Matrix& data_;
  std::size_t batch_size_;
  Rng rng_;
  std::vector<std::size_t> order_;
  Matrix batch_;
};

std::size_t resolve_batch_size(const TrainConfig& cfg, std::size_t rows) {
  if (cfg.batch_size > 0) return std::min(cfg.batch_size, rows);
  return rows <= kFullBatchLimit ? rows : kDefaultBatchSize;
}

}  // namespace

PenaltyWeights TrainConfig::penalty_weights() const {
  return PenaltyWeights{lambda, gamma, eta, beta, symmetry, log_scaling};
}

void TrainConfig::validate() const {
  if (epochs < 1) throw InvalidArgument("epochs must be at least 1");
  if (!(val_fraction >= 0.0 && val_fraction < 1.0)) {
    throw InvalidArgument("val_fraction must lie in [0, 1)");
  }
  if (!finite_nonnegative(lambda) || !finite_nonnegative(gamma) || !finite_nonnegative(eta) ||
      !finite_nonnegative(beta) || !finite_nonnegative(symmetry)) {
    throw InvalidArgument("penalty constants must be finite and nonnegative");
  }
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw InvalidArgument("learning rate must be positive");
  }
  for (std::size_t h : hidden_dims) {
    if (h == 0) throw InvalidArgument("hidden layer width must be positive");
  }
}

std::pair<Dataset, Dataset> split(const Dataset& data, double val_fraction, std::uint64_t seed) {
  if (!(val_fraction >= 0.0 && val_fraction < 1.0)) {
    throw InvalidArgument("val_fraction must lie in [0, 1)");
  }
  const std::size_t m = data.num_samples();
  const auto num_val = static_cast<std::size_t>(std::floor(static_cast<double>(m) * val_fraction));
  if (m - num_val < 1) throw InvalidArgument("split leaves an empty training set");
  if (num_val == 0) return {data, data.subset({})};

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(seed, kSplitStream));
  for (std::size_t k = m - 1; k > 0; --k) {
    std::swap(order[k], order[static_cast<std::size_t>(rng.below(k + 1))]);
  }
  std::vector<std::size_t> val(order.begin(), order.begin() + static_cast<long>(num_val));
  std::vector<std::size_t> train(order.begin() + static_cast<long>(num_val), order.end());
  return {data.subset(train), data.subset(val)};
}

BalancedPenalties balance_penalties(const LossBreakdown& initial, bool multimodal) {
  BalancedPenalties p;
  const bool usable = initial.diag_penalty > 0.0 && initial.sparsity_penalty > 0.0 &&
                      (!multimodal || (initial.enc_penalty > 0.0 && initial.dec_penalty > 0.0));
  if (!usable) {
    warn("a structure penalty is zero at initialization; using lambda = gamma = 1");
    p.lambda = 1.0;
    p.gamma = 1.0;
    if (multimodal) {
      p.eta = 1.0;
      p.beta = 1.0;
    }
    return p;
  }
  p.lambda = initial.regression / initial.diag_penalty;
  p.gamma = initial.regression / initial.sparsity_penalty;
  if (multimodal) {
    p.eta = initial.regression / initial.enc_penalty;
    p.beta = initial.regression / initial.dec_penalty;
  }
  return p;
}

BalancedPenalties init_penalties(const MlpParams& initial, const Matrix& batch,
                                 const TrainConfig& cfg, const PenaltyMasks& masks) {
  const bool multimodal = masks.encoder.has_value();
  if (!cfg.auto_penalty) {
    return BalancedPenalties{cfg.lambda, cfg.gamma, multimodal ? cfg.eta : 0.0,
                             multimodal ? cfg.beta : 0.0};
  }
  const LossBreakdown parts = loss(initial, batch, cfg.penalty_weights(), masks);
  return balance_penalties(parts, multimodal);
}

TrainResult train(const Dataset& data, const TrainConfig& cfg,
                  const std::optional<FeatureSchema>& schema) {
  cfg.validate();
  validate_dataset(data);
  if (!data.standardization) throw InvalidArgument("train: dataset must be standardized");

  const std::size_t d = data.num_features();
  TrainResult result;
  std::vector<std::size_t> hidden = cfg.hidden_dims;
  if (schema) {
    if (schema->total_input_width() != d) {
      throw ShapeError("schema input width does not match the encoded dataset");
    }
    if (hidden.empty()) hidden.push_back(2 * schema->total_embedding_width());
    result.mlp = init_hypernode_mlp(*schema, hidden, cfg.seed);
    result.masks = hypernode_masks(*schema).penalty_masks();
  } else {
    if (hidden.empty()) hidden.push_back(2 * d);
    std::vector<std::size_t> dims{d};
    dims.insert(dims.end(), hidden.begin(), hidden.end());
    dims.push_back(d);
    result.mlp = init_mlp(dims, cfg.seed);
    result.masks = PenaltyMasks::unimodal(d);
  }
  MlpParams& mlp = result.mlp;
  const PenaltyMasks& masks = result.masks;

  auto [train_set, val_set] = split(data, cfg.val_fraction, cfg.seed);
  const bool has_val = val_set.num_samples() > 0;
  BatchSampler sampler(train_set.values, resolve_batch_size(cfg, train_set.num_samples()),
                       derive_seed(cfg.seed, kBatchStream));

  result.penalties = init_penalties(mlp, sampler.next(), cfg, masks);
  PenaltyWeights weights = cfg.penalty_weights();
  weights.lambda = result.penalties.lambda;
  weights.gamma = result.penalties.gamma;
  weights.eta = schema ? result.penalties.eta : 0.0;
  weights.beta = schema ? result.penalties.beta : 0.0;

  AdamState adam = AdamState::for_params(mlp, cfg.learning_rate);
  double best_val = std::numeric_limits<double>::infinity();
  int since_best = 0;
  TrainHistory& history = result.history;

  using Clock = std::chrono::steady_clock;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto start = Clock::now();
    try {
      const Matrix& batch = sampler.next();
      LossAndGradient lg = gradients(mlp, batch, weights, masks);
      const double val = has_val ? regression_loss(mlp, val_set.values)
                                 : std::numeric_limits<double>::quiet_NaN();
      if (has_val && !std::isfinite(val)) throw NumericalDivergence("val_regression");
      adam_step(mlp, lg.gradient, adam);
      if (!mlp.all_finite()) throw NumericalDivergence("parameters");

      history.train.push_back(lg.loss);
      history.val_regression.push_back(val);

      if (has_val) {
        if (val < best_val) {
          best_val = val;
          since_best = 0;
        } else if (++since_best == cfg.patience && !result.early_stop_warned) {
          warn("validation regression has not improved for " + std::to_string(cfg.patience) +
               " epochs (epoch " + std::to_string(epoch) + "); continuing");
          result.early_stop_warned = true;
        }
      }
    } catch (const NumericalDivergence& e) {
      throw NumericalDivergence(e.term(), epoch);
    }
    history.seconds.push_back(std::chrono::duration<double>(Clock::now() - start).count());
  }

  if (schema) {
    const Matrix core = path_matrix(mlp, masks.core_begin(), masks.core_end(mlp)).view();
    result.graph = collapse_to_feature_graph(core, *schema);
  } else {
    result.graph = extract_graph(mlp, data.feature_names);
  }
  return result;
}

RecoveredGraph recover(const Dataset& data, const TrainConfig& cfg) {
  if (data.standardization) return train(data, cfg).graph;
  return train(standardize(data), cfg).graph;
}

}  // namespace ngr
