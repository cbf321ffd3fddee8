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

#ifndef NGR_MULTIMODAL_HPP_
#define NGR_MULTIMODAL_HPP_

// Mixed numeric/categorical features as hypernodes.
//
// Each feature owns a group of input units (1 for numeric, one-hot width for
// categorical) and a group of embedding units. The network is
//
//   inputs --encoder--> embeddings --core MLP--> embeddings --decoder--> outputs
//
// trained end to end. Encoder and decoder paths that cross feature groups are
// penalized with the graph-constrained path norm against block-diagonal
// masks, so the core path matrix between embedding groups carries the
// feature-level dependency graph.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ngr/dataset.hpp"
#include "ngr/mlp.hpp"
#include "ngr/objective.hpp"
#include "ngr/pathnorm.hpp"

namespace ngr {

/// Header plus string cells, as read from a CSV file.
struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t num_rows() const { return rows.size(); }
  std::size_t num_columns() const { return header.size(); }
};

enum class FeatureKind { kNumeric, kCategorical };

std::string to_string(FeatureKind kind);
FeatureKind feature_kind_from_string(const std::string& name);

inline constexpr std::size_t kMaxDefaultEmbeddingWidth = 4;

struct ColumnSpec {
  std::string name;
  FeatureKind kind = FeatureKind::kNumeric;
  /// Sorted unique values for categorical columns.
  std::vector<std::string> categories;
  std::size_t embedding_width = 1;

  std::size_t input_width() const {
    return kind == FeatureKind::kNumeric ? 1 : categories.size();
  }
};

struct FeatureSchema {
  std::vector<ColumnSpec> columns;

  std::size_t num_features() const { return columns.size(); }
  std::vector<std::size_t> input_widths() const;
  std::vector<std::size_t> embedding_widths() const;
  std::size_t total_input_width() const;
  std::size_t total_embedding_width() const;
  std::vector<std::string> feature_names() const;
  /// Column names of the encoded dataset: "age", "sex=F", "sex=M", ...
  std::vector<std::string> encoded_names() const;
  bool all_numeric() const;

  /// Throws InvalidArgument on duplicate categories, empty names or zero widths.
  void validate() const;
};

/// Numeric columns are those whose every cell parses as a finite number;
/// everything else is categorical with sorted unique categories.
FeatureSchema build_schema(const RawTable& table);

/// Numeric columns z-scored, categorical columns one-hot (not standardized).
/// Throws DataError naming row and column on unseen categories or bad numbers.
Dataset encode(const RawTable& table, const FeatureSchema& schema);

/// Recover category labels of one categorical column by argmax of its block.
std::vector<std::string> decode_categorical(const Matrix& encoded, const FeatureSchema& schema,
                                            std::size_t column);

struct MultimodalMasks {
  GraphMask encoder;        // (sum I) x (sum E)
  GraphMask decoder;        // (sum E) x (sum I)
  GraphMask core_diagonal;  // (sum E) x (sum E), hypernode blocks

  /// Masks for a network with one encoder and one decoder layer.
  PenaltyMasks penalty_masks() const;
};

MultimodalMasks hypernode_masks(const FeatureSchema& schema);

/// Network [sum I, sum E, hidden..., sum E, sum I]: a linear encoder layer,
/// the ReLU core, and a linear decoder layer.
MlpParams init_hypernode_mlp(const FeatureSchema& schema, std::span<const std::size_t> hidden_dims,
                             std::uint64_t seed);

enum class Aggregation { kMax, kMean };

/// Collapse a core path view over embedding units to feature-level scores,
/// then symmetrize, zero the diagonal and max-normalize.
RecoveredGraph collapse_to_feature_graph(const Matrix& core_path_view, const FeatureSchema& schema,
                                         Aggregation aggregation = Aggregation::kMax);

}  // namespace ngr

#endif  // NGR_MULTIMODAL_HPP_
