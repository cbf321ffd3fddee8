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

#ifndef NGR_PATHNORM_HPP_
#define NGR_PATHNORM_HPP_

// Path mass of a dense network and the graph-constrained path norm.
//
// For layers W_1..W_L the path matrix is the product of elementwise absolute
// values. Entry (i, o) of the path view sums |w| products over every
// input-i -> output-o route through the hidden units; if it is zero, output o
// cannot depend on input i whatever the activations are.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ngr/common.hpp"
#include "ngr/mlp.hpp"

namespace ngr {

struct PathMatrix {
  /// Raw layer orientation: (D_out x D_in), i.e. |W_L| ... |W_1|.
  Matrix raw;
  std::string provenance;

  /// Path view (D_in x D_out): view()(i, o) is the mass from input i to output o.
  Matrix view() const { return raw.transpose(); }
};

/// Path matrix of the whole network.
PathMatrix path_matrix(const MlpParams& mlp);

/// Path matrix of layers [first, last).
PathMatrix path_matrix(const MlpParams& mlp, std::size_t first, std::size_t last);

/// Elementwise (P + P^T) / 2. Throws ShapeError if P is not square.
Matrix symmetrize(const Matrix& path_view);

enum class MaskKind { kTargetGraph, kComplement, kDiagonal, kEncoder, kDecoder };

std::string to_string(MaskKind kind);

/// Binary mask in path-view orientation (rows index inputs, columns outputs).
struct GraphMask {
  MaskKind kind = MaskKind::kTargetGraph;
  Matrix matrix;

  std::size_t rows() const { return static_cast<std::size_t>(matrix.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(matrix.cols()); }
};

/// J - S elementwise.
GraphMask complement(const GraphMask& mask);

/// Identity pattern of size d.
GraphMask diag_mask(std::size_t d);

/// Ones where the input-group index equals the output-group index. Both lists
/// must have the same number of groups.
GraphMask block_diag_mask(std::span<const std::size_t> group_sizes_in,
                          std::span<const std::size_t> group_sizes_out,
                          MaskKind kind = MaskKind::kDiagonal);

/// Graph-constrained path norm: || P * (J - S_g) ||_1 over the path view.
double gcpn(const Matrix& path_view, const GraphMask& target);

struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;
  double score = 0.0;
};

/// Symmetric [0, 1] edge scores with a zero diagonal.
struct RecoveredGraph {
  Matrix scores;
  /// Nonzero-score pairs with i < j, descending score, ties by (i, j).
  std::vector<Edge> edges;
  std::vector<std::string> feature_names;

  std::size_t num_features() const { return static_cast<std::size_t>(scores.rows()); }
};

/// Zero the diagonal of a symmetric nonnegative matrix, divide by its
/// maximum entry (when positive) and list the edges.
RecoveredGraph graph_from_scores(Matrix symmetric_scores,
                                 std::vector<std::string> feature_names);

/// sym(path_matrix(mlp)) turned into a RecoveredGraph.
RecoveredGraph extract_graph(const MlpParams& mlp,
                             std::vector<std::string> feature_names);

}  // namespace ngr

#endif  // NGR_PATHNORM_HPP_
