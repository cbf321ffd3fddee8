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

#ifndef NGR_GGM_HPP_
#define NGR_GGM_HPP_

// Synthetic Gaussian graphical models used as ground truth.

#include <cstddef>
#include <cstdint>

#include "ngr/common.hpp"
#include "ngr/dataset.hpp"
#include "ngr/pathnorm.hpp"

namespace ngr {

/// Margin added to the absolute off-diagonal row sum on the diagonal.
inline constexpr double kDiagonalDominanceMargin = 0.1;

struct GgmSpec {
  /// Symmetric positive-definite precision matrix.
  Matrix precision;
  /// 0/1 off-diagonal support of the precision matrix.
  Matrix structure;
  /// sign(-precision) on edges, 0 elsewhere (partial correlation signs).
  Matrix signs;
  std::uint64_t seed = 0;

  std::size_t num_features() const { return static_cast<std::size_t>(precision.rows()); }
  std::size_t num_edges() const;
};

/// Builds structure and signs from a precision matrix. Throws InvalidArgument
/// if it is not symmetric or not positive definite.
GgmSpec ggm_from_precision(Matrix precision, std::uint64_t seed);

/// Path 0-1-...-(d-1) with U(0.5, 1) magnitudes and random signs.
GgmSpec chain_precision(std::size_t d, std::uint64_t seed);

/// Erdos-Renyi support, otherwise the same recipe as chain_precision.
GgmSpec random_sparse_precision(std::size_t d, double edge_prob, std::uint64_t seed);

/// Covariance (inverse precision).
Matrix covariance(const GgmSpec& ggm);

/// M draws from N(0, precision^{-1}). Not standardized.
Dataset sample(const GgmSpec& ggm, std::size_t num_samples, std::uint64_t seed);

struct CiGraph {
  GraphMask adjacency;
  Matrix signs;
};

/// Ground-truth conditional independence graph.
CiGraph ci_graph(const GgmSpec& ggm);

}  // namespace ngr

#endif  // NGR_GGM_HPP_
