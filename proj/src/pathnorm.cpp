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

#include "ngr/pathnorm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ngr {

namespace {

std::string describe(const MlpParams& mlp, std::size_t first, std::size_t last) {
  std::ostringstream os;
  os << "mlp(seed=" << mlp.seed << ", dims=";
  for (std::size_t i = 0; i < mlp.layer_dims.size(); ++i) {
    if (i) os << '-';
    os << mlp.layer_dims[i];
  }
  os << ", layers=[" << first << ',' << last << "))";
  return os.str();
}

}  // namespace

PathMatrix path_matrix(const MlpParams& mlp) {
  return path_matrix(mlp, 0, mlp.num_layers());
}

PathMatrix path_matrix(const MlpParams& mlp, std::size_t first, std::size_t last) {
  if (first >= last || last > mlp.num_layers()) {
    throw ShapeError("path_matrix: invalid layer range [" + std::to_string(first) + ", " +
                     std::to_string(last) + ")");
  }
  Matrix s = mlp.weights[first].cwiseAbs();
  for (std::size_t l = first + 1; l < last; ++l) {
    s = mlp.weights[l].cwiseAbs() * s;
  }
  return PathMatrix{std::move(s), describe(mlp, first, last)};
}

Matrix symmetrize(const Matrix& p) {
  if (p.rows() != p.cols()) {
    throw ShapeError("symmetrize: path matrix is " + std::to_string(p.rows()) + "x" +
                     std::to_string(p.cols()) + ", not square");
  }
  Matrix s(p.rows(), p.cols());
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      s(i, j) = (p(i, j) + p(j, i)) * 0.5;
    }
  }
  return s;
}

std::string to_string(MaskKind kind) {
  switch (kind) {
    case MaskKind::kTargetGraph:
      return "target_graph";
    case MaskKind::kComplement:
      return "complement";
    case MaskKind::kDiagonal:
      return "diagonal";
    case MaskKind::kEncoder:
      return "encoder";
    case MaskKind::kDecoder:
      return "decoder";
  }
  return "unknown";
}

GraphMask complement(const GraphMask& mask) {
  return GraphMask{MaskKind::kComplement,
                   Matrix::Ones(mask.matrix.rows(), mask.matrix.cols()) - mask.matrix};
}

GraphMask diag_mask(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return GraphMask{MaskKind::kDiagonal, Matrix::Identity(n, n)};
}

GraphMask block_diag_mask(std::span<const std::size_t> group_sizes_in,
                          std::span<const std::size_t> group_sizes_out, MaskKind kind) {
  if (group_sizes_in.empty() || group_sizes_in.size() != group_sizes_out.size()) {
    throw InvalidArgument("block_diag_mask: group lists must be nonempty and equally long");
  }
  const auto positive = [](std::size_t g) { return g > 0; };
  if (!std::all_of(group_sizes_in.begin(), group_sizes_in.end(), positive) ||
      !std::all_of(group_sizes_out.begin(), group_sizes_out.end(), positive)) {
    throw InvalidArgument("block_diag_mask: group sizes must be positive");
  }
  const std::size_t rows = std::accumulate(group_sizes_in.begin(), group_sizes_in.end(), std::size_t{0});
  const std::size_t cols = std::accumulate(group_sizes_out.begin(), group_sizes_out.end(), std::size_t{0});
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::size_t r0 = 0;
  std::size_t c0 = 0;
  for (std::size_t g = 0; g < group_sizes_in.size(); ++g) {
    m.block(static_cast<Eigen::Index>(r0), static_cast<Eigen::Index>(c0),
            static_cast<Eigen::Index>(group_sizes_in[g]),
            static_cast<Eigen::Index>(group_sizes_out[g]))
        .setOnes();
    r0 += group_sizes_in[g];
    c0 += group_sizes_out[g];
  }
  return GraphMask{kind, std::move(m)};
}

double gcpn(const Matrix& path_view, const GraphMask& target) {
  if (path_view.rows() != target.matrix.rows() || path_view.cols() != target.matrix.cols()) {
    throw ShapeError("gcpn: path matrix " + std::to_string(path_view.rows()) + "x" +
                     std::to_string(path_view.cols()) + " vs mask " +
                     std::to_string(target.matrix.rows()) + "x" +
                     std::to_string(target.matrix.cols()));
  }
  return (path_view.array() * (1.0 - target.matrix.array())).abs().sum();
}

RecoveredGraph graph_from_scores(Matrix scores, std::vector<std::string> feature_names) {
  if (scores.rows() != scores.cols()) throw ShapeError("graph scores must be square");
  if (static_cast<std::size_t>(scores.rows()) != feature_names.size()) {
    throw ShapeError("graph has " + std::to_string(scores.rows()) + " nodes but " +
                     std::to_string(feature_names.size()) + " names");
  }
  scores.diagonal().setZero();
  const double top = scores.size() > 0 ? scores.maxCoeff() : 0.0;
  if (top > 0.0) scores /= top;

  RecoveredGraph g;
  const Eigen::Index d = scores.rows();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      if (scores(i, j) > 0.0) {
        g.edges.push_back(
            Edge{static_cast<std::size_t>(i), static_cast<std::size_t>(j), scores(i, j)});
      }
    }
  }
  std::stable_sort(g.edges.begin(), g.edges.end(),
                   [](const Edge& a, const Edge& b) { return a.score > b.score; });
  g.scores = std::move(scores);
  g.feature_names = std::move(feature_names);
  return g;
}

RecoveredGraph extract_graph(const MlpParams& mlp, std::vector<std::string> feature_names) {
  if (mlp.input_dim() != mlp.output_dim()) {
    throw ShapeError("extract_graph: network input and output widths differ");
  }
  return graph_from_scores(symmetrize(path_matrix(mlp).view()), std::move(feature_names));
}

}  // namespace ngr
