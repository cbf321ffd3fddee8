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

#include "ngr/ggm.hpp"

#include <cmath>

#include "ngr/random.hpp"

namespace ngr {

namespace {

double random_entry(Rng& rng) {
  const double magnitude = rng.uniform(0.5, 1.0);
  return rng.coin() ? magnitude : -magnitude;
}

// Fills the diagonal so each row is strictly diagonally dominant.
void set_dominant_diagonal(Matrix& theta) {
  for (Eigen::Index i = 0; i < theta.rows(); ++i) {
    theta(i, i) = 0.0;
    theta(i, i) = theta.row(i).cwiseAbs().sum() + kDiagonalDominanceMargin;
  }
}

}  // namespace

std::size_t GgmSpec::num_edges() const {
  return static_cast<std::size_t>(structure.sum() / 2.0);
}

GgmSpec ggm_from_precision(Matrix precision, std::uint64_t seed) {
  if (precision.rows() != precision.cols() || precision.rows() < 2) {
    throw InvalidArgument("precision matrix must be square with at least 2 rows");
  }
  if (!precision.allFinite()) throw InvalidArgument("precision matrix has non-finite entries");
  if ((precision - precision.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidArgument("precision matrix is not symmetric");
  }
  Eigen::LLT<Matrix> llt(precision);
  if (llt.info() != Eigen::Success) {
    throw InvalidArgument("precision matrix is not positive definite");
  }

  const Eigen::Index d = precision.rows();
  GgmSpec spec;
  spec.structure = Matrix::Zero(d, d);
  spec.signs = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (i != j && precision(i, j) != 0.0) {
        spec.structure(i, j) = 1.0;
        spec.signs(i, j) = precision(i, j) < 0.0 ? 1.0 : -1.0;
      }
    }
  }
  spec.precision = std::move(precision);
  spec.seed = seed;
  return spec;
}

GgmSpec chain_precision(std::size_t d, std::uint64_t seed) {
  if (d < 2) throw InvalidArgument("chain_precision: need at least 2 nodes");
  const auto n = static_cast<Eigen::Index>(d);
  Rng rng(seed);
  Matrix theta = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double v = random_entry(rng);
    theta(i, i + 1) = v;
    theta(i + 1, i) = v;
  }
  set_dominant_diagonal(theta);
  return ggm_from_precision(std::move(theta), seed);
}

GgmSpec random_sparse_precision(std::size_t d, double edge_prob, std::uint64_t seed) {
  if (d < 2) throw InvalidArgument("random_sparse_precision: need at least 2 nodes");
  if (!(edge_prob > 0.0 && edge_prob < 1.0)) {
    throw InvalidArgument("random_sparse_precision: edge_prob must lie in (0, 1)");
  }
  const auto n = static_cast<Eigen::Index>(d);
  Rng rng(seed);
  Matrix theta = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      // Always draw the value so the stream layout does not depend on edge_prob.
      const bool present = rng.uniform() < edge_prob;
      const double v = random_entry(rng);
      if (present) {
        theta(i, j) = v;
        theta(j, i) = v;
      }
    }
  }
  set_dominant_diagonal(theta);
  return ggm_from_precision(std::move(theta), seed);
}

Matrix covariance(const GgmSpec& ggm) {
  Eigen::LLT<Matrix> llt(ggm.precision);
  if (llt.info() != Eigen::Success) throw InvalidArgument("GGM precision is not positive definite");
  const auto n = ggm.precision.rows();
  Matrix cov = llt.solve(Matrix::Identity(n, n));
  // Symmetrize away solver round-off so the Cholesky below sees a symmetric matrix.
  return (cov + cov.transpose()) * 0.5;
}

Dataset sample(const GgmSpec& ggm, std::size_t num_samples, std::uint64_t seed) {
  if (num_samples < 1) throw InvalidArgument("sample: need at least one sample");
  const Matrix cov = covariance(ggm);
  Eigen::LLT<Matrix> llt(cov);
  if (llt.info() != Eigen::Success) throw InvalidArgument("GGM covariance is not positive definite");
  const Matrix lower = llt.matrixL();

  const Eigen::Index d = cov.rows();
  Rng rng(seed);
  Dataset out;
  out.values.resize(static_cast<Eigen::Index>(num_samples), d);
  Vector z(d);
  for (Eigen::Index k = 0; k < out.values.rows(); ++k) {
    for (Eigen::Index i = 0; i < d; ++i) z(i) = rng.normal();
    out.values.row(k) = (lower * z).transpose();
  }
  out.feature_names = default_feature_names(static_cast<std::size_t>(d));
  return out;
}

CiGraph ci_graph(const GgmSpec& ggm) {
  return CiGraph{GraphMask{MaskKind::kTargetGraph, ggm.structure}, ggm.signs};
}

}  // namespace ngr
