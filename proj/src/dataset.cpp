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

#include "ngr/dataset.hpp"

#include <cmath>

namespace ngr {

Dataset Dataset::subset(const std::vector<std::size_t>& rows) const {
  Dataset out;
  out.values.resize(static_cast<Eigen::Index>(rows.size()), values.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out.values.row(static_cast<Eigen::Index>(k)) = values.row(static_cast<Eigen::Index>(rows[k]));
  }
  out.feature_names = feature_names;
  out.standardization = standardization;
  return out;
}

std::vector<std::string> default_feature_names(std::size_t d) {
  std::vector<std::string> names;
  names.reserve(d);
  for (std::size_t i = 0; i < d; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

void validate_dataset(const Dataset& data) {
  if (data.num_samples() < 2) throw DataError("dataset needs at least 2 samples");
  if (data.num_features() < 2) throw DataError("dataset needs at least 2 features");
  if (data.feature_names.size() != data.num_features()) {
    throw DataError("dataset has " + std::to_string(data.feature_names.size()) +
                    " names for " + std::to_string(data.num_features()) + " columns");
  }
  for (Eigen::Index r = 0; r < data.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < data.values.cols(); ++c) {
      if (!std::isfinite(data.values(r, c))) {
        throw DataError("non-finite value at row " + std::to_string(r) + ", column '" +
                        data.feature_names[static_cast<std::size_t>(c)] + "'");
      }
    }
  }
}

Dataset standardize(const Dataset& data) {
  const Eigen::Index m = data.values.rows();
  const Eigen::Index d = data.values.cols();
  if (m == 0) throw DataError("cannot standardize an empty dataset");

  Standardization st{Vector(d), Vector(d)};
  Dataset out = data;
  for (Eigen::Index c = 0; c < d; ++c) {
    const double mean = data.values.col(c).mean();
    const double var = (data.values.col(c).array() - mean).square().mean();
    double sd = std::sqrt(var);
    if (!(sd > 0.0)) {
      const std::string name = static_cast<std::size_t>(c) < data.feature_names.size()
                                   ? data.feature_names[static_cast<std::size_t>(c)]
                                   : std::to_string(c);
      warn("column '" + name + "' is constant; std clamped to 1");
      sd = 1.0;
    }
    st.mean(c) = mean;
    st.stddev(c) = sd;
    out.values.col(c) = (data.values.col(c).array() - mean) / sd;
  }
  out.standardization = std::move(st);
  return out;
}

}  // namespace ngr
