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

#ifndef NGR_DATASET_HPP_
#define NGR_DATASET_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ngr/common.hpp"

namespace ngr {

/// Per-column z-score parameters recorded when a dataset is standardized.
struct Standardization {
  Vector mean;
  Vector stddev;
};

/// Samples by features.
struct Dataset {
  Matrix values;
  std::vector<std::string> feature_names;
  std::optional<Standardization> standardization;

  std::size_t num_samples() const { return static_cast<std::size_t>(values.rows()); }
  std::size_t num_features() const { return static_cast<std::size_t>(values.cols()); }

  /// Rows selected by index, names and standardization carried over.
  Dataset subset(const std::vector<std::size_t>& rows) const;
};

/// Names "x0", "x1", ...
std::vector<std::string> default_feature_names(std::size_t d);

/// Validates a loaded dataset: M >= 2, D >= 2, all values finite, one name
/// per column. Throws DataError.
void validate_dataset(const Dataset& data);

/// Z-score every column (population standard deviation). Constant columns
/// keep std 1 and emit a warning.
Dataset standardize(const Dataset& data);

}  // namespace ngr

#endif  // NGR_DATASET_HPP_
