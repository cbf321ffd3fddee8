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

#ifndef NGR_COMMON_HPP_
#define NGR_COMMON_HPP_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace ngr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Error hierarchy. The CLI maps these onto exit codes.

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or unusable input data (CSV, JSON, unseen categories, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A loss term or parameter became NaN/Inf.
class NumericalDivergence : public std::runtime_error {
 public:
  NumericalDivergence(std::string term, long epoch = -1);

  const std::string& term() const { return term_; }
  /// Epoch index at which divergence was detected, -1 outside training.
  long epoch() const { return epoch_; }

 private:
  std::string term_;
  long epoch_;
};

class UndefinedMetric : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Warnings go to stderr unless a sink is installed (tests capture them).
using WarningSink = std::function<void(std::string_view)>;
void set_warning_sink(WarningSink sink);
void warn(std::string_view message);

}  // namespace ngr

#endif  // NGR_COMMON_HPP_
