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

#ifndef NGR_METRICS_HPP_
#define NGR_METRICS_HPP_

#include <cstddef>
#include <vector>

#include "ngr/pathnorm.hpp"

namespace ngr {

struct ScoredPair {
  std::size_t i = 0;
  std::size_t j = 0;
  double score = 0.0;
  int truth = 0;
};

/// One entry per unordered feature pair (i < j).
struct EdgeScoreSet {
  std::vector<ScoredPair> pairs;

  std::size_t num_positive() const;
  std::size_t num_negative() const { return pairs.size() - num_positive(); }
};

/// Upper-triangle flattening of graph scores against a 0/1 truth adjacency.
EdgeScoreSet edge_scores(const RecoveredGraph& graph, const GraphMask& truth);

/// Area under the ROC curve as the Mann-Whitney statistic with half credit
/// for ties. Throws UndefinedMetric unless both classes are present.
double auc(const EdgeScoreSet& s);

/// Average precision with tied scores entering together.
/// Throws UndefinedMetric without positives.
double aupr(const EdgeScoreSet& s);

}  // namespace ngr

#endif  // NGR_METRICS_HPP_
