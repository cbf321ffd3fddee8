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

#include "ngr/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace ngr {

namespace {

// Scores sorted descending; labels follow. Order among equal scores is
// irrelevant because every consumer processes a tie group as a unit.
std::vector<ScoredPair> sorted_descending(const EdgeScoreSet& s) {
  std::vector<ScoredPair> v = s.pairs;
  for (const ScoredPair& p : v) {
    if (!std::isfinite(p.score)) throw InvalidArgument("edge score is not finite");
  }
  std::sort(v.begin(), v.end(),
            [](const ScoredPair& a, const ScoredPair& b) { return a.score > b.score; });
  return v;
}

}  // namespace

std::size_t EdgeScoreSet::num_positive() const {
  return static_cast<std::size_t>(
      std::count_if(pairs.begin(), pairs.end(), [](const ScoredPair& p) { return p.truth != 0; }));
}

EdgeScoreSet edge_scores(const RecoveredGraph& graph, const GraphMask& truth) {
  const std::size_t d = graph.num_features();
  if (truth.rows() != d || truth.cols() != d) {
    throw ShapeError("edge_scores: graph has " + std::to_string(d) + " nodes, truth is " +
                     std::to_string(truth.rows()) + "x" + std::to_string(truth.cols()));
  }
  EdgeScoreSet s;
  s.pairs.reserve(d * (d - 1) / 2);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const auto r = static_cast<Eigen::Index>(i);
      const auto c = static_cast<Eigen::Index>(j);
      s.pairs.push_back(ScoredPair{i, j, graph.scores(r, c), truth.matrix(r, c) != 0.0 ? 1 : 0});
    }
  }
  return s;
}

double auc(const EdgeScoreSet& s) {
  const std::size_t pos = s.num_positive();
  const std::size_t neg = s.pairs.size() - pos;
  if (pos == 0 || neg == 0) throw UndefinedMetric("AUC needs both positive and negative pairs");

  const std::vector<ScoredPair> v = sorted_descending(s);
  // Walk tie groups from the top: each positive beats every negative seen in
  // lower groups; within a group, positive/negative pairs get half credit.
  double wins = 0.0;
  std::size_t neg_above = 0;
  for (std::size_t a = 0; a < v.size();) {
    std::size_t b = a;
    std::size_t group_pos = 0;
    std::size_t group_neg = 0;
    while (b < v.size() && v[b].score == v[a].score) {
      (v[b].truth != 0 ? group_pos : group_neg)++;
      ++b;
    }
    const std::size_t neg_below = neg - neg_above - group_neg;
    wins += static_cast<double>(group_pos) * static_cast<double>(neg_below) +
            0.5 * static_cast<double>(group_pos) * static_cast<double>(group_neg);
    neg_above += group_neg;
    a = b;
  }
  return wins / (static_cast<double>(pos) * static_cast<double>(neg));
}

double aupr(const EdgeScoreSet& s) {
  const std::size_t pos = s.num_positive();
  if (pos == 0) throw UndefinedMetric("AUPR needs at least one positive pair");

  const std::vector<ScoredPair> v = sorted_descending(s);
  double ap = 0.0;
  std::size_t tp = 0;
  std::size_t seen = 0;
  for (std::size_t a = 0; a < v.size();) {
    std::size_t b = a;
    std::size_t group_pos = 0;
    while (b < v.size() && v[b].score == v[a].score) {
      if (v[b].truth != 0) ++group_pos;
      ++b;
    }
    tp += group_pos;
    seen += b - a;
    if (group_pos > 0) {
      const double precision = static_cast<double>(tp) / static_cast<double>(seen);
      ap += precision * static_cast<double>(group_pos);
    }
    a = b;
  }
  return std::min(1.0, ap / static_cast<double>(pos));
}

}  // namespace ngr
