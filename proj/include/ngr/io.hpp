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

#ifndef NGR_IO_HPP_
#define NGR_IO_HPP_

// File formats. Every JSON document carries "format_version"; every CSV has
// a header row. Doubles are written in shortest round-trip form (at most 17
// significant digits), so reading back gives identical values.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "ngr/dataset.hpp"
#include "ngr/ggm.hpp"
#include "ngr/mlp.hpp"
#include "ngr/multimodal.hpp"
#include "ngr/pathnorm.hpp"
#include "ngr/trainer.hpp"

namespace ngr::io {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

// --- CSV -------------------------------------------------------------------

/// Comma-separated, header row required, RFC 4180 quoting accepted.
/// Throws DataError with a 1-based line number on ragged rows or bad quoting.
RawTable parse_csv(std::istream& in);
RawTable read_csv(const std::filesystem::path& path);

/// All cells must be numbers; no missing values. Not standardized.
Dataset table_to_dataset(const RawTable& table);
Dataset read_numeric_csv(const std::filesystem::path& path);

void write_dataset_csv(std::ostream& out, const Dataset& data);

/// %.17g formatting.
std::string format_double(double v);

// --- JSON ------------------------------------------------------------------

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// Model plus the layer segmentation used for training.
struct ModelFile {
  MlpParams mlp;
  std::size_t encoder_layers = 0;
  std::size_t decoder_layers = 0;
  std::vector<std::string> feature_names;
  std::optional<Standardization> standardization;
};

Json model_to_json(const ModelFile& model);
ModelFile model_from_json(const Json& j);

struct GraphFile {
  RecoveredGraph graph;
  /// Training metadata carried into evaluation rows; 0 when unknown.
  std::size_t num_samples = 0;
  std::uint64_t seed = 0;
  double train_seconds = 0.0;
};

Json graph_to_json(const GraphFile& g);
GraphFile graph_from_json(const Json& j);

Json ggm_to_json(const GgmSpec& ggm);
GgmSpec ggm_from_json(const Json& j);

Json truth_to_json(const CiGraph& truth, const std::vector<std::string>& names);
CiGraph truth_from_json(const Json& j);

Json schema_to_json(const FeatureSchema& schema);
FeatureSchema schema_from_json(const Json& j);

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

// --- Other outputs ---------------------------------------------------------

/// epoch,regression,diag_penalty,sparsity_penalty,enc_penalty,dec_penalty,total,val_regression
void write_history_csv(std::ostream& out, const TrainHistory& history);

/// Undirected DOT graph with edges of score >= threshold, labelled by score.
void write_dot(std::ostream& out, const RecoveredGraph& graph, double threshold);

/// i,j,score for edges with score >= threshold.
void write_edgelist(std::ostream& out, const RecoveredGraph& graph, double threshold);

}  // namespace ngr::io

#endif  // NGR_IO_HPP_
