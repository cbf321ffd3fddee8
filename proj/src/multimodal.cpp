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

#include "ngr/multimodal.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <set>

namespace ngr {

namespace {

std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  const char* begin = cell.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::size_t sum(const std::vector<std::size_t>& v) {
  return std::accumulate(v.begin(), v.end(), std::size_t{0});
}

std::string cell_location(std::size_t row, const std::string& column) {
  // Row numbers are 1-based data rows (the header is not counted).
  return "row " + std::to_string(row + 1) + ", column '" + column + "'";
}

}  // namespace

std::string to_string(FeatureKind kind) {
  return kind == FeatureKind::kNumeric ? "numeric" : "categorical";
}

FeatureKind feature_kind_from_string(const std::string& name) {
  if (name == "numeric") return FeatureKind::kNumeric;
  if (name == "categorical") return FeatureKind::kCategorical;
  throw InvalidArgument("unknown feature kind '" + name + "'");
}

std::vector<std::size_t> FeatureSchema::input_widths() const {
  std::vector<std::size_t> w;
  for (const ColumnSpec& c : columns) w.push_back(c.input_width());
  return w;
}

std::vector<std::size_t> FeatureSchema::embedding_widths() const {
  std::vector<std::size_t> w;
  for (const ColumnSpec& c : columns) w.push_back(c.embedding_width);
  return w;
}

std::size_t FeatureSchema::total_input_width() const { return sum(input_widths()); }
std::size_t FeatureSchema::total_embedding_width() const { return sum(embedding_widths()); }

std::vector<std::string> FeatureSchema::feature_names() const {
  std::vector<std::string> names;
  for (const ColumnSpec& c : columns) names.push_back(c.name);
  return names;
}

std::vector<std::string> FeatureSchema::encoded_names() const {
  std::vector<std::string> names;
  for (const ColumnSpec& c : columns) {
    if (c.kind == FeatureKind::kNumeric) {
      names.push_back(c.name);
    } else {
      for (const std::string& cat : c.categories) names.push_back(c.name + "=" + cat);
    }
  }
  return names;
}

bool FeatureSchema::all_numeric() const {
  return std::all_of(columns.begin(), columns.end(),
                     [](const ColumnSpec& c) { return c.kind == FeatureKind::kNumeric; });
}

void FeatureSchema::validate() const {
  if (columns.empty()) throw InvalidArgument("schema has no columns");
  std::set<std::string> names;
  for (const ColumnSpec& c : columns) {
    if (c.name.empty()) throw InvalidArgument("schema column with empty name");
    if (!names.insert(c.name).second) throw InvalidArgument("duplicate column '" + c.name + "'");
    if (c.embedding_width == 0) {
      throw InvalidArgument("column '" + c.name + "' has zero embedding width");
    }
    if (c.kind == FeatureKind::kCategorical) {
      if (c.categories.size() < 2) {
        throw InvalidArgument("categorical column '" + c.name + "' needs at least 2 categories");
      }
      const std::set<std::string> unique(c.categories.begin(), c.categories.end());
      if (unique.size() != c.categories.size()) {
        throw InvalidArgument("categorical column '" + c.name + "' has duplicate categories");
      }
    } else if (!c.categories.empty()) {
      throw InvalidArgument("numeric column '" + c.name + "' lists categories");
    }
  }
}

FeatureSchema build_schema(const RawTable& table) {
  if (table.num_columns() == 0 || table.num_rows() == 0) {
    throw InvalidArgument("build_schema: empty table");
  }
  FeatureSchema schema;
  for (std::size_t c = 0; c < table.num_columns(); ++c) {
    ColumnSpec col;
    col.name = table.header[c];
    bool numeric = true;
    std::set<std::string> values;
    for (std::size_t r = 0; r < table.num_rows(); ++r) {
      const std::string& cell = table.rows[r].at(c);
      if (cell.empty()) {
        throw InvalidArgument("build_schema: empty cell at " + cell_location(r, col.name));
      }
      values.insert(cell);
      if (numeric && !parse_number(cell)) numeric = false;
    }
    if (numeric) {
      col.kind = FeatureKind::kNumeric;
      col.embedding_width = 1;
    } else {
      if (values.size() < 2) {
        throw InvalidArgument("build_schema: categorical column '" + col.name +
                              "' has a single category");
      }
      col.kind = FeatureKind::kCategorical;
      col.categories.assign(values.begin(), values.end());
      col.embedding_width = std::min(col.categories.size(), kMaxDefaultEmbeddingWidth);
    }
    schema.columns.push_back(std::move(col));
  }
  return schema;
}

Dataset encode(const RawTable& table, const FeatureSchema& schema) {
  schema.validate();
  if (table.num_columns() != schema.num_features()) {
    throw DataError("table has " + std::to_string(table.num_columns()) + " columns, schema has " +
                    std::to_string(schema.num_features()));
  }
  for (std::size_t c = 0; c < table.num_columns(); ++c) {
    if (table.header[c] != schema.columns[c].name) {
      throw DataError("column " + std::to_string(c) + " is '" + table.header[c] +
                      "', schema expects '" + schema.columns[c].name + "'");
    }
  }

  const auto m = static_cast<Eigen::Index>(table.num_rows());
  const auto width = static_cast<Eigen::Index>(schema.total_input_width());
  Dataset out;
  out.values = Matrix::Zero(m, width);
  Standardization st{Vector::Zero(width), Vector::Ones(width)};

  Eigen::Index offset = 0;
  for (std::size_t c = 0; c < schema.num_features(); ++c) {
    const ColumnSpec& col = schema.columns[c];
    if (col.kind == FeatureKind::kNumeric) {
      for (Eigen::Index r = 0; r < m; ++r) {
        const auto v = parse_number(table.rows[static_cast<std::size_t>(r)].at(c));
        if (!v) {
          throw DataError("not a number at " + cell_location(static_cast<std::size_t>(r), col.name));
        }
        out.values(r, offset) = *v;
      }
      const double mean = out.values.col(offset).mean();
      double sd = std::sqrt((out.values.col(offset).array() - mean).square().mean());
      if (!(sd > 0.0)) {
        warn("column '" + col.name + "' is constant; std clamped to 1");
        sd = 1.0;
      }
      out.values.col(offset) = (out.values.col(offset).array() - mean) / sd;
      st.mean(offset) = mean;
      st.stddev(offset) = sd;
    } else {
      for (Eigen::Index r = 0; r < m; ++r) {
        const std::string& cell = table.rows[static_cast<std::size_t>(r)].at(c);
        const auto it = std::find(col.categories.begin(), col.categories.end(), cell);
        if (it == col.categories.end()) {
          throw DataError("unseen category '" + cell + "' at " +
                          cell_location(static_cast<std::size_t>(r), col.name));
        }
        out.values(r, offset + (it - col.categories.begin())) = 1.0;
      }
    }
    offset += static_cast<Eigen::Index>(col.input_width());
  }
  out.feature_names = schema.encoded_names();
  out.standardization = std::move(st);
  return out;
}

std::vector<std::string> decode_categorical(const Matrix& encoded, const FeatureSchema& schema,
                                            std::size_t column) {
  if (column >= schema.num_features()) throw InvalidArgument("decode_categorical: bad column");
  const ColumnSpec& col = schema.columns[column];
  if (col.kind != FeatureKind::kCategorical) {
    throw InvalidArgument("decode_categorical: column '" + col.name + "' is numeric");
  }
  const auto widths = schema.input_widths();
  const auto offset = static_cast<Eigen::Index>(
      std::accumulate(widths.begin(), widths.begin() + static_cast<long>(column), std::size_t{0}));
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(encoded.rows()));
  for (Eigen::Index r = 0; r < encoded.rows(); ++r) {
    Eigen::Index best = 0;
    encoded.row(r).segment(offset, static_cast<Eigen::Index>(col.input_width())).maxCoeff(&best);
    labels.push_back(col.categories[static_cast<std::size_t>(best)]);
  }
  return labels;
}

PenaltyMasks MultimodalMasks::penalty_masks() const {
  PenaltyMasks m;
  m.diagonal = core_diagonal;
  m.encoder = encoder;
  m.decoder = decoder;
  m.encoder_layers = 1;
  m.decoder_layers = 1;
  return m;
}

MultimodalMasks hypernode_masks(const FeatureSchema& schema) {
  schema.validate();
  const auto in = schema.input_widths();
  const auto emb = schema.embedding_widths();
  return MultimodalMasks{block_diag_mask(in, emb, MaskKind::kEncoder),
                         block_diag_mask(emb, in, MaskKind::kDecoder),
                         block_diag_mask(emb, emb, MaskKind::kDiagonal)};
}

MlpParams init_hypernode_mlp(const FeatureSchema& schema, std::span<const std::size_t> hidden_dims,
                             std::uint64_t seed) {
  schema.validate();
  const std::size_t in = schema.total_input_width();
  const std::size_t emb = schema.total_embedding_width();
  std::vector<std::size_t> dims{in, emb};
  dims.insert(dims.end(), hidden_dims.begin(), hidden_dims.end());
  dims.push_back(emb);
  dims.push_back(in);
  MlpParams mlp = init_mlp(dims, seed);
  for (Activation& a : mlp.activations) a = Activation::kIdentity;
  // Core hidden layers are layers 1 .. hidden_dims.size().
  for (std::size_t l = 1; l <= hidden_dims.size(); ++l) mlp.activations[l] = Activation::kRelu;
  return mlp;
}

RecoveredGraph collapse_to_feature_graph(const Matrix& core_path_view, const FeatureSchema& schema,
                                         Aggregation aggregation) {
  const auto emb = schema.embedding_widths();
  const std::size_t width = schema.total_embedding_width();
  if (static_cast<std::size_t>(core_path_view.rows()) != width ||
      static_cast<std::size_t>(core_path_view.cols()) != width) {
    throw ShapeError("collapse_to_feature_graph: core is " +
                     std::to_string(core_path_view.rows()) + "x" +
                     std::to_string(core_path_view.cols()) + ", embeddings total " +
                     std::to_string(width));
  }
  const std::size_t d = schema.num_features();
  std::vector<Eigen::Index> start(d, 0);
  for (std::size_t g = 1; g < d; ++g) {
    start[g] = start[g - 1] + static_cast<Eigen::Index>(emb[g - 1]);
  }
  const auto n = static_cast<Eigen::Index>(d);
  Matrix feature = Matrix::Zero(n, n);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      const auto block = core_path_view.block(start[a], start[b], static_cast<Eigen::Index>(emb[a]),
                                              static_cast<Eigen::Index>(emb[b]));
      feature(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          aggregation == Aggregation::kMax ? block.maxCoeff() : block.mean();
    }
  }
  return graph_from_scores(symmetrize(feature), schema.feature_names());
}

}  // namespace ngr
