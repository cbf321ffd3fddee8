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

#include "ngr/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ngr::io {

namespace {

void require_version(const Json& j, const char* what) {
  if (!j.is_object() || !j.contains("format_version")) {
    throw DataError(std::string(what) + ": missing format_version");
  }
  const int v = j.at("format_version").get<int>();
  if (v != kFormatVersion) {
    throw DataError(std::string(what) + ": unsupported format_version " + std::to_string(v));
  }
}

// Splits one logical CSV record, which may span several physical lines when
// a quoted field contains a newline. Returns false at end of input.
bool next_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line) {
  fields.clear();
  std::string raw;
  if (!std::getline(in, raw)) return false;
  ++line;
  const std::size_t start_line = line;
  std::string field;
  bool quoted = false;
  bool field_was_quoted = false;
  for (std::size_t k = 0;; ++k) {
    if (k == raw.size()) {
      if (quoted) {
        std::string more;
        if (!std::getline(in, more)) {
          throw DataError("CSV line " + std::to_string(start_line) + ": unterminated quote");
        }
        ++line;
        field += '\n';
        raw = std::move(more);
        k = static_cast<std::size_t>(-1);
        continue;
      }
      break;
    }
    const char ch = raw[k];
    if (quoted) {
      if (ch == '"') {
        if (k + 1 < raw.size() && raw[k + 1] == '"') {
          field += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"' && field.empty() && !field_was_quoted) {
      quoted = true;
      field_was_quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      field_was_quoted = false;
    } else if (ch == '\r' && k + 1 == raw.size()) {
      // CRLF line ending.
    } else {
      if (field_was_quoted) {
        throw DataError("CSV line " + std::to_string(line) + ": text after closing quote");
      }
      field += ch;
    }
  }
  fields.push_back(std::move(field));
  return true;
}

std::optional<double> parse_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::string dot_id(const std::string& name) {
  std::string s = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') s += '\\';
    s += c;
  }
  return s + '"';
}

}  // namespace

// --- CSV -------------------------------------------------------------------

RawTable parse_csv(std::istream& in) {
  RawTable table;
  std::size_t line = 0;
  std::vector<std::string> fields;
  if (!next_record(in, fields, line)) throw DataError("CSV is empty (header row required)");
  table.header = fields;
  if (table.header.empty() || (table.header.size() == 1 && table.header[0].empty())) {
    throw DataError("CSV line 1: empty header");
  }
  while (next_record(in, fields, line)) {
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (fields.size() != table.header.size()) {
      throw DataError("CSV line " + std::to_string(line) + ": expected " +
                      std::to_string(table.header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    }
    table.rows.push_back(fields);
  }
  return table;
}

RawTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return parse_csv(in);
}

Dataset table_to_dataset(const RawTable& table) {
  Dataset d;
  d.feature_names = table.header;
  d.values.resize(static_cast<Eigen::Index>(table.num_rows()),
                  static_cast<Eigen::Index>(table.num_columns()));
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    for (std::size_t c = 0; c < table.num_columns(); ++c) {
      const std::string& cell = table.rows[r][c];
      const auto v = parse_double(cell);
      if (!v) {
        // +2: 1-based and the header line.
        throw DataError("CSV line " + std::to_string(r + 2) + ", column '" + table.header[c] +
                        "': " + (cell.empty() ? "missing value" : "not a number '" + cell + "'"));
      }
      d.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = *v;
    }
  }
  return d;
}

Dataset read_numeric_csv(const std::filesystem::path& path) {
  Dataset d = table_to_dataset(read_csv(path));
  validate_dataset(d);
  return d;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  for (std::size_t c = 0; c < data.feature_names.size(); ++c) {
    if (c) out << ',';
    out << data.feature_names[c];
  }
  out << '\n';
  for (Eigen::Index r = 0; r < data.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < data.values.cols(); ++c) {
      if (c) out << ',';
      out << format_double(data.values(r, c));
    }
    out << '\n';
  }
}

// --- JSON ------------------------------------------------------------------

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw DataError("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows > 0 ? static_cast<Eigen::Index>(j.at(0).size()) : Eigen::Index{0};
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw DataError("matrix rows have unequal lengths");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return m;
}

namespace {

Json vector_to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw DataError("vector must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = j[k].get<double>();
  return v;
}

}  // namespace

Json model_to_json(const ModelFile& model) {
  const MlpParams& mlp = model.mlp;
  Json j;
  j["format_version"] = kFormatVersion;
  j["layer_dims"] = mlp.layer_dims;
  Json acts = Json::array();
  for (Activation a : mlp.activations) acts.push_back(to_string(a));
  j["activations"] = acts;
  Json weights = Json::array();
  Json biases = Json::array();
  for (std::size_t l = 0; l < mlp.num_layers(); ++l) {
    weights.push_back(matrix_to_json(mlp.weights[l]));
    biases.push_back(vector_to_json(mlp.biases[l]));
  }
  j["weights"] = weights;
  j["biases"] = biases;
  j["seed"] = mlp.seed;
  j["encoder_layers"] = model.encoder_layers;
  j["decoder_layers"] = model.decoder_layers;
  Json st;
  st["feature_names"] = model.feature_names;
  if (model.standardization) {
    st["mean"] = vector_to_json(model.standardization->mean);
    st["stddev"] = vector_to_json(model.standardization->stddev);
  }
  j["standardization"] = st;
  return j;
}

ModelFile model_from_json(const Json& j) {
  require_version(j, "model");
  try {
    ModelFile model;
    MlpParams& mlp = model.mlp;
    mlp.layer_dims = j.at("layer_dims").get<std::vector<std::size_t>>();
    for (const Json& w : j.at("weights")) mlp.weights.push_back(matrix_from_json(w));
    for (const Json& b : j.at("biases")) mlp.biases.push_back(vector_from_json(b));
    if (j.contains("activations")) {
      for (const Json& a : j.at("activations")) {
        mlp.activations.push_back(activation_from_string(a.get<std::string>()));
      }
    } else {
      for (std::size_t l = 0; l < mlp.weights.size(); ++l) {
        mlp.activations.push_back(l + 1 == mlp.weights.size() ? Activation::kIdentity
                                                               : Activation::kRelu);
      }
    }
    mlp.seed = j.at("seed").get<std::uint64_t>();
    model.encoder_layers = j.value("encoder_layers", std::size_t{0});
    model.decoder_layers = j.value("decoder_layers", std::size_t{0});
    if (j.contains("standardization")) {
      const Json& st = j.at("standardization");
      model.feature_names = st.value("feature_names", std::vector<std::string>{});
      if (st.contains("mean")) {
        model.standardization =
            Standardization{vector_from_json(st.at("mean")), vector_from_json(st.at("stddev"))};
      }
    }
    mlp.validate();
    return model;
  } catch (const Json::exception& e) {
    throw DataError(std::string("model: ") + e.what());
  } catch (const ShapeError& e) {
    throw DataError(std::string("model: ") + e.what());
  }
}

Json graph_to_json(const GraphFile& g) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["feature_names"] = g.graph.feature_names;
  j["scores"] = matrix_to_json(g.graph.scores);
  Json edges = Json::array();
  for (const Edge& e : g.graph.edges) {
    edges.push_back(Json{{"i", e.i}, {"j", e.j}, {"score", e.score}});
  }
  j["edges"] = edges;
  j["num_samples"] = g.num_samples;
  j["seed"] = g.seed;
  j["train_seconds"] = g.train_seconds;
  return j;
}

GraphFile graph_from_json(const Json& j) {
  require_version(j, "graph");
  try {
    GraphFile g;
    Matrix scores = matrix_from_json(j.at("scores"));
    auto names = j.at("feature_names").get<std::vector<std::string>>();
    g.graph = graph_from_scores(std::move(scores), std::move(names));
    g.num_samples = j.value("num_samples", std::size_t{0});
    g.seed = j.value("seed", std::uint64_t{0});
    g.train_seconds = j.value("train_seconds", 0.0);
    return g;
  } catch (const Json::exception& e) {
    throw DataError(std::string("graph: ") + e.what());
  } catch (const ShapeError& e) {
    throw DataError(std::string("graph: ") + e.what());
  }
}

Json ggm_to_json(const GgmSpec& ggm) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["precision"] = matrix_to_json(ggm.precision);
  j["seed"] = ggm.seed;
  return j;
}

GgmSpec ggm_from_json(const Json& j) {
  require_version(j, "ggm");
  try {
    return ggm_from_precision(matrix_from_json(j.at("precision")), j.at("seed").get<std::uint64_t>());
  } catch (const Json::exception& e) {
    throw DataError(std::string("ggm: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("ggm: ") + e.what());
  }
}

Json truth_to_json(const CiGraph& truth, const std::vector<std::string>& names) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["feature_names"] = names;
  j["adjacency"] = matrix_to_json(truth.adjacency.matrix);
  j["signs"] = matrix_to_json(truth.signs);
  return j;
}

CiGraph truth_from_json(const Json& j) {
  require_version(j, "truth");
  try {
    CiGraph t;
    t.adjacency = GraphMask{MaskKind::kTargetGraph, matrix_from_json(j.at("adjacency"))};
    t.signs = j.contains("signs") ? matrix_from_json(j.at("signs"))
                                  : Matrix::Zero(t.adjacency.matrix.rows(), t.adjacency.matrix.cols());
    if (t.adjacency.matrix.rows() != t.adjacency.matrix.cols()) {
      throw DataError("truth: adjacency is not square");
    }
    return t;
  } catch (const Json::exception& e) {
    throw DataError(std::string("truth: ") + e.what());
  }
}

Json schema_to_json(const FeatureSchema& schema) {
  Json cols = Json::array();
  for (const ColumnSpec& c : schema.columns) {
    Json col{{"name", c.name}, {"kind", to_string(c.kind)}, {"embedding_width", c.embedding_width}};
    if (c.kind == FeatureKind::kCategorical) col["categories"] = c.categories;
    cols.push_back(std::move(col));
  }
  return Json{{"format_version", kFormatVersion}, {"columns", cols}};
}

FeatureSchema schema_from_json(const Json& j) {
  require_version(j, "schema");
  try {
    FeatureSchema s;
    for (const Json& c : j.at("columns")) {
      ColumnSpec col;
      col.name = c.at("name").get<std::string>();
      col.kind = feature_kind_from_string(c.at("kind").get<std::string>());
      if (col.kind == FeatureKind::kCategorical) {
        col.categories = c.at("categories").get<std::vector<std::string>>();
      }
      const std::size_t default_width =
          col.kind == FeatureKind::kNumeric
              ? 1
              : std::min(col.categories.size(), kMaxDefaultEmbeddingWidth);
      col.embedding_width = c.value("embedding_width", default_width);
      s.columns.push_back(std::move(col));
    }
    s.validate();
    return s;
  } catch (const Json::exception& e) {
    throw DataError(std::string("schema: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("schema: ") + e.what());
  }
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DataError("'" + path.string() + "': " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out = open_for_write(path);
  out << j.dump(2) << '\n';
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

// --- Other outputs ---------------------------------------------------------

void write_history_csv(std::ostream& out, const TrainHistory& h) {
  out << "epoch,regression,diag_penalty,sparsity_penalty,enc_penalty,dec_penalty,total,"
         "val_regression\n";
  for (std::size_t e = 0; e < h.train.size(); ++e) {
    const LossBreakdown& l = h.train[e];
    out << e << ',' << format_double(l.regression) << ',' << format_double(l.diag_penalty) << ','
        << format_double(l.sparsity_penalty) << ',' << format_double(l.enc_penalty) << ','
        << format_double(l.dec_penalty) << ',' << format_double(l.total) << ','
        << format_double(h.val_regression[e]) << '\n';
  }
}

void write_dot(std::ostream& out, const RecoveredGraph& graph, double threshold) {
  out << "graph ngr {\n";
  for (const std::string& name : graph.feature_names) out << "  " << dot_id(name) << ";\n";
  for (const Edge& e : graph.edges) {
    if (e.score < threshold) continue;
    char label[32];
    std::snprintf(label, sizeof label, "%.3f", e.score);
    out << "  " << dot_id(graph.feature_names[e.i]) << " -- " << dot_id(graph.feature_names[e.j])
        << " [label=\"" << label << "\", weight=" << format_double(e.score) << "];\n";
  }
  out << "}\n";
}

void write_edgelist(std::ostream& out, const RecoveredGraph& graph, double threshold) {
  out << "i,j,score\n";
  for (const Edge& e : graph.edges) {
    if (e.score < threshold) continue;
    out << e.i << ',' << e.j << ',' << format_double(e.score) << '\n';
  }
}

}  // namespace ngr::io
