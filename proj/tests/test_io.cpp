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

#include <doctest.h>

#include <sstream>
#include <string>

#include "ngr/ggm.hpp"
#include "ngr/io.hpp"
#include "oracles.hpp"

using namespace ngr;
using io::Json;

TEST_CASE("csv parsing handles quotes and CRLF") {
  std::istringstream in("name,\"note, quoted\"\r\nx,\"a \"\"b\"\"\"\r\ny,\"multi\nline\"\r\n");
  const RawTable t = io::parse_csv(in);
  REQUIRE(t.num_columns() == 2);
  CHECK(t.header[1] == "note, quoted");
  REQUIRE(t.num_rows() == 2);
  CHECK(t.rows[0][1] == "a \"b\"");
  CHECK(t.rows[1][1] == "multi\nline");
}

TEST_CASE("csv errors carry line numbers") {
  std::istringstream ragged("a,b\n1,2\n3\n");
  try {
    io::parse_csv(ragged);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::istringstream empty("");
  CHECK_THROWS_AS(io::parse_csv(empty), DataError);

  RawTable t;
  t.header = {"a", "b"};
  t.rows = {{"1", "2"}, {"3", "oops"}};
  try {
    io::table_to_dataset(t);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("dataset csv round-trips exactly") {
  const Dataset d = sample(chain_precision(4, 1), 25, 2);
  std::stringstream buf;
  io::write_dataset_csv(buf, d);
  const Dataset back = io::table_to_dataset(io::parse_csv(buf));
  CHECK(back.values == d.values);
  CHECK(back.feature_names == d.feature_names);
}

TEST_CASE("model json round-trips bitwise") {
  Rng rng(3);
  io::ModelFile f;
  f.mlp = oracle::random_mlp(rng, {3, 7, 3});
  f.mlp.weights[0](0, 0) = 0.1 + 0.2;
  f.feature_names = default_feature_names(3);
  f.standardization = Standardization{Vector::Constant(3, 1.0 / 3.0), Vector::Constant(3, 2.0)};
  const io::ModelFile back = io::model_from_json(Json::parse(io::model_to_json(f).dump()));
  for (std::size_t l = 0; l < 2; ++l) {
    CHECK(back.mlp.weights[l] == f.mlp.weights[l]);
    CHECK(back.mlp.biases[l] == f.mlp.biases[l]);
    CHECK(back.mlp.activations[l] == f.mlp.activations[l]);
  }
  CHECK(back.mlp.seed == f.mlp.seed);
  REQUIRE(back.standardization.has_value());
  CHECK(back.standardization->mean == f.standardization->mean);
  CHECK(io::model_to_json(f)["format_version"] == io::kFormatVersion);
}

TEST_CASE("documents reject missing or unknown versions") {
  Json j = io::matrix_to_json(Matrix::Identity(2, 2));
  Json doc = {{"format_version", 99}, {"precision", j}, {"seed", 0}};
  CHECK_THROWS_AS(io::ggm_from_json(doc), DataError);
  doc.erase("format_version");
  CHECK_THROWS_AS(io::ggm_from_json(doc), DataError);
}

TEST_CASE("graph, ggm, truth and schema documents round-trip") {
  const GgmSpec g = chain_precision(5, 7);
  const GgmSpec gb = io::ggm_from_json(Json::parse(io::ggm_to_json(g).dump()));
  CHECK(gb.precision == g.precision);
  CHECK(gb.seed == g.seed);

  const CiGraph truth = ci_graph(g);
  const CiGraph tb = io::truth_from_json(io::truth_to_json(truth, default_feature_names(5)));
  CHECK(tb.adjacency.matrix == truth.adjacency.matrix);
  CHECK(tb.signs == truth.signs);

  Rng rng(2);
  io::GraphFile gf{extract_graph(oracle::random_mlp(rng, {5, 9, 5}), default_feature_names(5)), 100, 3,
                   1.25};
  const io::GraphFile back = io::graph_from_json(Json::parse(io::graph_to_json(gf).dump()));
  CHECK(back.graph.scores == gf.graph.scores);
  CHECK(back.graph.edges.size() == gf.graph.edges.size());
  CHECK(back.num_samples == 100);
  CHECK(back.seed == 3);

  RawTable t;
  t.header = {"n", "c"};
  t.rows = {{"1", "u"}, {"2", "v"}};
  const FeatureSchema s = build_schema(t);
  const FeatureSchema sb = io::schema_from_json(io::schema_to_json(s));
  CHECK(sb.columns[1].categories == s.columns[1].categories);
  CHECK(sb.columns[1].kind == FeatureKind::kCategorical);
  CHECK(sb.embedding_widths() == s.embedding_widths());
}

TEST_CASE("format_double keeps 17 significant digits") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.123456789}) {
    CHECK(std::stod(io::format_double(v)) == v);
  }
}

TEST_CASE("dot and edge list respect the threshold") {
  Matrix s(3, 3);
  s << 0, 1, 0.5, 1, 0, 0, 0.5, 0, 0;
  const RecoveredGraph g = graph_from_scores(s, {"a", "b c", "d"});
  std::ostringstream all;
  io::write_dot(all, g, 0.0);
  CHECK(all.str().find("\"a\" -- \"b c\"") != std::string::npos);
  CHECK(all.str().find("label=\"0.500\"") != std::string::npos);

  std::ostringstream none;
  io::write_dot(none, g, 1.1);
  CHECK(none.str().find("--") == std::string::npos);
  CHECK(none.str().rfind("graph ngr {", 0) == 0);

  std::ostringstream edges;
  io::write_edgelist(edges, g, 0.6);
  CHECK(edges.str() == "i,j,score\n0,1,1\n");
}

TEST_CASE("history csv has the documented header") {
  TrainHistory h;
  h.train.push_back(LossBreakdown{1, 2, 3, 0, 0, 0, 6});
  h.val_regression.push_back(0.5);
  h.seconds.push_back(0.01);
  std::ostringstream out;
  io::write_history_csv(out, h);
  CHECK(out.str().rfind("epoch,regression,diag_penalty,sparsity_penalty,enc_penalty,dec_penalty,total,val_regression\n0,", 0) == 0);
}
