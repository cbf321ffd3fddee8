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

#include "ngr/cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "ngr/ggm.hpp"
#include "ngr/io.hpp"
#include "ngr/metrics.hpp"
#include "ngr/random.hpp"

namespace ngr::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

// Sub-streams of a run seed.
constexpr std::uint64_t kSampleStream = 11;
constexpr std::uint64_t kTrainStream = 12;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collected while a command runs and written to <dir>/manifest.json (or a
// sibling file for bench), including when the command fails.
struct Manifest {
  std::string command;
  Json config = Json::object();
  std::vector<std::uint64_t> seeds;
  Json inputs = Json::object();
  Json outputs = Json::object();
  Json extra = Json::object();
  std::optional<fs::path> path;

  Json to_json(double wall_clock, const std::string& error) const {
    Json j;
    j["format_version"] = io::kFormatVersion;
    j["command"] = command;
    j["tool_version"] = kToolVersion;
    j["config"] = config;
    j["seeds"] = seeds;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    j["wall_clock_seconds"] = wall_clock;
    j["error"] = error.empty() ? Json(nullptr) : Json(error);
    return j;
  }
};

std::string hidden_to_string(const std::vector<std::size_t>& h) {
  std::string s;
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(h[k]);
  }
  return s;
}

Json config_to_json(const TrainConfig& c) {
  return Json{{"lambda", c.lambda},
              {"gamma", c.gamma},
              {"eta", c.eta},
              {"beta", c.beta},
              {"symmetry", c.symmetry},
              {"auto_penalty", c.auto_penalty},
              {"log_scaling", c.log_scaling},
              {"epochs", c.epochs},
              {"batch_size", c.batch_size},
              {"learning_rate", c.learning_rate},
              {"hidden", hidden_to_string(c.hidden_dims)},
              {"val_fraction", c.val_fraction},
              {"patience", c.patience},
              {"seed", c.seed}};
}

struct TrainFlags {
  TrainConfig cfg;
  std::string hidden;
};

void add_train_flags(CLI::App* sub, TrainFlags& f) {
  TrainConfig& c = f.cfg;
  sub->add_option("--hidden", f.hidden, "Hidden layer widths, e.g. \"20\" or \"32,32\" (default 2 x core width)");
  sub->add_option("--epochs", c.epochs, "Training epochs")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--lr", c.learning_rate, "Adam learning rate")->capture_default_str();
  sub->add_option("--lambda", c.lambda, "Self-dependency penalty")->capture_default_str();
  sub->add_option("--gamma", c.gamma, "Path sparsity penalty")->capture_default_str();
  sub->add_option("--eta", c.eta, "Encoder cross-group penalty (hypernode mode)")->capture_default_str();
  sub->add_option("--beta", c.beta, "Decoder cross-group penalty (hypernode mode)")->capture_default_str();
  sub->add_option("--symmetry", c.symmetry, "Soft symmetry penalty on the path matrix")->capture_default_str();
  sub->add_flag("--auto-penalty", c.auto_penalty, "Balance penalties against the initial regression loss");
  sub->add_flag("--log-scaling", c.log_scaling, "Apply log(1e-12 + .) to structure penalties");
  sub->add_option("--val-fraction", c.val_fraction, "Held-out validation fraction")->capture_default_str();
  sub->add_option("--batch-size", c.batch_size, "Batch size (0 = automatic)")->capture_default_str();
  sub->add_option("--patience", c.patience, "Epochs without validation improvement before warning")
      ->capture_default_str();
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
}

void finalize_train_flags(TrainFlags& f) {
  if (!f.hidden.empty()) f.cfg.hidden_dims = parse_size_list(f.hidden);
  f.cfg.validate();
}

std::string scalar_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// ---------------------------------------------------------------------------

struct GenOptions {
  std::size_t nodes = 10;
  std::string structure = "chain";
  double edge_prob = 0.2;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::string out;
};

GgmSpec make_ggm(const std::string& structure, std::size_t nodes, double edge_prob,
                 std::uint64_t seed) {
  if (structure == "chain") return chain_precision(nodes, seed);
  return random_sparse_precision(nodes, edge_prob, seed);
}

void cmd_gen_ggm(const GenOptions& o, Manifest& m) {
  m.config = Json{{"nodes", o.nodes},
                  {"structure", o.structure},
                  {"edge_prob", o.edge_prob},
                  {"samples", o.samples},
                  {"seed", o.seed}};
  m.seeds = {o.seed};
  const fs::path dir(o.out);
  const GgmSpec ggm = make_ggm(o.structure, o.nodes, o.edge_prob, o.seed);
  const Dataset data = sample(ggm, o.samples, derive_seed(o.seed, kSampleStream));

  const fs::path data_path = dir / "data.csv";
  {
    std::ofstream f(data_path, std::ios::binary);
    if (!f) throw DataError("cannot open '" + data_path.string() + "' for writing");
    io::write_dataset_csv(f, data);
  }
  io::write_json(dir / "ggm.json", io::ggm_to_json(ggm));
  io::write_json(dir / "truth.json", io::truth_to_json(ci_graph(ggm), data.feature_names));
  m.outputs = Json{{"data", data_path.string()},
                   {"ggm", (dir / "ggm.json").string()},
                   {"truth", (dir / "truth.json").string()}};
}

struct TrainCmdOptions {
  std::string data;
  std::string schema;
  std::string out;
  TrainFlags flags;
};

void cmd_train(const TrainCmdOptions& o, Manifest& m, std::ostream& out) {
  const TrainConfig& cfg = o.flags.cfg;
  m.config = config_to_json(cfg);
  m.seeds = {cfg.seed};
  m.inputs["data"] = o.data;
  const fs::path dir(o.out);

  Dataset data;
  std::optional<FeatureSchema> schema;
  std::vector<std::string> names;
  if (!o.schema.empty()) {
    m.inputs["schema"] = o.schema;
    schema = io::schema_from_json(io::read_json(o.schema));
    data = encode(io::read_csv(o.data), *schema);
    validate_dataset(data);
  } else {
    data = standardize(io::read_numeric_csv(o.data));
  }

  const auto start = Clock::now();
  const TrainResult result = train(data, cfg, schema);
  const double elapsed = seconds_since(start);

  m.extra["penalties"] = Json{{"lambda", result.penalties.lambda},
                              {"gamma", result.penalties.gamma},
                              {"eta", result.penalties.eta},
                              {"beta", result.penalties.beta},
                              {"auto", cfg.auto_penalty}};
  m.extra["early_stop_warning"] = result.early_stop_warned;

  io::ModelFile model{result.mlp, result.masks.encoder_layers, result.masks.decoder_layers,
                      data.feature_names, data.standardization};
  io::write_json(dir / "model.json", io::model_to_json(model));
  {
    std::ofstream f(dir / "history.csv", std::ios::binary);
    if (!f) throw DataError("cannot write history.csv");
    io::write_history_csv(f, result.history);
  }
  io::write_json(dir / "graph.json",
                 io::graph_to_json(io::GraphFile{result.graph, data.num_samples(), cfg.seed, elapsed}));
  m.outputs = Json{{"model", (dir / "model.json").string()},
                   {"history", (dir / "history.csv").string()},
                   {"graph", (dir / "graph.json").string()}};
  if (schema) {
    io::write_json(dir / "schema.json", io::schema_to_json(*schema));
    m.outputs["schema"] = (dir / "schema.json").string();
  }

  const double final_val = result.history.val_regression.back();
  out << "final validation regression: "
      << (std::isnan(final_val) ? std::string("n/a") : io::format_double(final_val)) << '\n';
}

struct EvalOptions {
  std::string graph;
  std::string truth;
  std::string out;
  std::string method = "ngr";
};

void cmd_eval(const EvalOptions& o, std::ostream& out) {
  const io::GraphFile g = io::graph_from_json(io::read_json(o.graph));
  const CiGraph truth = io::truth_from_json(io::read_json(o.truth));
  const EdgeScoreSet s = edge_scores(g.graph, truth.adjacency);
  const double a = auc(s);
  const double p = aupr(s);

  std::ostringstream row;
  row << o.method << ',' << g.graph.num_features() << ',' << g.num_samples << ',' << g.seed << ','
      << io::format_double(a) << ',' << io::format_double(p) << ','
      << io::format_double(g.train_seconds) << '\n';
  if (!o.out.empty()) {
    const bool fresh = !fs::exists(o.out) || fs::file_size(o.out) == 0;
    std::ofstream f(o.out, std::ios::binary | std::ios::app);
    if (!f) throw DataError("cannot open '" + o.out + "' for appending");
    if (fresh) f << "method,D,M,seed,auc,aupr,wall_clock\n";
    f << row.str();
  }
  out << "auc=" << scalar_text(a) << " aupr=" << scalar_text(p) << '\n';
}

struct ExportOptions {
  std::string graph;
  std::string format = "dot";
  double threshold = 0.0;
  std::string out;
};

void cmd_export(const ExportOptions& o, std::ostream& out) {
  const io::GraphFile g = io::graph_from_json(io::read_json(o.graph));
  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) throw DataError("cannot open '" + o.out + "' for writing");
  }
  std::ostream& dst = o.out.empty() ? out : file;
  if (o.format == "dot") {
    io::write_dot(dst, g.graph, o.threshold);
  } else if (o.format == "edgelist") {
    io::write_edgelist(dst, g.graph, o.threshold);
  } else {
    dst << io::graph_to_json(g).dump(2) << '\n';
  }
}

struct SchemaOptions {
  std::string data;
  std::string out;
};

void cmd_infer_schema(const SchemaOptions& o, std::ostream& out) {
  FeatureSchema schema;
  try {
    schema = build_schema(io::read_csv(o.data));
  } catch (const InvalidArgument& e) {
    throw DataError(e.what());
  }
  const Json j = io::schema_to_json(schema);
  if (o.out.empty()) {
    out << j.dump(2) << '\n';
  } else {
    io::write_json(o.out, j);
  }
}

struct BenchCmdOptions {
  BenchOptions bench;
  std::string samples_list = "100,500,1000";
  std::string out;
  TrainFlags flags;
};

int cmd_bench(BenchCmdOptions& o, Manifest& m, std::ostream& out) {
  BenchOptions& b = o.bench;
  b.samples = parse_size_list(o.samples_list);
  b.train = o.flags.cfg;
  if (const char* env = std::getenv("NGR_THREADS")) {
    const long t = std::strtol(env, nullptr, 10);
    if (t > 0) b.threads = static_cast<std::size_t>(t);
  }
  m.config = config_to_json(b.train);
  m.config["nodes"] = b.nodes;
  m.config["structure"] = b.structure;
  m.config["edge_prob"] = b.edge_prob;
  m.config["samples_list"] = o.samples_list;
  m.config["runs"] = b.runs;
  m.config["master_seed"] = b.master_seed;
  for (int r = 0; r < b.runs; ++r) m.seeds.push_back(b.master_seed + static_cast<std::uint64_t>(r));

  const BenchResult result = run_bench(b);

  const fs::path table_path(o.out);
  fs::path runs_path = table_path;
  runs_path.replace_extension(".runs.csv");
  {
    std::ofstream f(table_path, std::ios::binary);
    if (!f) throw DataError("cannot open '" + table_path.string() + "' for writing");
    write_bench_table(f, result);
  }
  {
    std::ofstream f(runs_path, std::ios::binary);
    if (!f) throw DataError("cannot open '" + runs_path.string() + "' for writing");
    f << "samples,run,seed,ok,auc,aupr,wall_clock,error\n";
    for (const BenchRun& r : result.runs) {
      f << r.samples << ',' << r.run << ',' << r.seed << ',' << (r.ok ? 1 : 0) << ','
        << io::format_double(r.auc) << ',' << io::format_double(r.aupr) << ','
        << io::format_double(r.seconds) << ",\"" << r.error << "\"\n";
    }
  }
  m.outputs = Json{{"table", table_path.string()}, {"runs", runs_path.string()}};

  for (const BenchSummary& s : result.summary) {
    out << "M=" << s.samples << " runs=" << s.succeeded << '/' << s.runs
        << " auc=" << scalar_text(s.auc_mean) << "+-" << scalar_text(s.auc_std)
        << " aupr=" << scalar_text(s.aupr_mean) << "+-" << scalar_text(s.aupr_std) << '\n';
  }
  const bool any_ok = std::any_of(result.runs.begin(), result.runs.end(),
                                  [](const BenchRun& r) { return r.ok; });
  if (!any_ok) {
    m.extra["failed_runs"] = result.runs.size();
    throw std::runtime_error("all benchmark runs failed");
  }
  return kOk;
}

// Flat key=value config file turned into --key=value arguments.
std::vector<std::string> config_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::FileError::Missing(path);
  std::vector<std::string> args;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw CLI::ConversionError("config line without '=': " + line);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r\"");
      const auto e = s.find_last_not_of(" \t\r\"");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    args.push_back("--" + key + "=" + value);
  }
  return args;
}

// Moves --config <file> contents in front of the user's flags so that
// explicit flags, parsed later, take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  if (args.empty()) return args;
  std::vector<std::string> rest;
  std::optional<std::string> config;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) {
      config = args[++k];
    } else if (args[k].rfind("--config=", 0) == 0) {
      config = args[k].substr(9);
    } else {
      rest.push_back(args[k]);
    }
  }
  if (!config || rest.empty()) return rest;
  std::vector<std::string> out{rest.front()};
  for (std::string& a : config_args(*config)) out.push_back(std::move(a));
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

void write_manifest(const Manifest& m, double wall_clock, const std::string& error,
                    std::ostream& err) {
  if (!m.path) return;
  try {
    std::error_code ec;
    if (m.path->has_parent_path()) fs::create_directories(m.path->parent_path(), ec);
    io::write_json(*m.path, m.to_json(wall_clock, error));
  } catch (const std::exception& e) {
    err << "warning: could not write manifest: " << e.what() << '\n';
  }
}

}  // namespace

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) throw InvalidArgument("empty entry in list '" + text + "'");
    item = item.substr(b, e - b + 1);
    char* end = nullptr;
    const long long v = std::strtoll(item.c_str(), &end, 10);
    if (*end != '\0' || v <= 0) throw InvalidArgument("'" + item + "' is not a positive integer");
    values.push_back(static_cast<std::size_t>(v));
  }
  if (values.empty()) throw InvalidArgument("empty list");
  return values;
}

BenchResult run_bench(const BenchOptions& o) {
  if (o.runs < 1) throw InvalidArgument("bench: runs must be at least 1");
  if (o.structure != "chain" && o.structure != "random") {
    throw InvalidArgument("bench: unknown structure '" + o.structure + "'");
  }
  BenchResult result;
  for (std::size_t m : o.samples) {
    for (int r = 0; r < o.runs; ++r) {
      BenchRun run;
      run.samples = m;
      run.run = r;
      run.seed = o.master_seed + static_cast<std::uint64_t>(r);
      result.runs.push_back(run);
    }
  }

  auto job = [&o](BenchRun& run) {
    const auto start = Clock::now();
    try {
      const GgmSpec ggm = make_ggm(o.structure, o.nodes, o.edge_prob, run.seed);
      const Dataset data =
          standardize(sample(ggm, run.samples, derive_seed(run.seed, kSampleStream)));
      TrainConfig cfg = o.train;
      cfg.seed = derive_seed(run.seed, kTrainStream);
      const TrainResult trained = train(data, cfg);
      const EdgeScoreSet s = edge_scores(trained.graph, ci_graph(ggm).adjacency);
      run.auc = auc(s);
      run.aupr = aupr(s);
      run.ok = true;
    } catch (const std::exception& e) {
      run.ok = false;
      run.error = e.what();
    }
    run.seconds = seconds_since(start);
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min(o.threads, result.runs.size()));
  if (workers == 1) {
    for (BenchRun& run : result.runs) job(run);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < result.runs.size(); k = next++) job(result.runs[k]);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  for (std::size_t m : o.samples) {
    BenchSummary s;
    s.samples = m;
    s.runs = o.runs;
    std::vector<double> aucs;
    std::vector<double> auprs;
    for (const BenchRun& r : result.runs) {
      if (r.samples == m && r.ok) {
        aucs.push_back(r.auc);
        auprs.push_back(r.aupr);
      }
    }
    s.succeeded = static_cast<int>(aucs.size());
    auto mean_std = [](const std::vector<double>& v, double& mean, double& sd) {
      mean = sd = 0.0;
      if (v.empty()) return;
      for (double x : v) mean += x;
      mean /= static_cast<double>(v.size());
      if (v.size() < 2) return;
      for (double x : v) sd += (x - mean) * (x - mean);
      sd = std::sqrt(sd / static_cast<double>(v.size() - 1));
    };
    mean_std(aucs, s.auc_mean, s.auc_std);
    mean_std(auprs, s.aupr_mean, s.aupr_std);
    result.summary.push_back(s);
  }
  return result;
}

void write_bench_table(std::ostream& out, const BenchResult& result) {
  out << "samples,runs,succeeded,auc_mean,auc_std,aupr_mean,aupr_std\n";
  for (const BenchSummary& s : result.summary) {
    out << s.samples << ',' << s.runs << ',' << s.succeeded << ',' << io::format_double(s.auc_mean)
        << ',' << io::format_double(s.auc_std) << ',' << io::format_double(s.aupr_mean) << ','
        << io::format_double(s.aupr_std) << '\n';
  }
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse dependency graph recovery with path-norm regularized MLPs", "ngr"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen-ggm", "Generate a Gaussian graphical model and samples");
  gen_cmd->add_option("--nodes", gen.nodes, "Number of features")->capture_default_str()->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  gen_cmd->add_option("--structure", gen.structure, "chain or random")->capture_default_str()->check(CLI::IsMember({"chain", "random"}));
  gen_cmd->add_option("--edge-prob", gen.edge_prob, "Edge probability for random structure")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--samples", gen.samples, "Number of samples")->capture_default_str()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();

  TrainCmdOptions tr;
  CLI::App* train_cmd = app.add_subcommand("train", "Fit a network and recover the dependency graph");
  train_cmd->add_option("--data", tr.data, "Input CSV")->required();
  train_cmd->add_option("--schema", tr.schema, "Feature schema JSON (enables hypernode training)");
  train_cmd->add_option("--out", tr.out, "Output directory")->required();
  add_train_flags(train_cmd, tr.flags);

  EvalOptions ev;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Score a recovered graph against the truth");
  eval_cmd->add_option("--graph", ev.graph, "graph.json")->required();
  eval_cmd->add_option("--truth", ev.truth, "truth.json")->required();
  eval_cmd->add_option("--out", ev.out, "Results CSV to append to");
  eval_cmd->add_option("--method", ev.method, "Method label for the results row")->capture_default_str();

  ExportOptions ex;
  CLI::App* export_cmd = app.add_subcommand("export", "Export a recovered graph");
  export_cmd->add_option("--graph", ex.graph, "graph.json")->required();
  export_cmd->add_option("--format", ex.format, "dot, edgelist or json")->capture_default_str()->check(CLI::IsMember({"dot", "edgelist", "json"}));
  export_cmd->add_option("--threshold", ex.threshold, "Keep edges with score >= threshold")->capture_default_str();
  export_cmd->add_option("--out", ex.out, "Output file (default stdout)");

  SchemaOptions sc;
  CLI::App* schema_cmd = app.add_subcommand("infer-schema", "Infer a feature schema from a CSV");
  schema_cmd->add_option("--data", sc.data, "Input CSV")->required();
  schema_cmd->add_option("--out", sc.out, "Schema JSON (default stdout)");

  BenchCmdOptions be;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Generate/train/evaluate sweep over sample sizes");
  bench_cmd->add_option("--nodes", be.bench.nodes, "Number of features")->capture_default_str()->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  bench_cmd->add_option("--structure", be.bench.structure, "chain or random")->capture_default_str()->check(CLI::IsMember({"chain", "random"}));
  bench_cmd->add_option("--edge-prob", be.bench.edge_prob, "Edge probability for random structure")->capture_default_str();
  bench_cmd->add_option("--samples-list", be.samples_list, "Comma-separated sample sizes")->capture_default_str();
  bench_cmd->add_option("--runs", be.bench.runs, "Runs per sample size")->capture_default_str()->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", be.out, "Summary table CSV")->required();
  add_train_flags(bench_cmd, be.flags);
  // Bench reuses --seed as the master seed.
  bench_cmd->get_option("--seed")->description("Master seed; run i uses seed + i");

  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  Manifest manifest;
  const auto start = Clock::now();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::string help;
    for (CLI::App* sub : app.get_subcommands()) help = sub->help();
    err << "error: " << e.what() << '\n';
    if (e.get_name() == "CallForHelp") {
      out << (help.empty() ? app.help() : help);
      return kOk;
    }
    return kUsageError;
  }

  int code = kOk;
  std::string error;
  try {
    if (gen_cmd->parsed()) {
      manifest.command = "gen-ggm";
      manifest.path = fs::path(gen.out) / "manifest.json";
      fs::create_directories(gen.out);
      cmd_gen_ggm(gen, manifest);
    } else if (train_cmd->parsed()) {
      manifest.command = "train";
      manifest.path = fs::path(tr.out) / "manifest.json";
      finalize_train_flags(tr.flags);
      fs::create_directories(tr.out);
      cmd_train(tr, manifest, out);
    } else if (eval_cmd->parsed()) {
      cmd_eval(ev, out);
    } else if (export_cmd->parsed()) {
      cmd_export(ex, out);
    } else if (schema_cmd->parsed()) {
      cmd_infer_schema(sc, out);
    } else if (bench_cmd->parsed()) {
      manifest.command = "bench";
      fs::path mp(be.out);
      mp.replace_extension(".manifest.json");
      manifest.path = mp;
      be.bench.master_seed = be.flags.cfg.seed;
      finalize_train_flags(be.flags);
      if (fs::path(be.out).has_parent_path()) fs::create_directories(fs::path(be.out).parent_path());
      code = cmd_bench(be, manifest, out);
    }
  } catch (const NumericalDivergence& e) {
    error = e.what();
    code = kDivergence;
  } catch (const DataError& e) {
    error = e.what();
    code = kDataError;
  } catch (const ShapeError& e) {
    error = e.what();
    code = kDataError;
  } catch (const UndefinedMetric& e) {
    error = e.what();
    code = kDataError;
  } catch (const InvalidArgument& e) {
    error = e.what();
    code = kUsageError;
  } catch (const fs::filesystem_error& e) {
    error = e.what();
    code = kDataError;
  } catch (const std::exception& e) {
    error = e.what();
    code = kFailure;
  }
  if (!error.empty()) err << "error: " << error << '\n';
  write_manifest(manifest, seconds_since(start), error, err);
  return code;
}

}  // namespace ngr::cli
