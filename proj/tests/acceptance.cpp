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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "ngr/cli.hpp"
#include "ngr/ggm.hpp"
#include "ngr/io.hpp"
#include "ngr/metrics.hpp"
#include "ngr/trainer.hpp"
#include "oracles.hpp"

using namespace ngr;
namespace fs = std::filesystem;

namespace {

// Tolerances and thresholds.
constexpr double kBenchMinAuc1000 = 0.85;
constexpr double kBenchMinAupr1000 = 0.50;
constexpr double kGradientMaxRelError = 1e-4;
constexpr double kGcpnTolerance = 1e-12;
constexpr double kSelfDependencyMaxRatio = 1e-3;
constexpr double kMetricTolerance = 1e-12;
constexpr double kCovarianceRelTolerance = 0.05;
constexpr double kCrossGroupMaxFraction = 1e-3;

int failures = 0;

void report(bool pass, const std::string& name, const std::string& detail) {
  std::printf("%s  %-32s %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Row {
  double samples, auc, aupr;
};

std::vector<Row> parse_table(const std::string& text) {
  std::vector<Row> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> v;
    std::istringstream fields(line);
    std::string f;
    while (std::getline(fields, f, ',')) v.push_back(std::stod(f));
    rows.push_back({v[0], v[3], v[5]});
  }
  return rows;
}

std::vector<std::string> table1_args(const fs::path& out) {
  return {"bench", "--nodes", "10", "--structure", "chain", "--samples-list", "100,500,1000",
          "--runs", "5", "--hidden", "100", "--lambda", "1", "--gamma", "1", "--epochs", "2000",
          "--seed", "0", "--out", out.string()};
}

// Runs the chain benchmark twice through the command line. The first run
// feeds the table criterion and both feed the determinism criterion.
void bench_criteria(const fs::path& root) {
  std::ostringstream sink;
  std::ostringstream err;
  const fs::path a = root / "a" / "table.csv";
  const fs::path b = root / "b" / "table.csv";
  const int code_a = cli::run(table1_args(a), sink, err);
  if (code_a != 0) {
    report(false, "chain benchmark (D=10, 5 runs)", "bench exited with " + std::to_string(code_a) + ": " + err.str());
  } else {
    const std::vector<Row> rows = parse_table(slurp(a));
    std::string detail;
    for (const Row& r : rows) {
      detail += "M=" + fmt("%.0f", r.samples) + " auc=" + fmt("%.3f", r.auc) + " aupr=" + fmt("%.3f", r.aupr) + "; ";
    }
    bool increasing = rows.size() == 3;
    for (std::size_t k = 1; increasing && k < rows.size(); ++k) {
      increasing = rows[k].auc > rows[k - 1].auc && rows[k].aupr > rows[k - 1].aupr;
    }
    const bool a_ok = rows.size() == 3 && rows[2].auc >= kBenchMinAuc1000;
    const bool c_ok = rows.size() == 3 && rows[2].aupr >= kBenchMinAupr1000;
    detail += std::string("(a) auc@1000>=0.85 ") + (a_ok ? "ok" : "no") +
              ", (b) strictly increasing " + (increasing ? "ok" : "no") +
              ", (c) aupr@1000>=0.50 " + (c_ok ? "ok" : "no");
    report(a_ok && increasing && c_ok, "chain benchmark (D=10, 5 runs)", detail);
  }

  const int code_b = cli::run(table1_args(b), sink, err);
  const bool same = code_a == 0 && code_b == 0 && slurp(a) == slurp(b) &&
                    slurp(root / "a" / "table.runs.csv").size() > 0;
  report(same, "bench determinism", same ? "tables byte-identical" : "tables differ or bench failed");
}

void gradient_criterion() {
  Rng rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = oracle::uniform_size(rng, 2, 6);
    const MlpParams m = oracle::random_mlp(rng, {d, oracle::uniform_size(rng, 1, 12), d});
    PenaltyWeights w;
    w.lambda = rng.uniform(0.0, 5.0);
    w.gamma = rng.uniform(0.0, 5.0);
    w.log_scaling = trial % 2 == 1;
    const Matrix batch = oracle::normal_matrix(rng, oracle::uniform_size(rng, 1, 10), d);
    worst = std::max(worst, oracle::check_gradient(m, batch, w, PenaltyMasks::unimodal(d)).max_relative_error);
  }
  report(worst < kGradientMaxRelError, "gradient vs finite differences",
         "50 configs, max rel err " + fmt("%.2e", worst));
}

void gcpn_criterion() {
  Rng rng(7);
  double worst = 0.0;
  int iff_violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = static_cast<Eigen::Index>(oracle::uniform_size(rng, 1, 8));
    Matrix p = Matrix::Zero(n, n);
    Matrix g = Matrix::Zero(n, n);
    const double density = rng.uniform();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (rng.uniform() < density) p(i, j) = rng.uniform(0.0, 5.0);
        g(i, j) = rng.uniform() < 0.6 ? 1.0 : 0.0;
      }
    }
    const double value = gcpn(p, GraphMask{MaskKind::kTargetGraph, g});
    worst = std::max(worst, std::abs(value - oracle::gcpn_loop(p, g)));
    const bool inside = ((p.array() != 0.0) && (g.array() == 0.0)).count() == 0;
    if ((value == 0.0) != inside) ++iff_violations;
  }
  report(worst <= kGcpnTolerance && iff_violations == 0, "graph-constrained path norm",
         "500 cases, max |diff| " + fmt("%.1e", worst) + ", support violations " + std::to_string(iff_violations));
}

void independence_criterion() {
  Rng rng(99);
  int changed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = oracle::uniform_size(rng, 2, 8);
    MlpParams m = oracle::random_mlp(rng, {d, oracle::uniform_size(rng, 2, 16), oracle::uniform_size(rng, 2, 16), d});
    const auto in = static_cast<std::size_t>(rng.below(d));
    const auto out = static_cast<std::size_t>(rng.below(d));
    oracle::cut_paths(m, in, out, rng);
    const auto o = static_cast<Eigen::Index>(out);
    if (path_matrix(m).view()(static_cast<Eigen::Index>(in), o) != 0.0) {
      ++changed;
      continue;
    }
    Vector x = oracle::normal_matrix(rng, d, 1).col(0);
    const double before = forward(m, x)(o);
    x(static_cast<Eigen::Index>(in)) += rng.uniform(-100.0, 100.0);
    if (forward(m, x)(o) != before) ++changed;
  }
  report(changed == 0, "zero path implies independence",
         "100 perturbations, outputs changed " + std::to_string(changed));
}

void self_dependency_criterion() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Dataset data = standardize(sample(chain_precision(10, seed), 500, derive_seed(seed, 1)));
    TrainConfig cfg;
    cfg.lambda = 1e6;
    cfg.gamma = 0.0;
    cfg.seed = seed;
    const TrainResult r = train(data, cfg);
    const Matrix sym = symmetrize(path_matrix(r.mlp).view());
    worst = std::max(worst, sym.diagonal().sum() / sym.sum());
  }
  report(worst < kSelfDependencyMaxRatio, "self-dependency suppression",
         "lambda=1e6 gamma=0, 3 seeds, max diag/total " + fmt("%.2e", worst));
}

void metric_criterion() {
  Rng rng(5);
  double worst_auc = 0.0;
  double worst_aupr = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> scores(10);
    std::vector<int> labels(10);
    do {
      for (std::size_t k = 0; k < 10; ++k) {
        scores[k] = rng.coin() ? static_cast<double>(rng.below(5)) / 4.0 : rng.uniform();
        labels[k] = rng.uniform() < 0.4 ? 1 : 0;
      }
    } while (std::count(labels.begin(), labels.end(), 1) == 0 || std::count(labels.begin(), labels.end(), 0) == 0);
    const EdgeScoreSet s = oracle::make_score_set(scores, labels);
    worst_auc = std::max(worst_auc, std::abs(auc(s) - oracle::mann_whitney(scores, labels)));
    worst_aupr = std::max(worst_aupr, std::abs(aupr(s) - oracle::threshold_sweep_ap(scores, labels)));
  }
  report(worst_auc <= kMetricTolerance && worst_aupr <= kMetricTolerance, "metric oracles",
         "200 instances, auc diff " + fmt("%.1e", worst_auc) + ", aupr diff " + fmt("%.1e", worst_aupr));
}

void sampling_criterion() {
  const GgmSpec g = chain_precision(4, 2026);
  const std::size_t m = 100000;
  const Dataset data = sample(g, m, 17);
  const Vector mean = data.values.colwise().mean();
  const Matrix centered = data.values.rowwise() - mean.transpose();
  const Matrix emp = centered.transpose() * centered / static_cast<double>(m);
  const Matrix truth = g.precision.inverse();
  const double worst = ((emp - truth).array() / truth.array()).abs().maxCoeff();
  report(worst < kCovarianceRelTolerance, "sampling covariance",
         "D=4, M=1e5, max entrywise rel err " + fmt("%.4f", worst));
}

void multimodal_criterion() {
  int first = 0;
  double worst_cross = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(derive_seed(seed, 40));
    RawTable t;
    t.header = {"a", "b", "c"};
    for (int r = 0; r < 400; ++r) {
      const double a = rng.normal();
      const char cat[2] = {static_cast<char>('p' + rng.below(3)), '\0'};
      t.rows.push_back({io::format_double(a), io::format_double(2.0 * a + 0.3 * rng.normal()), cat});
    }
    const FeatureSchema schema = build_schema(t);
    TrainConfig cfg;
    cfg.lambda = 1.0;
    cfg.gamma = 0.1;
    cfg.eta = 100.0;
    cfg.beta = 100.0;
    cfg.seed = seed;
    const TrainResult r = train(encode(t, schema), cfg, schema);
    if (!r.graph.edges.empty() && r.graph.edges[0].i == 0 && r.graph.edges[0].j == 1) ++first;
    const std::size_t last = r.mlp.num_layers();
    const Matrix enc = path_matrix(r.mlp, 0, 1).view();
    const Matrix dec = path_matrix(r.mlp, last - 1, last).view();
    worst_cross = std::max(worst_cross, gcpn(enc, *r.masks.encoder) / enc.sum());
    worst_cross = std::max(worst_cross, gcpn(dec, *r.masks.decoder) / dec.sum());
  }
  report(first == 5 && worst_cross < kCrossGroupMaxFraction, "mixed-type hypernode recovery",
         "planted edge first in " + std::to_string(first) + "/5, max cross-group fraction " + fmt("%.2e", worst_cross));
}

}  // namespace

int main() {
  set_warning_sink([](std::string_view) {});
  const fs::path root = fs::temp_directory_path() / "ngr_acceptance";
  fs::remove_all(root);
  gradient_criterion();
  gcpn_criterion();
  independence_criterion();
  metric_criterion();
  sampling_criterion();
  self_dependency_criterion();
  multimodal_criterion();
  bench_criteria(root);
  fs::remove_all(root);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
