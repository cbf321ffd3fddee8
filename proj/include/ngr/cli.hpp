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

#ifndef NGR_CLI_HPP_
#define NGR_CLI_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ngr/trainer.hpp"

namespace ngr::cli {

inline constexpr const char* kToolVersion = "ngr 0.1.0";

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsageError = 2,
  kDataError = 3,
  kDivergence = 4,
};

/// Runs the command line (args excludes the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BenchOptions {
  std::size_t nodes = 10;
  std::string structure = "chain";
  double edge_prob = 0.2;
  std::vector<std::size_t> samples{100, 500, 1000};
  int runs = 5;
  /// Run i uses seed s = master_seed + i for the GGM; samples and training
  /// use seeds derived from s.
  std::uint64_t master_seed = 0;
  TrainConfig train;
  /// Worker threads; results are assembled in (M, run) order regardless.
  std::size_t threads = 1;
};

struct BenchRun {
  std::size_t samples = 0;
  int run = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  double auc = 0.0;
  double aupr = 0.0;
  double seconds = 0.0;
  std::string error;
};

struct BenchSummary {
  std::size_t samples = 0;
  int runs = 0;
  int succeeded = 0;
  double auc_mean = 0.0;
  double auc_std = 0.0;
  double aupr_mean = 0.0;
  double aupr_std = 0.0;
};

struct BenchResult {
  std::vector<BenchRun> runs;
  std::vector<BenchSummary> summary;
};

/// Generate -> train -> evaluate for every (M, run) pair.
BenchResult run_bench(const BenchOptions& options);

/// samples,runs,succeeded,auc_mean,auc_std,aupr_mean,aupr_std (no timings).
void write_bench_table(std::ostream& out, const BenchResult& result);

/// Parses "100,500,1000". Throws InvalidArgument.
std::vector<std::size_t> parse_size_list(const std::string& text);

}  // namespace ngr::cli

#endif  // NGR_CLI_HPP_
