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

#include "ngr/common.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace ngr {

namespace {

std::string divergence_message(const std::string& term, long epoch) {
  std::string msg = "numerical divergence in " + term;
  if (epoch >= 0) msg += " at epoch " + std::to_string(epoch);
  return msg;
}

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

WarningSink& sink() {
  static WarningSink s;
  return s;
}

}  // namespace

NumericalDivergence::NumericalDivergence(std::string term, long epoch)
    : std::runtime_error(divergence_message(term, epoch)),
      term_(std::move(term)),
      epoch_(epoch) {}

void set_warning_sink(WarningSink s) {
  std::lock_guard lock(sink_mutex());
  sink() = std::move(s);
}

void warn(std::string_view message) {
  std::lock_guard lock(sink_mutex());
  if (sink()) {
    sink()(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

}  // namespace ngr
