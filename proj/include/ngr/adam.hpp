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

#ifndef NGR_ADAM_HPP_
#define NGR_ADAM_HPP_

#include <cstdint>

#include "ngr/mlp.hpp"

namespace ngr {

struct AdamState {
  ParamSet first_moment;
  ParamSet second_moment;
  std::uint64_t step_count = 0;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static AdamState for_params(const MlpParams& mlp, double learning_rate = 1e-3);
};

/// One bias-corrected Adam update of `mlp` in place.
void adam_step(MlpParams& mlp, const ParamSet& grads, AdamState& state);

}  // namespace ngr

#endif  // NGR_ADAM_HPP_
