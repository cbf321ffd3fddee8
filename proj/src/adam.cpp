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

#include "ngr/adam.hpp"

#include <cmath>

namespace ngr {

namespace {

template <typename Param>
void update(Param& theta, const Param& g, Param& m, Param& v, const AdamState& s,
            double bias1, double bias2) {
  m = s.beta1 * m + (1.0 - s.beta1) * g;
  v = s.beta2 * v + (1.0 - s.beta2) * g.cwiseProduct(g);
  theta.array() -= s.learning_rate * (m.array() / bias1) /
                   ((v.array() / bias2).sqrt() + s.epsilon);
}

}  // namespace

AdamState AdamState::for_params(const MlpParams& mlp, double learning_rate) {
  AdamState s;
  s.first_moment = ParamSet::zeros_like(mlp);
  s.second_moment = ParamSet::zeros_like(mlp);
  s.learning_rate = learning_rate;
  return s;
}

void adam_step(MlpParams& mlp, const ParamSet& grads, AdamState& state) {
  if (!grads.shape_matches(mlp) || !state.first_moment.shape_matches(mlp) ||
      !state.second_moment.shape_matches(mlp)) {
    throw ShapeError("adam_step: gradient or moment shapes do not match parameters");
  }
  ++state.step_count;
  const double t = static_cast<double>(state.step_count);
  const double bias1 = 1.0 - std::pow(state.beta1, t);
  const double bias2 = 1.0 - std::pow(state.beta2, t);
  for (std::size_t l = 0; l < mlp.num_layers(); ++l) {
    update(mlp.weights[l], grads.weights[l], state.first_moment.weights[l],
           state.second_moment.weights[l], state, bias1, bias2);
    update(mlp.biases[l], grads.biases[l], state.first_moment.biases[l],
           state.second_moment.biases[l], state, bias1, bias2);
  }
}

}  // namespace ngr
