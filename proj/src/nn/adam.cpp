// Copyright 2026 The kchar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kchar/nn/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace kchar::nn {

void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state,
               const AdamConfig& cfg) {
  const std::size_t n = params.size();
  if (grads.size() != n) throw std::invalid_argument("adam_step: gradient size mismatch");
  if (state.m.size() != n) {
    state.m.assign(n, 0.0);
    state.v.assign(n, 0.0);
    state.step = 0;
  }
  ++state.step;
  const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  auto& theta = params.values();
  const auto& g = grads.values();
  for (std::size_t i = 0; i < n; ++i) {
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * g[i];
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
    const double m_hat = state.m[i] / c1;
    const double v_hat = state.v[i] / c2;
    theta[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
  }
}

}  // namespace kchar::nn
