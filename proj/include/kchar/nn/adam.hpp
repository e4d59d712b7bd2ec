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

#pragma once

#include <vector>

#include "kchar/nn/params.hpp"

namespace kchar::nn {

struct AdamConfig {
  double learning_rate = 5e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-7;
};

/// First/second moment estimates plus the step counter.
struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  long step = 0;
};

/// Increments `state.step` and applies one bias-corrected Adam update.
void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state,
               const AdamConfig& cfg = {});

}  // namespace kchar::nn
