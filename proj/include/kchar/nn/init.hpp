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

#include "kchar/nn/params.hpp"

namespace kchar::nn {

/// Glorot-uniform kernels, orthogonal recurrent gate blocks, zero biases with
/// the LSTM forget-gate bias at one. Deterministic in `seed`.
ModelParams init_params(const ModelConfig& cfg, unsigned long long seed);

}  // namespace kchar::nn
