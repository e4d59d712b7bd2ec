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

#include <string>

#include "kchar/nn/params.hpp"

namespace kchar::nn {

struct GradCheckReport {
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
  std::string worst_segment;
  std::size_t worst_index = 0;
  std::size_t checked = 0;
  double tolerance = 0.0;

  bool passed() const noexcept { return max_rel_error < tolerance; }
};

/// D=5, L=7, N=3 with every width shrunk to 2-4 units.
ModelConfig tiny_config(Architecture arch);

/// Compares backprop gradients with central differences (step 1e-4) for every
/// parameter of `cfg`, in evaluation mode (dropout off), on a seeded random
/// batch. Relative error is |a - n| / max(|a|, |n|, 1e-6).
GradCheckReport grad_check(const ModelConfig& cfg, double tolerance = 1e-4,
                           unsigned long long seed = 7, int batch = 3, double step = 1e-4);

}  // namespace kchar::nn
