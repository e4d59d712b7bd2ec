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

#include <span>
#include <vector>

namespace kchar {

/// Rows are true classes, columns predicted classes.
using ConfusionMatrix = std::vector<std::vector<long>>;

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long support = 0;
};

struct EvalReport {
  ConfusionMatrix confusion;
  std::vector<ClassScores> per_class;
  long total = 0;
  double accuracy = 0.0;
  /// Unweighted mean of per-class F1.
  double macro_f1 = 0.0;
  /// Support-weighted mean of per-class F1.
  double weighted_f1 = 0.0;
};

/// Precision (recall) of a class with no predictions (no examples) is 0, and
/// so is F1 when both are 0.
EvalReport report_from_confusion(const ConfusionMatrix& confusion);

EvalReport score_predictions(std::span<const int> labels, std::span<const int> predictions,
                             int num_classes);

}  // namespace kchar
