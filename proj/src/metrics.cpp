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

#include "kchar/metrics.hpp"

#include <stdexcept>

namespace kchar {

EvalReport report_from_confusion(const ConfusionMatrix& confusion) {
  const std::size_t k = confusion.size();
  for (const auto& row : confusion)
    if (row.size() != k) throw std::invalid_argument("confusion matrix must be square");

  EvalReport r;
  r.confusion = confusion;
  r.per_class.resize(k);
  long correct = 0;
  std::vector<long> predicted(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      r.total += confusion[i][j];
      predicted[j] += confusion[i][j];
      r.per_class[i].support += confusion[i][j];
    }
    correct += confusion[i][i];
  }
  r.accuracy = r.total ? static_cast<double>(correct) / static_cast<double>(r.total) : 0.0;

  for (std::size_t c = 0; c < k; ++c) {
    auto& s = r.per_class[c];
    const double tp = static_cast<double>(confusion[c][c]);
    s.precision = predicted[c] ? tp / static_cast<double>(predicted[c]) : 0.0;
    s.recall = s.support ? tp / static_cast<double>(s.support) : 0.0;
    s.f1 = (s.precision + s.recall) > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
    r.macro_f1 += s.f1;
    r.weighted_f1 += s.f1 * static_cast<double>(s.support);
  }
  if (k) r.macro_f1 /= static_cast<double>(k);
  if (r.total) r.weighted_f1 /= static_cast<double>(r.total);
  return r;
}

EvalReport score_predictions(std::span<const int> labels, std::span<const int> predictions,
                             int num_classes) {
  if (labels.size() != predictions.size())
    throw std::invalid_argument("label and prediction counts differ");
  ConfusionMatrix m(static_cast<std::size_t>(num_classes),
                    std::vector<long>(static_cast<std::size_t>(num_classes), 0));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes || predictions[i] < 0 ||
        predictions[i] >= num_classes)
      throw std::invalid_argument("class id out of range");
    ++m[static_cast<std::size_t>(labels[i])][static_cast<std::size_t>(predictions[i])];
  }
  return report_from_confusion(m);
}

}  // namespace kchar
