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

#include <functional>
#include <optional>
#include <span>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kchar/datasets.hpp"
#include "kchar/encodings.hpp"
#include "kchar/featurizer.hpp"
#include "kchar/metrics.hpp"
#include "kchar/nn/adam.hpp"
#include "kchar/nn/model.hpp"

namespace kchar {

/// Sequence length used for each task and scheme family: jamo-level schemes
/// get three times the character budget.
int default_seq_len(Task task, SchemeKind scheme) noexcept;

struct TrainConfig {
  Task task = Task::NSMC;
  SchemeKind scheme = SchemeKind::CharMultiHot;
  nn::Architecture arch = nn::Architecture::BiLSTM;
  int max_len = 140;
  int batch_size = 64;
  nn::AdamConfig adam;
  int max_epochs = 50;
  int patience = 5;
  unsigned long long seed = 0;
  bool use_class_weights = false;
  double validation_fraction = 0.1;

  /// Task-specific defaults: batch 64 / 16, class weights for 3i4K only.
  static TrainConfig defaults(Task task, SchemeKind scheme, nn::Architecture arch);
};

std::ostream& operator<<(std::ostream& os, const TrainConfig& cfg);

/// Standard layer widths for a featurizer of dimension `input_dim`.
nn::ModelConfig model_config_for(const TrainConfig& cfg, int input_dim);

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;
  double val_accuracy = 0.0;

  friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

struct TrainResult {
  nn::Model model;
  std::vector<EpochRecord> history;
  int best_epoch = 0;
  double best_val_accuracy = 0.0;
};

/// Raised when a batch loss becomes NaN or infinite.
class TrainingError : public std::runtime_error {
 public:
  TrainingError(int epoch, int batch, double loss);
  int epoch;
  int batch;
  double loss;
};

/// Packs the examples at `indices` into a time-major batch.
nn::SequenceBatch pack_batch(const Featurizer& featurizer, const Examples& data,
                             std::span<const std::size_t> indices);

using EpochCallback = std::function<void(const EpochRecord&)>;

/// Mini-batch Adam training with per-epoch validation. Keeps the parameters of
/// the epoch with the highest validation accuracy (earliest on ties) and stops
/// after `patience` epochs without improvement (at least one). With an empty
/// validation set, selection uses training accuracy instead.
TrainResult train(const TrainConfig& cfg, const Featurizer& featurizer, const Examples& train,
                  const Examples& validation, const EpochCallback& on_epoch = {});

/// Inference-mode argmax predictions.
std::vector<int> predict(const nn::Model& model, const Featurizer& featurizer,
                         const Examples& data, int batch_size = 256);

EvalReport evaluate(const nn::Model& model, const Featurizer& featurizer, const Examples& data,
                    int batch_size = 256);

/// Vocabulary and vector table the character schemes draw on. Non-owning
/// encoders point into this, so it must outlive them.
struct SchemeResources {
  std::optional<CharVocabulary> vocab;
  std::optional<DenseVectorTable> vectors;
};

/// Encoder for `scheme`; throws std::invalid_argument if a needed resource is
/// missing.
Encoder make_encoder(SchemeKind scheme, const SchemeResources& res);

struct MatrixCell {
  Task task;
  SchemeKind scheme;
  nn::Architecture arch;
  std::size_t params = 0;
  std::optional<EvalReport> report;
  int best_epoch = 0;
};

struct MatrixTask {
  Task task;
  Corpus corpus;
  SchemeResources resources;
};

struct MatrixSpec {
  std::vector<MatrixTask> tasks;
  std::vector<SchemeKind> schemes;
  std::vector<nn::Architecture> archs;
  /// Applied on top of each cell's task defaults.
  std::function<void(TrainConfig&)> customize;
  bool train = true;  // false: parameter counts only
};

std::vector<MatrixCell> run_matrix(const MatrixSpec& spec,
                                   const std::function<void(const MatrixCell&)>& on_cell = {});

/// Tab-separated: task, scheme, arch, params, accuracy, macro_f1, weighted_f1.
/// F1 columns are "-" for NSMC and untrained cells print "-" for all scores.
void write_results_table(std::ostream& out, const std::vector<MatrixCell>& cells);

/// One JSON object per line.
void write_history(std::ostream& out, const std::vector<EpochRecord>& history);

}  // namespace kchar
