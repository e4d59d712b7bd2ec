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

#include "kchar/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <json.hpp>

#include "kchar/nn/init.hpp"

namespace kchar {

int default_seq_len(Task task, SchemeKind scheme) noexcept {
  const int chars = task == Task::NSMC ? 140 : 80;
  return is_jamo_level(scheme) ? 3 * chars : chars;
}

TrainConfig TrainConfig::defaults(Task task, SchemeKind scheme, nn::Architecture arch) {
  TrainConfig cfg;
  cfg.task = task;
  cfg.scheme = scheme;
  cfg.arch = arch;
  cfg.max_len = default_seq_len(task, scheme);
  cfg.batch_size = task == Task::NSMC ? 64 : 16;
  cfg.use_class_weights = task == Task::I3K4;
  return cfg;
}

std::ostream& operator<<(std::ostream& os, const TrainConfig& c) {
  return os << "task=" << task_name(c.task) << " scheme=" << scheme_name(c.scheme)
            << " arch=" << nn::architecture_name(c.arch) << " len=" << c.max_len
            << " batch=" << c.batch_size << " lr=" << c.adam.learning_rate
            << " epochs=" << c.max_epochs << " patience=" << c.patience << " seed=" << c.seed
            << " class_weights=" << (c.use_class_weights ? "on" : "off")
            << " val_fraction=" << c.validation_fraction;
}

nn::ModelConfig model_config_for(const TrainConfig& cfg, int input_dim) {
  nn::ModelConfig m;
  m.arch = cfg.arch;
  m.input_dim = input_dim;
  m.seq_len = cfg.max_len;
  m.num_classes = num_classes(cfg.task);
  return m;
}

TrainingError::TrainingError(int epoch, int batch, double loss)
    : std::runtime_error("non-finite loss " + std::to_string(loss) + " at epoch " +
                         std::to_string(epoch) + ", batch " + std::to_string(batch)),
      epoch(epoch),
      batch(batch),
      loss(loss) {}

nn::SequenceBatch pack_batch(const Featurizer& featurizer, const Examples& data,
                             std::span<const std::size_t> indices) {
  const int B = static_cast<int>(indices.size());
  nn::SequenceBatch batch(featurizer.max_len(), B, featurizer.dim());
  Eigen::MatrixXd seq(featurizer.max_len(), featurizer.dim());
  for (int b = 0; b < B; ++b) {
    featurizer.featurize_into(data[indices[static_cast<std::size_t>(b)]].text, seq);
    batch.set_sequence(b, seq);
  }
  return batch;
}

std::vector<int> predict(const nn::Model& model, const Featurizer& featurizer,
                         const Examples& data, int batch_size) {
  std::vector<int> out;
  out.reserve(data.size());
  std::vector<std::size_t> idx;
  for (std::size_t start = 0; start < data.size(); start += static_cast<std::size_t>(batch_size)) {
    const std::size_t end = std::min(data.size(), start + static_cast<std::size_t>(batch_size));
    idx.resize(end - start);
    std::iota(idx.begin(), idx.end(), start);
    const auto probs = model.forward(pack_batch(featurizer, data, idx));
    for (Eigen::Index b = 0; b < probs.rows(); ++b) {
      Eigen::Index arg = 0;
      probs.row(b).maxCoeff(&arg);
      out.push_back(static_cast<int>(arg));
    }
  }
  return out;
}

EvalReport evaluate(const nn::Model& model, const Featurizer& featurizer, const Examples& data,
                    int batch_size) {
  const auto preds = predict(model, featurizer, data, batch_size);
  std::vector<int> labels;
  labels.reserve(data.size());
  for (const auto& e : data) labels.push_back(e.label);
  return score_predictions(labels, preds, model.config().num_classes);
}

TrainResult train(const TrainConfig& cfg, const Featurizer& featurizer, const Examples& train_set,
                  const Examples& validation, const EpochCallback& on_epoch) {
  if (train_set.empty()) throw std::invalid_argument("training set is empty");
  if (cfg.batch_size <= 0) throw std::invalid_argument("batch size must be positive");
  if (cfg.max_epochs <= 0) throw std::invalid_argument("max_epochs must be positive");
  if (featurizer.max_len() != cfg.max_len)
    throw std::invalid_argument("featurizer length does not match training config");

  const auto model_cfg = model_config_for(cfg, featurizer.dim());
  std::vector<double> weights;
  if (cfg.use_class_weights) weights = class_weights(train_set, model_cfg.num_classes);

  std::mt19937_64 rng(cfg.seed);
  nn::Model model(model_cfg, nn::init_params(model_cfg, cfg.seed));
  TrainResult result{model, {}, 0, -1.0};

  nn::AdamState adam;
  nn::ModelParams grads = model.params().zeros_like();
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<int> labels;
  const Examples& selection_set = validation.empty() ? train_set : validation;
  const int stop_after = std::max(cfg.patience, 1);
  int bad_epochs = 0;

  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    std::size_t seen = 0;
    int batch_no = 0;
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
      const std::span<const std::size_t> idx(order.data() + start, end - start);
      labels.clear();
      for (auto i : idx) labels.push_back(train_set[i].label);
      const auto batch = pack_batch(featurizer, train_set, idx);
      const double loss =
          model.loss_and_gradient(batch, labels, weights, nn::Mode::Train, &rng, grads);
      ++batch_no;
      if (!std::isfinite(loss)) throw TrainingError(epoch, batch_no, loss);
      nn::adam_step(model.params(), grads, adam, cfg.adam);
      loss_sum += loss * static_cast<double>(idx.size());
      seen += idx.size();
    }

    EpochRecord rec{epoch, loss_sum / static_cast<double>(seen),
                    evaluate(model, featurizer, selection_set).accuracy};
    result.history.push_back(rec);
    if (on_epoch) on_epoch(rec);

    if (rec.val_accuracy > result.best_val_accuracy) {
      result.best_val_accuracy = rec.val_accuracy;
      result.best_epoch = epoch;
      result.model.params() = model.params();
      bad_epochs = 0;
    } else if (++bad_epochs >= stop_after) {
      break;
    }
  }
  return result;
}

Encoder make_encoder(SchemeKind scheme, const SchemeResources& res) {
  switch (scheme) {
    case SchemeKind::Jamo67: return Encoder::jamo67();
    case SchemeKind::Jamo118: return Encoder::jamo118();
    case SchemeKind::CharMultiHot: return Encoder::multihot();
    case SchemeKind::CharOneHot:
      if (!res.vocab) throw std::invalid_argument("char-onehot needs a vocabulary");
      return Encoder::char_onehot(*res.vocab);
    case SchemeKind::CharDense:
      if (!res.vectors) throw std::invalid_argument("char-dense needs a vector table");
      return Encoder::char_dense(*res.vectors);
  }
  throw std::invalid_argument("unknown scheme");
}

namespace {

int scheme_dim(SchemeKind scheme, const SchemeResources& res) {
  switch (scheme) {
    case SchemeKind::Jamo67: return kJamo67Dim;
    case SchemeKind::Jamo118: return kJamo118Dim;
    case SchemeKind::CharMultiHot: return kMultiHotDim;
    default: return make_encoder(scheme, res).dim();
  }
}

}  // namespace

std::vector<MatrixCell> run_matrix(const MatrixSpec& spec,
                                   const std::function<void(const MatrixCell&)>& on_cell) {
  std::vector<MatrixCell> cells;
  for (const auto& mt : spec.tasks) {
    for (auto scheme : spec.schemes) {
      for (auto arch : spec.archs) {
        auto cfg = TrainConfig::defaults(mt.task, scheme, arch);
        if (spec.customize) spec.customize(cfg);
        MatrixCell cell{mt.task, scheme, arch, 0, std::nullopt, 0};
        cell.params = nn::param_count(model_config_for(cfg, scheme_dim(scheme, mt.resources)));
        if (spec.train) {
          const Featurizer featurizer(make_encoder(scheme, mt.resources), cfg.max_len);
          const auto split = split_validation(mt.corpus.train, {cfg.validation_fraction, cfg.seed});
          auto result = train(cfg, featurizer, split.train, split.validation);
          cell.best_epoch = result.best_epoch;
          cell.report = evaluate(result.model, featurizer, mt.corpus.test);
        }
        if (on_cell) on_cell(cell);
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

void write_results_table(std::ostream& out, const std::vector<MatrixCell>& cells) {
  out << "task\tscheme\tarch\tparams\taccuracy\tmacro_f1\tweighted_f1\n";
  for (const auto& c : cells) {
    out << task_name(c.task) << '\t' << scheme_name(c.scheme) << '\t'
        << nn::architecture_name(c.arch) << '\t' << c.params << '\t';
    if (!c.report) {
      out << "-\t-\t-\n";
      continue;
    }
    out << c.report->accuracy << '\t';
    if (c.task == Task::NSMC)
      out << "-\t-\n";
    else
      out << c.report->macro_f1 << '\t' << c.report->weighted_f1 << '\n';
  }
}

void write_history(std::ostream& out, const std::vector<EpochRecord>& history) {
  for (const auto& r : history)
    out << nlohmann::json{{"epoch", r.epoch}, {"train_loss", r.train_loss},
                          {"val_accuracy", r.val_accuracy}}
               .dump()
        << '\n';
}

}  // namespace kchar
