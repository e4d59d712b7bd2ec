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

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "kchar/nn/init.hpp"
#include "kchar/trainer.hpp"
#include "kchar/utf8.hpp"

using namespace kchar;

namespace {

// Label 1 texts draw from 좋/최/재/감, label 0 from 별/싫/지/노; both mix in
// shared filler syllables so no single position gives the label away.
Examples synthetic_reviews(std::size_t n, unsigned seed) {
  const std::u32string pos = U"좋최재감", neg = U"별싫지노", filler = U"영화는그냥이다";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(3, 8), pick4(0, 3), pickf(0, 6), coin(0, 2);
  Examples out;
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    std::u32string s;
    const int k = len(rng);
    for (int j = 0; j < k; ++j) {
      if (coin(rng) == 0) s.push_back((label ? pos : neg)[static_cast<std::size_t>(pick4(rng))]);
      else s.push_back(filler[static_cast<std::size_t>(pickf(rng))]);
    }
    s.push_back((label ? pos : neg)[static_cast<std::size_t>(pick4(rng))]);
    out.push_back({utf8::encode(s), label});
  }
  return out;
}

TrainConfig small_config(int len = 12) {
  auto cfg = TrainConfig::defaults(Task::NSMC, SchemeKind::CharMultiHot, nn::Architecture::BiLSTM);
  cfg.max_len = len;
  cfg.batch_size = 16;
  cfg.max_epochs = 3;
  cfg.seed = 4;
  return cfg;
}

}  // namespace

TEST_SUITE("trainer") {
  TEST_CASE("metrics on a known confusion matrix") {
    const auto r = report_from_confusion({{2, 0, 0}, {0, 1, 1}, {1, 0, 1}});
    CHECK(r.total == 6);
    CHECK(r.accuracy == doctest::Approx(4.0 / 6.0));
    CHECK(r.macro_f1 == doctest::Approx(59.0 / 90.0));
    CHECK(r.weighted_f1 == doctest::Approx(59.0 / 90.0));
    CHECK(r.per_class[0].precision == doctest::Approx(2.0 / 3.0));
    CHECK(r.per_class[1].recall == doctest::Approx(0.5));
  }

  TEST_CASE("perfect and constant predictors") {
    const std::vector<int> labels{0, 1, 2, 2, 1, 0, 0};
    const auto perfect = score_predictions(labels, labels, 3);
    CHECK(perfect.accuracy == 1.0);
    CHECK(perfect.macro_f1 == 1.0);
    const std::vector<int> zeros(labels.size(), 0);
    const auto flat = score_predictions(labels, zeros, 3);
    CHECK(flat.accuracy == doctest::Approx(3.0 / 7.0));
    // Only class 0 scores: P = 3/7, R = 1, F1 = 0.6.
    CHECK(flat.macro_f1 == doctest::Approx(0.6 / 3.0));
    CHECK(flat.weighted_f1 == doctest::Approx(0.6 * 3.0 / 7.0));
    CHECK(flat.per_class[1].precision == 0.0);
    CHECK_THROWS(score_predictions(labels, std::vector<int>{0}, 3));
  }

  TEST_CASE("defaults") {
    const auto n = TrainConfig::defaults(Task::NSMC, SchemeKind::Jamo67, nn::Architecture::BiLSTM);
    CHECK(n.max_len == 420);
    CHECK(n.batch_size == 64);
    CHECK(!n.use_class_weights);
    const auto i = TrainConfig::defaults(Task::I3K4, SchemeKind::CharDense, nn::Architecture::BiLSTM_SA);
    CHECK(i.max_len == 80);
    CHECK(i.batch_size == 16);
    CHECK(i.use_class_weights);
    CHECK(default_seq_len(Task::I3K4, SchemeKind::Jamo118) == 240);
    CHECK(i.adam.learning_rate == 5e-4);
  }

  TEST_CASE("training is deterministic in the seed") {
    const auto data = synthetic_reviews(48, 1);
    const auto cfg = small_config();
    const Featurizer f(Encoder::multihot(), cfg.max_len);
    const auto split = split_validation(data, {0.25, cfg.seed});
    const auto a = train(cfg, f, split.train, split.validation);
    const auto b = train(cfg, f, split.train, split.validation);
    CHECK(a.history == b.history);
    CHECK(a.model.params().values() == b.model.params().values());
    auto other = cfg;
    other.seed = 5;
    CHECK(train(other, f, split.train, split.validation).model.params().values() !=
          a.model.params().values());
  }

  TEST_CASE("early stopping and model selection") {
    const auto data = synthetic_reviews(32, 2);
    auto cfg = small_config();
    cfg.max_epochs = 40;
    cfg.patience = 0;  // treated as one epoch of patience
    const Featurizer f(Encoder::multihot(), cfg.max_len);
    const auto split = split_validation(data, {0.25, 0});
    const auto r = train(cfg, f, split.train, split.validation);
    REQUIRE(!r.history.empty());
    double best = -1;
    int best_epoch = 0;
    for (const auto& e : r.history)
      if (e.val_accuracy > best) best = e.val_accuracy, best_epoch = e.epoch;
    CHECK(r.best_epoch == best_epoch);
    CHECK(r.best_val_accuracy == best);
    // Stopped right after the first non-improving epoch, or ran out of epochs.
    if (static_cast<int>(r.history.size()) < cfg.max_epochs)
      CHECK(r.history.back().val_accuracy <= best);
    if (r.history.size() >= 2) {
      for (std::size_t k = 1; k + 1 < r.history.size(); ++k) {
        double prior = -1;
        for (std::size_t j = 0; j < k; ++j) prior = std::max(prior, r.history[j].val_accuracy);
        CHECK(r.history[k].val_accuracy > prior);
      }
    }
    // The returned model is the selected epoch's.
    CHECK(evaluate(r.model, f, split.validation).accuracy == r.best_val_accuracy);
  }

  TEST_CASE("loss falls over the first full-batch steps") {
    const auto data = synthetic_reviews(32, 3);
    const auto cfg = small_config();
    const Featurizer f(Encoder::multihot(), cfg.max_len);
    const auto mcfg = model_config_for(cfg, f.dim());
    nn::Model model(mcfg, nn::init_params(mcfg, 1));
    std::vector<std::size_t> idx(data.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const auto x = pack_batch(f, data, idx);
    std::vector<int> labels;
    for (const auto& e : data) labels.push_back(e.label);
    nn::AdamState state;
    auto grads = model.params().zeros_like();
    double prev = 1e300;
    for (int step = 0; step < 10; ++step) {
      const double loss = model.loss_and_gradient(x, labels, {}, nn::Mode::Eval, nullptr, grads);
      CHECK(loss < prev);
      prev = loss;
      nn::adam_step(model.params(), grads, state, cfg.adam);
    }
  }

  TEST_CASE("overfits a small balanced set") {
    const auto data = synthetic_reviews(64, 7);
    auto cfg = small_config(10);
    cfg.max_epochs = 200;
    cfg.patience = 200;
    const Featurizer f(Encoder::multihot(), cfg.max_len);
    double acc = 0.0;
    int reached = 0;
    // Validating on the training set makes the selection criterion training accuracy.
    const auto r = train(cfg, f, data, data, [&](const EpochRecord& e) {
      if (!reached && e.val_accuracy >= 0.99) reached = e.epoch;
    });
    acc = evaluate(r.model, f, data).accuracy;
    INFO("reached at epoch " << reached);
    CHECK(acc >= 0.99);
    CHECK(reached > 0);
  }

  TEST_CASE("empty validation set selects on training accuracy") {
    const auto data = synthetic_reviews(16, 4);
    auto cfg = small_config();
    cfg.max_epochs = 2;
    const Featurizer f(Encoder::multihot(), cfg.max_len);
    const auto r = train(cfg, f, data, {});
    CHECK(r.best_val_accuracy == evaluate(r.model, f, data).accuracy);
    CHECK_THROWS_AS(train(cfg, f, {}, {}), std::invalid_argument);
  }

  TEST_CASE("matrix runner and results table") {
    MatrixTask nsmc{Task::NSMC, {synthetic_reviews(24, 5), synthetic_reviews(8, 6)}, {}};
    nsmc.resources.vocab = build_char_vocab(std::vector<std::string>{"좋최재감별싫지노영화는그냥이다"});
    nsmc.resources.vectors = random_dense_vectors(*nsmc.resources.vocab, 8, 3);
    MatrixSpec spec;
    spec.tasks.push_back(nsmc);
    spec.schemes = {SchemeKind::Jamo67, SchemeKind::CharOneHot, SchemeKind::CharDense};
    spec.archs = {nn::Architecture::BiLSTM, nn::Architecture::BiLSTM_SA};
    spec.customize = [](TrainConfig& c) {
      c.max_epochs = 1;
      c.max_len = is_jamo_level(c.scheme) ? 12 : 6;
    };
    const auto cells = run_matrix(spec);
    REQUIRE(cells.size() == 6);
    for (const auto& c : cells) {
      REQUIRE(c.report.has_value());
      CHECK(c.report->total == 8);
    }
    CHECK(cells[2].params ==
          nn::param_count({nn::Architecture::BiLSTM, 15, 6, 2}));
    std::ostringstream os;
    write_results_table(os, cells);
    std::istringstream lines(os.str());
    std::string header, row;
    std::getline(lines, header);
    CHECK(header == "task\tscheme\tarch\tparams\taccuracy\tmacro_f1\tweighted_f1");
    std::getline(lines, row);
    CHECK(row.rfind("nsmc\tjamo67\tbilstm\t", 0) == 0);
    CHECK(row.ends_with("\t-\t-"));

    spec.train = false;
    std::ostringstream counts;
    write_results_table(counts, run_matrix(spec));
    CHECK(counts.str().find("\t-\t-\t-\n") != std::string::npos);
  }

  TEST_CASE("history lines") {
    std::ostringstream os;
    write_history(os, {{1, 0.5, 0.75}, {2, 0.25, 1.0}});
    CHECK(os.str() ==
          "{\"epoch\":1,\"train_loss\":0.5,\"val_accuracy\":0.75}\n"
          "{\"epoch\":2,\"train_loss\":0.25,\"val_accuracy\":1.0}\n");
  }

  TEST_CASE("missing scheme resources") {
    CHECK_THROWS_AS(make_encoder(SchemeKind::CharOneHot, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_encoder(SchemeKind::CharDense, {}), std::invalid_argument);
    CHECK(make_encoder(SchemeKind::Jamo118, {}).dim() == 118);
  }
}
