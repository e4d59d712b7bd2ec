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

// One PASS/FAIL/SKIP line per acceptance criterion.
//
//   kchar_acceptance [core|corpus|all]
//
// The corpus group needs NSMC_DIR (ratings_train.txt, ratings_test.txt) and
// optionally NSMC_VECTORS (100-dim text vectors). Exit status: 1 if anything
// failed, 77 if the selected group was skipped entirely, 0 otherwise.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kchar/datasets.hpp"
#include "kchar/encodings.hpp"
#include "kchar/featurizer.hpp"
#include "kchar/hangul.hpp"
#include "kchar/nn/gradcheck.hpp"
#include "kchar/nn/init.hpp"
#include "kchar/nn/model.hpp"
#include "kchar/trainer.hpp"
#include "kchar/utf8.hpp"

using namespace kchar;
namespace fs = std::filesystem;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  std::string group;
  std::function<Outcome()> run;
};

Outcome pass(std::string d) { return {Status::Pass, std::move(d)}; }
Outcome fail(std::string d) { return {Status::Fail, std::move(d)}; }
Outcome skip(std::string d) { return {Status::Skip, std::move(d)}; }

template <typename... Args>
std::string str(const Args&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

std::optional<fs::path> nsmc_dir() {
  const char* dir = std::getenv("NSMC_DIR");
  if (!dir || !*dir) return std::nullopt;
  return fs::path(dir);
}

Examples read_file(const fs::path& p) {
  return load_nsmc(p, p).train;
}

// ---- 1. parameter counts --------------------------------------------------

Outcome param_counts() {
  struct Row {
    int dim, len;
    std::size_t bilstm, sa;
  };
  const Row rows[] = {{67, 420, 34178, 297846},
                      {118, 420, 47234, 310902},
                      {2534, 140, 665730, 772318},
                      {100, 140, 42626, 149214},
                      {67, 140, 34178, 140766}};
  int ok = 0;
  std::string bad;
  for (const auto& r : rows) {
    for (auto arch : {nn::Architecture::BiLSTM, nn::Architecture::BiLSTM_SA}) {
      nn::ModelConfig c;
      c.arch = arch;
      c.input_dim = r.dim;
      c.seq_len = r.len;
      c.num_classes = 2;
      const auto want = arch == nn::Architecture::BiLSTM ? r.bilstm : r.sa;
      const auto got = nn::param_count(c);
      const auto laid = nn::ModelParams::layout(c).size();
      if (got == want && laid == want) ++ok;
      else bad += str(" D=", r.dim, ' ', nn::architecture_name(arch), " got ", got, "/", laid,
                      " want ", want, ';');
    }
  }
  return ok == 10 ? pass("10/10 expected counts reproduced exactly")
                  : fail(str(ok, "/10 match;", bad));
}

// ---- 2. Hangul round trip and BMP partition -------------------------------

Outcome hangul_round_trip() {
  int round_trips = 0;
  for (char32_t cp = 0xAC00; cp <= 0xD7A3; ++cp)
    if (compose(decompose(cp)) == cp) ++round_trips;
  long syllables = 0, standalone = 0, spaces = 0, other = 0, disagreements = 0;
  for (char32_t cp = 0; cp <= 0xFFFF; ++cp) {
    const auto k = classify_codepoint(cp).kind;
    // Range oracle, written out independently of the classifier.
    const auto want = (cp >= 0xAC00 && cp <= 0xD7A3)   ? CodepointKind::PrecomposedSyllable
                      : (cp >= 0x3131 && cp <= 0x3163) ? CodepointKind::StandaloneJamo
                      : cp == 0x20                     ? CodepointKind::Space
                                                       : CodepointKind::Other;
    if (k != want) ++disagreements;
    switch (k) {
      case CodepointKind::PrecomposedSyllable: ++syllables; break;
      case CodepointKind::StandaloneJamo: ++standalone; break;
      case CodepointKind::Space: ++spaces; break;
      case CodepointKind::Other: ++other; break;
    }
  }
  const std::string d = str(round_trips, "/11172 round trips; partition ", syllables, " + ",
                            standalone, " + ", spaces, " + ", other, " = ",
                            syllables + standalone + spaces + other);
  const bool ok = round_trips == 11172 && syllables == 11172 && standalone == 51 && spaces == 1 &&
                  syllables + standalone + spaces + other == 0x10000 && disagreements == 0;
  return ok ? pass(d) : fail(d + str("; disagreements ", disagreements));
}

// ---- 3. encoding dimensions and sparsity ----------------------------------

Outcome encoding_suite() {
  std::vector<std::string> problems;
  auto expect = [&](bool cond, const std::string& what) {
    if (!cond) problems.push_back(what);
  };

  CharVocabulary vocab;
  for (char32_t cp = 0xAC00; cp < 0xAC00 + 2534; ++cp) vocab.add(cp);
  const auto table = random_dense_vectors(vocab, 100, 1);
  expect(Encoder::jamo67().dim() == 67, "jamo67 dim");
  expect(Encoder::jamo118().dim() == 118, "jamo118 dim");
  expect(Encoder::char_onehot(vocab).dim() == 2534, "one-hot dim != |V|");
  expect(Encoder::char_dense(table).dim() == 100, "dense dim != width");
  expect(Encoder::multihot().dim() == 67, "multihot dim");

  long onehot_bad = 0, multihot_bad = 0, standalone_bad = 0, spread_bad = 0;
  const Featurizer f67(Encoder::jamo67(), 3);
  const Featurizer f118(Encoder::jamo118(), 3);
  for (char32_t cp = 0xAC00; cp <= 0xD7A3; ++cp) {
    const auto oh = encode_char_onehot(cp, vocab);
    if ((oh.array() != 0).count() > 1 || oh.sum() > 1) ++onehot_bad;
    const auto mh = encode_char_multihot(cp);
    const auto ones = (mh.array() == 1).count();
    if (ones < 2 || ones > 3 || (mh.array() != 0).count() != ones) ++multihot_bad;

    const bool has_final = decompose(cp).jong != 0;
    const auto text = utf8::encode(cp);
    for (const auto* f : {&f67, &f118}) {
      const auto m = f->featurize(text);
      const bool rows_ok = m.occupancy == 3 && m.rows() == 3 && m.data.row(0).sum() == 1 &&
                           m.data.row(1).sum() == 1 && m.data.row(2).isZero() == !has_final;
      if (!rows_ok) ++spread_bad;
    }
  }
  for (int k = 0; k < hangul::kNumStandalone; ++k) {
    const auto mh = encode_char_multihot(standalone_letter(k));
    if ((mh.array() != 0).count() != 1 || mh.sum() != 1) ++standalone_bad;
  }
  expect(onehot_bad == 0, str(onehot_bad, " one-hot vectors with >1 one"));
  expect(multihot_bad == 0, str(multihot_bad, " syllable multi-hot vectors outside 2-3 ones"));
  expect(standalone_bad == 0, str(standalone_bad, " standalone multi-hot vectors without exactly 1 one"));
  expect(spread_bad == 0, str(spread_bad, " jamo spreads wrong"));

  if (!problems.empty()) {
    std::string d;
    for (const auto& p : problems) d += p + "; ";
    return fail(d);
  }
  return pass("dims 67/118/2534/100/67; sparsity checked on 11172 syllables and 51 letters");
}

// ---- 4. gradient checks ---------------------------------------------------

Outcome gradient_checks() {
  std::string d;
  bool ok = true;
  for (auto arch : {nn::Architecture::BiLSTM, nn::Architecture::BiLSTM_SA}) {
    const auto r = nn::grad_check(nn::tiny_config(arch));
    d += str(nn::architecture_name(arch), " max rel err ", r.max_rel_error, " over ", r.checked,
             " params; ");
    ok = ok && r.passed();
  }
  return ok ? pass(d) : fail(d);
}

// ---- 5. overfit a 64-example NSMC subset ----------------------------------

Outcome overfit_nsmc() {
  const auto dir = nsmc_dir();
  if (!dir) return skip("NSMC_DIR not set; corpus not available");
  const auto all = read_file(*dir / "ratings_train.txt");
  Examples subset;
  int per_class[2] = {0, 0};
  for (const auto& e : all)
    if (per_class[e.label] < 32) {
      subset.push_back(e);
      ++per_class[e.label];
    }
  if (subset.size() != 64) return fail("could not draw 32 examples per class");

  auto cfg = TrainConfig::defaults(Task::NSMC, SchemeKind::CharMultiHot, nn::Architecture::BiLSTM);
  cfg.max_epochs = 200;
  cfg.patience = 200;
  cfg.seed = 1;
  const Featurizer f(Encoder::multihot(), cfg.max_len);
  int reached = 0;
  const auto r = train(cfg, f, subset, subset, [&](const EpochRecord& e) {
    if (!reached && e.val_accuracy >= 0.99) reached = e.epoch;
  });
  const double acc = evaluate(r.model, f, subset).accuracy;
  const auto d = str("training accuracy ", acc, ", >=0.99 first at epoch ", reached);
  return acc >= 0.99 && reached > 0 ? pass(d) : fail(d);
}

// ---- 6. scaled-down learning signal ---------------------------------------

Outcome learning_signal() {
  const auto dir = nsmc_dir();
  if (!dir) return skip("NSMC_DIR not set; corpus not available");
  auto train_all = read_file(*dir / "ratings_train.txt");
  auto test_all = read_file(*dir / "ratings_test.txt");
  std::mt19937_64 rng(2024);
  std::shuffle(train_all.begin(), train_all.end(), rng);
  std::shuffle(test_all.begin(), test_all.end(), rng);
  train_all.resize(std::min<std::size_t>(train_all.size(), 10000));
  test_all.resize(std::min<std::size_t>(test_all.size(), 5000));

  DenseVectorTable vectors;
  std::string source;
  if (const char* v = std::getenv("NSMC_VECTORS"); v && *v) {
    vectors = load_dense_vectors(v);
    source = "vectors from NSMC_VECTORS";
  } else {
    std::vector<std::string> texts;
    for (const auto& e : train_all) texts.push_back(e.text);
    vectors = random_dense_vectors(build_char_vocab(texts), 100, 7, 0.1);
    source = "seeded random 100-dim vectors";
  }

  auto cfg = TrainConfig::defaults(Task::NSMC, SchemeKind::CharDense, nn::Architecture::BiLSTM);
  cfg.max_epochs = 20;
  cfg.seed = 3;
  const Featurizer f(Encoder::char_dense(vectors), cfg.max_len);
  const auto split = split_validation(train_all, {0.1, cfg.seed});
  const auto r = train(cfg, f, split.train, split.validation);
  const double acc = evaluate(r.model, f, test_all).accuracy;
  const auto d = str("test accuracy ", acc, " on ", test_all.size(), " (train ", split.train.size(),
                     ", val ", split.validation.size(), ", best epoch ", r.best_epoch, ", ", source,
                     ")");
  return acc >= 0.70 ? pass(d) : fail(d);
}

// ---- 7. protocol checks ---------------------------------------------------

Outcome protocol_synthetic() {
  std::vector<std::string> problems;
  Examples n150k(150000);
  for (std::size_t i = 0; i < n150k.size(); ++i) n150k[i].label = static_cast<int>(i % 2);
  const auto s = split_validation(n150k, {0.1, 0});
  if (s.train.size() != 135000 || s.validation.size() != 15000)
    problems.push_back(str("split ", s.train.size(), "/", s.validation.size()));

  nn::ModelConfig c;
  c.arch = nn::Architecture::BiLSTM_SA;
  c.input_dim = 67;
  c.seq_len = 140;
  c.num_classes = 2;
  const nn::Model m(c, nn::init_params(c, 5));
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    nn::SequenceBatch x(140, 8, 67);
    for (Eigen::Index i = 0; i < x.data.size(); ++i) x.data.data()[i] = normal(rng);
    const auto a = m.attention(x);
    for (Eigen::Index b = 0; b < a.rows(); ++b) worst = std::max(worst, std::abs(a.row(b).sum() - 1.0));
  }
  if (worst > 1e-9) problems.push_back(str("attention sum off by ", worst));

  // Balanced toy data: weights are all one and change nothing.
  Examples toy;
  for (int i = 0; i < 8; ++i) toy.push_back({i % 2 ? "좋아" : "별로", i % 2});
  const auto w = class_weights(toy, 2);
  const Featurizer f(Encoder::multihot(), 140);
  std::vector<std::size_t> idx(toy.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const auto x = pack_batch(f, toy, idx);
  std::vector<int> labels;
  for (const auto& e : toy) labels.push_back(e.label);
  auto g1 = m.params().zeros_like(), g2 = m.params().zeros_like();
  nn::ModelConfig c2 = c;
  const nn::Model m2(c2, m.params());
  const double l1 = m2.loss_and_gradient(x, labels, {}, nn::Mode::Eval, nullptr, g1);
  const double l2 = m2.loss_and_gradient(x, labels, w, nn::Mode::Eval, nullptr, g2);
  if (w != std::vector<double>{1.0, 1.0} || l1 != l2 || g1.values() != g2.values())
    problems.push_back("class weighting changed a balanced batch");

  if (!problems.empty()) {
    std::string d;
    for (const auto& p : problems) d += p + "; ";
    return fail(d);
  }
  return pass(str("135000/15000 split of N=150000; max attention sum error ", worst,
                  "; balanced weights [1, 1] leave loss and gradient unchanged"));
}

Outcome protocol_loader() {
  const auto dir = nsmc_dir();
  if (!dir) return skip("NSMC_DIR not set; corpus not available");
  const auto corpus = load_nsmc(*dir / "ratings_train.txt", *dir / "ratings_test.txt");
  const auto s = split_validation(corpus.train, {0.1, 0});
  const auto d = str("loaded ", corpus.train.size(), "/", corpus.test.size(), ", split ",
                     s.train.size(), "/", s.validation.size());
  const bool ok = corpus.train.size() == 150000 && corpus.test.size() == 50000 &&
                  s.train.size() == 135000 && s.validation.size() == 15000;
  return ok ? pass(d) : fail(d);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string group = argc > 1 ? argv[1] : "all";
  if (group != "core" && group != "corpus" && group != "all") {
    std::cerr << "usage: kchar_acceptance [core|corpus|all]\n";
    return 2;
  }

  // Runtime budgets in seconds; 0 means none.
  struct Entry {
    Criterion c;
    double budget;
  };
  const std::vector<Entry> entries = {
      {{1, "parameter counts", "core", param_counts}, 1.0},
      {{2, "hangul round trip and partition", "core", hangul_round_trip}, 5.0},
      {{3, "encoding dimensions and sparsity", "core", encoding_suite}, 0.0},
      {{4, "gradient checks", "core", gradient_checks}, 30.0},
      {{5, "overfit 64 NSMC examples", "corpus", overfit_nsmc}, 0.0},
      {{6, "10k NSMC learning signal", "corpus", learning_signal}, 0.0},
      {{7, "protocol: split, attention, class weights", "core", protocol_synthetic}, 0.0},
      {{7, "protocol: NSMC loader counts", "corpus", protocol_loader}, 0.0},
  };

  int passed = 0, failed = 0, skipped = 0;
  for (const auto& [c, budget] : entries) {
    if (group != "all" && c.group != group) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.status == Status::Pass && budget > 0 && secs >= budget) {
      o.status = Status::Fail;
      o.detail += str("; over the ", budget, "s budget");
    }
    const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Fail ? "FAIL" : "SKIP";
    std::cout << tag << " [" << c.id << "] " << c.name << ": " << o.detail << " ("
              << std::fixed << std::setprecision(2) << secs << "s)" << std::defaultfloat << std::endl;
    (o.status == Status::Pass ? passed : o.status == Status::Fail ? failed : skipped)++;
  }
  std::cout << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
  if (failed > 0) return 1;
  if (passed == 0 && skipped > 0) return 77;
  return 0;
}
