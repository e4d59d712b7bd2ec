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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kchar/datasets.hpp"
#include "kchar/encodings.hpp"
#include "kchar/featurizer.hpp"
#include "kchar/hangul.hpp"
#include "kchar/nn/checkpoint.hpp"
#include "kchar/nn/gradcheck.hpp"
#include "kchar/nn/params.hpp"
#include "kchar/trainer.hpp"
#include "kchar/utf8.hpp"

namespace fs = std::filesystem;
using namespace kchar;

namespace {

// Input widths assumed for the resource-backed schemes when no file is given.
constexpr int kDefaultVocabSize = 2534;
constexpr int kDefaultVectorWidth = 100;

struct Options {
  std::string task = "nsmc";
  std::string scheme = "multihot";
  std::string arch = "bilstm";
  std::string train_file, test_file, vectors, vocab, out, checkpoint, config;
  std::string text;
  int len = 0;  // 0: task default
  int batch = 0;
  int epochs = 50;
  int patience = 5;
  int random_vectors = 0;
  int dim = 0;
  double val_fraction = 0.1;
  double tolerance = 1e-4;
  unsigned long long seed = 0;
  bool params_only = false;
  std::vector<std::string> tasks, schemes, archs;
};

std::string with_commas(std::size_t n) {
  std::string s = std::to_string(n);
  for (int i = static_cast<int>(s.size()) - 3; i > 0; i -= 3) s.insert(static_cast<std::size_t>(i), ",");
  return s;
}

std::string letter(char32_t cp) { return utf8::encode(cp); }

void print_config(const std::string& cmd, const std::vector<std::pair<std::string, std::string>>& kv) {
  std::cerr << "config: command=" << cmd;
  for (const auto& [k, v] : kv) std::cerr << ' ' << k << '=' << (v.empty() ? "-" : v);
  std::cerr << '\n';
}

void print_config(const std::string& cmd, const TrainConfig& cfg) {
  std::cerr << "config: command=" << cmd << ' ' << cfg << '\n';
}

std::vector<std::string> texts_of(const Examples& ex) {
  std::vector<std::string> out;
  out.reserve(ex.size());
  for (const auto& e : ex) out.push_back(e.text);
  return out;
}

void save_vectors(const fs::path& path, const DenseVectorTable& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << table.size() << ' ' << table.width() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& key : table.keys()) {
    out << key;
    for (double v : *table.find(key)) out << ' ' << v;
    out << '\n';
  }
}

/// Loads or builds what `scheme` needs. `texts` backs corpus-derived
/// vocabularies when no file is given; `built` reports what was derived here.
SchemeResources resolve_resources(SchemeKind scheme, const Options& o,
                                  const std::vector<std::string>& texts, bool* built = nullptr) {
  SchemeResources res;
  if (built) *built = false;
  if (scheme == SchemeKind::CharOneHot) {
    if (!o.vocab.empty()) res.vocab = CharVocabulary::load(o.vocab);
    else if (!o.vectors.empty()) res.vocab = vocab_from_vectors(load_dense_vectors(o.vectors));
    else {
      res.vocab = build_char_vocab(texts);
      if (built) *built = true;
    }
  } else if (scheme == SchemeKind::CharDense) {
    if (!o.vectors.empty()) {
      res.vectors = load_dense_vectors(o.vectors);
    } else if (o.random_vectors > 0) {
      const auto vocab = o.vocab.empty() ? build_char_vocab(texts) : CharVocabulary::load(o.vocab);
      res.vectors = random_dense_vectors(vocab, o.random_vectors, o.seed, 0.1);
      if (built) *built = true;
    } else {
      throw std::invalid_argument("char-dense needs --vectors FILE or --random-vectors WIDTH");
    }
  }
  return res;
}

int resolved_len(const Options& o, Task task, SchemeKind scheme) {
  if (o.len < 0) throw std::invalid_argument("--len must be positive");
  return o.len > 0 ? o.len : default_seq_len(task, scheme);
}

TrainConfig train_config(const Options& o, Task task, SchemeKind scheme, nn::Architecture arch) {
  auto cfg = TrainConfig::defaults(task, scheme, arch);
  cfg.max_len = resolved_len(o, task, scheme);
  if (o.batch > 0) cfg.batch_size = o.batch;
  cfg.max_epochs = o.epochs;
  cfg.patience = o.patience;
  cfg.seed = o.seed;
  cfg.validation_fraction = o.val_fraction;
  return cfg;
}

// ---- subcommands ----------------------------------------------------------

int cmd_decompose(const Options& o) {
  print_config("decompose", {{"text", o.text}});
  for (char32_t cp : utf8::decode(o.text)) {
    const auto cls = classify_codepoint(cp);
    std::cout << (cp == U' ' ? std::string("' '") : letter(cp)) << ": " << to_string(cls.kind);
    switch (cls.kind) {
      case CodepointKind::PrecomposedSyllable: {
        const auto t = decompose(cp);
        std::cout << " cho=" << letter(hangul::kChoLetters[static_cast<std::size_t>(t.cho)])
                  << " jung=" << letter(hangul::kJungLetters[static_cast<std::size_t>(t.jung)])
                  << " jong="
                  << (t.jong == 0 ? std::string("(none)")
                                  : letter(hangul::kJongLetters[static_cast<std::size_t>(t.jong - 1)]));
        break;
      }
      case CodepointKind::StandaloneJamo: {
        const auto pos = standalone_slot(cls.standalone_index);
        static const char* slots[] = {"first", "second", "third"};
        std::cout << " index=" << cls.standalone_index << " slot=" << slots[static_cast<int>(pos.slot)]
                  << ':' << pos.index;
        break;
      }
      case CodepointKind::Space: std::cout << " (one zero row)"; break;
      case CodepointKind::Other: std::cout << " (ignored by featurizer)"; break;
    }
    std::cout << '\n';
  }
  return 0;
}

int cmd_encode(const Options& o) {
  const auto task = parse_task(o.task);
  const auto scheme = parse_scheme(o.scheme);
  const int len = resolved_len(o, task, scheme);
  print_config("encode", {{"scheme", scheme_name(scheme)},
                          {"len", std::to_string(len)},
                          {"vectors", o.vectors},
                          {"vocab", o.vocab},
                          {"seed", std::to_string(o.seed)}});
  const auto res = resolve_resources(scheme, o, {o.text});
  const Featurizer f(make_encoder(scheme, res), len);
  const auto m = f.featurize(o.text);
  std::cerr << "rows=" << m.rows() << " cols=" << m.cols() << " occupied=" << m.occupancy << '\n';
  if (o.out.empty()) {
    dump_matrix(std::cout, m);
  } else {
    std::ofstream out(o.out);
    if (!out) throw std::runtime_error("cannot write " + o.out);
    dump_matrix(out, m);
  }
  return 0;
}

int cmd_vocab(const Options& o) {
  print_config("vocab", {{"input", o.text}, {"task", o.train_file.empty() ? "" : o.task},
                         {"train-file", o.train_file}, {"vectors", o.vectors}, {"out", o.out}});
  CharVocabulary vocab;
  if (!o.vectors.empty()) {
    vocab = vocab_from_vectors(load_dense_vectors(o.vectors));
  } else if (!o.train_file.empty()) {
    std::ifstream in(o.train_file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + o.train_file);
    const auto task = parse_task(o.task);
    vocab = build_char_vocab(texts_of(task == Task::NSMC ? read_nsmc(in) : read_3i4k(in)));
  } else if (!o.text.empty()) {
    std::ifstream in(o.text, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + o.text);
    vocab = build_char_vocab(in);
  } else {
    throw std::invalid_argument("vocab needs an input file, --train-file or --vectors");
  }
  std::cout << "size " << vocab.size() << '\n';
  if (!o.out.empty()) vocab.save(o.out);
  return 0;
}

int cmd_params(const Options& o) {
  const auto task = parse_task(o.task);
  const auto scheme = parse_scheme(o.scheme);
  const auto arch = nn::parse_architecture(o.arch);
  int dim = o.dim;
  if (dim <= 0) {
    switch (scheme) {
      case SchemeKind::Jamo67: dim = kJamo67Dim; break;
      case SchemeKind::Jamo118: dim = kJamo118Dim; break;
      case SchemeKind::CharMultiHot: dim = kMultiHotDim; break;
      case SchemeKind::CharOneHot:
        dim = !o.vocab.empty() ? CharVocabulary::load(o.vocab).size()
              : !o.vectors.empty() ? vocab_from_vectors(load_dense_vectors(o.vectors)).size()
                                   : kDefaultVocabSize;
        break;
      case SchemeKind::CharDense:
        dim = !o.vectors.empty() ? load_dense_vectors(o.vectors).width() : kDefaultVectorWidth;
        break;
    }
  }
  const auto cfg = model_config_for(train_config(o, task, scheme, arch), dim);
  print_config("params", {{"task", task_name(task)}, {"scheme", scheme_name(scheme)},
                          {"arch", nn::architecture_name(arch)}, {"dim", std::to_string(dim)},
                          {"len", std::to_string(cfg.seq_len)}});
  std::cout << task_name(task) << ' ' << scheme_name(scheme) << ' ' << nn::architecture_name(arch)
            << ": " << with_commas(nn::param_count(cfg)) << " parameters\n";
  return 0;
}

int cmd_gradcheck(const Options& o) {
  std::vector<nn::Architecture> archs;
  if (o.archs.empty()) archs = {nn::Architecture::BiLSTM, nn::Architecture::BiLSTM_SA};
  for (const auto& a : o.archs) archs.push_back(nn::parse_architecture(a));
  print_config("gradcheck", {{"seed", std::to_string(o.seed)}, {"tolerance", std::to_string(o.tolerance)}});
  bool ok = true;
  for (auto arch : archs) {
    const auto r = nn::grad_check(nn::tiny_config(arch), o.tolerance, o.seed);
    std::cout << nn::architecture_name(arch) << ": max relative error " << std::scientific
              << std::setprecision(3) << r.max_rel_error << std::defaultfloat << " over " << r.checked
              << " parameters (worst " << r.worst_segment << '[' << r.worst_index << "]) "
              << (r.passed() ? "PASS" : "FAIL") << '\n';
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}

void print_report(std::ostream& os, const EvalReport& r, Task task) {
  os << "accuracy " << std::fixed << std::setprecision(4) << r.accuracy;
  if (task == Task::I3K4) os << " macro_f1 " << r.macro_f1 << " weighted_f1 " << r.weighted_f1;
  os << std::defaultfloat << " (n=" << r.total << ")\n";
}

int cmd_train(const Options& o) {
  const auto task = parse_task(o.task);
  const auto scheme = parse_scheme(o.scheme);
  const auto arch = nn::parse_architecture(o.arch);
  const auto cfg = train_config(o, task, scheme, arch);
  print_config("train", cfg);
  if (o.train_file.empty()) throw std::invalid_argument("train needs --train-file");

  std::ifstream in(o.train_file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + o.train_file);
  const auto examples = task == Task::NSMC ? read_nsmc(in) : read_3i4k(in);
  bool built = false;
  const auto res = resolve_resources(scheme, o, texts_of(examples), &built);
  const Featurizer f(make_encoder(scheme, res), cfg.max_len);
  const auto split = split_validation(examples, {cfg.validation_fraction, cfg.seed});
  std::cerr << "train=" << split.train.size() << " validation=" << split.validation.size()
            << " dim=" << f.dim() << " params="
            << nn::param_count(model_config_for(cfg, f.dim())) << '\n';

  const auto result = train(cfg, f, split.train, split.validation, [](const EpochRecord& e) {
    std::cout << "epoch " << e.epoch << " loss " << std::setprecision(6) << e.train_loss
              << " val_accuracy " << e.val_accuracy << std::endl;
  });
  std::cout << "best epoch " << result.best_epoch << " val_accuracy " << result.best_val_accuracy
            << '\n';

  if (!o.out.empty()) {
    const fs::path dir(o.out);
    fs::create_directories(dir);
    nn::save_checkpoint(dir / "checkpoint.json", {result.model.config(), cfg.seed, result.model.params()});
    std::ofstream hist(dir / "history.jsonl");
    write_history(hist, result.history);
    if (built && res.vocab) res.vocab->save(dir / "vocab.txt");
    if (built && res.vectors) save_vectors(dir / "vectors.txt", *res.vectors);
  }
  if (!o.test_file.empty()) {
    std::ifstream tin(o.test_file, std::ios::binary);
    if (!tin) throw std::runtime_error("cannot open " + o.test_file);
    const auto test = task == Task::NSMC ? read_nsmc(tin) : read_3i4k(tin);
    std::cout << "test ";
    print_report(std::cout, evaluate(result.model, f, test), task);
  }
  return 0;
}

int cmd_eval(const Options& o) {
  const auto task = parse_task(o.task);
  const auto scheme = parse_scheme(o.scheme);
  if (o.checkpoint.empty() || o.test_file.empty())
    throw std::invalid_argument("eval needs --checkpoint and --test-file");
  const auto ckpt = nn::load_checkpoint(o.checkpoint);
  print_config("eval", {{"task", task_name(task)}, {"scheme", scheme_name(scheme)},
                        {"arch", nn::architecture_name(ckpt.config.arch)},
                        {"len", std::to_string(ckpt.config.seq_len)},
                        {"checkpoint", o.checkpoint}, {"test-file", o.test_file}});
  if (ckpt.config.num_classes != num_classes(task))
    throw std::invalid_argument("checkpoint has " + std::to_string(ckpt.config.num_classes) +
                                " classes, task " + task_name(task) + " has " +
                                std::to_string(num_classes(task)));
  std::ifstream tin(o.test_file, std::ios::binary);
  if (!tin) throw std::runtime_error("cannot open " + o.test_file);
  const auto test = task == Task::NSMC ? read_nsmc(tin) : read_3i4k(tin);
  if (scheme == SchemeKind::CharOneHot && o.vocab.empty() && o.vectors.empty())
    throw std::invalid_argument("char-onehot evaluation needs the training --vocab");
  if (scheme == SchemeKind::CharDense && o.vectors.empty())
    throw std::invalid_argument("char-dense evaluation needs the training --vectors");
  const auto res = resolve_resources(scheme, o, {});
  const Featurizer f(make_encoder(scheme, res), ckpt.config.seq_len);
  if (f.dim() != ckpt.config.input_dim)
    throw std::invalid_argument("scheme dimension " + std::to_string(f.dim()) +
                                " does not match checkpoint input " +
                                std::to_string(ckpt.config.input_dim));
  const nn::Model model(ckpt.config, ckpt.params);
  print_report(std::cout, evaluate(model, f, test), task);
  return 0;
}

/// Optional JSON file for matrix runs; flags given on the command line win.
void apply_matrix_config(Options& o, const CLI::App& sub) {
  std::ifstream in(o.config);
  if (!in) throw std::runtime_error("cannot open " + o.config);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(o.config + ": " + e.what());
  }
  auto take = [&](const char* key, const char* flag, auto& field) {
    if (j.contains(key) && sub.count(flag) == 0) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  take("tasks", "--task", o.tasks);
  take("schemes", "--scheme", o.schemes);
  take("archs", "--arch", o.archs);
  take("train_file", "--train-file", o.train_file);
  take("test_file", "--test-file", o.test_file);
  take("vectors", "--vectors", o.vectors);
  take("vocab", "--vocab", o.vocab);
  take("epochs", "--epochs", o.epochs);
  take("patience", "--patience", o.patience);
  take("batch", "--batch", o.batch);
  take("seed", "--seed", o.seed);
  take("random_vectors", "--random-vectors", o.random_vectors);
  take("out", "--out", o.out);
}

int cmd_matrix(Options o, const CLI::App& sub) {
  if (!o.config.empty()) apply_matrix_config(o, sub);
  if (o.tasks.empty()) o.tasks = {"nsmc"};
  if (o.schemes.empty()) o.schemes = {"jamo67", "jamo118", "char-onehot", "char-dense", "multihot"};
  if (o.archs.empty()) o.archs = {"bilstm", "bilstm-sa"};

  MatrixSpec spec;
  spec.train = !o.params_only;
  for (const auto& s : o.schemes) spec.schemes.push_back(parse_scheme(s));
  for (const auto& a : o.archs) spec.archs.push_back(nn::parse_architecture(a));
  if (spec.train && o.tasks.size() > 1)
    throw std::invalid_argument("training runs take one --task (one corpus) at a time");

  std::ostringstream resolved;
  for (const auto& t : o.tasks) resolved << t << ' ';
  print_config("matrix", {{"tasks", resolved.str()}, {"schemes", std::to_string(spec.schemes.size())},
                          {"archs", std::to_string(spec.archs.size())},
                          {"train", spec.train ? "yes" : "no"}, {"epochs", std::to_string(o.epochs)},
                          {"seed", std::to_string(o.seed)}, {"out", o.out}});

  for (const auto& t : o.tasks) {
    MatrixTask mt{parse_task(t), {}, {}};
    if (spec.train) {
      if (o.train_file.empty() || o.test_file.empty())
        throw std::invalid_argument("matrix training needs --train-file and --test-file");
      mt.corpus = load_corpus(mt.task, o.train_file, o.test_file);
    }
    const auto texts = texts_of(mt.corpus.train);
    for (auto s : spec.schemes) {
      if (s == SchemeKind::CharOneHot) {
        if (spec.train || !o.vocab.empty() || !o.vectors.empty())
          mt.resources.vocab = resolve_resources(s, o, texts).vocab;
        else
          mt.resources.vocab = std::nullopt;
      }
      if (s == SchemeKind::CharDense && (spec.train || !o.vectors.empty() || o.random_vectors > 0))
        mt.resources.vectors = resolve_resources(s, o, texts).vectors;
    }
    spec.tasks.push_back(std::move(mt));
  }
  const Options captured = o;
  spec.customize = [captured](TrainConfig& c) {
    if (captured.len > 0) c.max_len = captured.len;
    if (captured.batch > 0) c.batch_size = captured.batch;
    c.max_epochs = captured.epochs;
    c.patience = captured.patience;
    c.seed = captured.seed;
  };

  // Parameter-only runs fall back to the default widths when a resource
  // is absent.
  std::vector<MatrixCell> cells;
  if (!spec.train) {
    for (const auto& mt : spec.tasks)
      for (auto s : spec.schemes)
        for (auto a : spec.archs) {
          auto cfg = TrainConfig::defaults(mt.task, s, a);
          spec.customize(cfg);
          int dim = 0;
          if (s == SchemeKind::CharOneHot)
            dim = mt.resources.vocab ? mt.resources.vocab->size() : kDefaultVocabSize;
          else if (s == SchemeKind::CharDense)
            dim = mt.resources.vectors ? mt.resources.vectors->width() : kDefaultVectorWidth;
          else
            dim = make_encoder(s, {}).dim();
          cells.push_back({mt.task, s, a, nn::param_count(model_config_for(cfg, dim)), std::nullopt, 0});
        }
  } else {
    cells = run_matrix(spec, [](const MatrixCell& c) {
      std::cerr << "done " << task_name(c.task) << ' ' << scheme_name(c.scheme) << ' '
                << nn::architecture_name(c.arch) << " accuracy " << c.report->accuracy << '\n';
    });
  }
  if (o.out.empty()) {
    write_results_table(std::cout, cells);
  } else {
    std::ofstream out(o.out);
    if (!out) throw std::runtime_error("cannot write " + o.out);
    write_results_table(out, cells);
    std::cout << "wrote " << cells.size() << " rows to " << o.out << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Korean character-encoding classifiers: featurize, train, evaluate"};
  app.require_subcommand(1);
  Options o;

  auto add_model_flags = [&o](CLI::App* s) {
    s->add_option("--task", o.task, "nsmc or 3i4k")->capture_default_str();
    s->add_option("--scheme", o.scheme, "jamo67, jamo118, char-onehot, char-dense, multihot")
        ->capture_default_str();
    s->add_option("--arch", o.arch, "bilstm or bilstm-sa")->capture_default_str();
  };
  auto add_resource_flags = [&o](CLI::App* s) {
    s->add_option("--vectors", o.vectors, "text vector file for char-dense / char-onehot");
    s->add_option("--vocab", o.vocab, "vocabulary file, one syllable per line");
    s->add_option("--random-vectors", o.random_vectors,
                  "seeded random vectors of this width when no --vectors file is given");
  };
  auto add_train_flags = [&o](CLI::App* s) {
    s->add_option("--len", o.len, "sequence length (default: task and scheme default)");
    s->add_option("--batch", o.batch, "batch size (default: 64 nsmc, 16 3i4k)");
    s->add_option("--epochs", o.epochs, "maximum epochs")->capture_default_str();
    s->add_option("--patience", o.patience, "early-stopping patience")->capture_default_str();
    s->add_option("--seed", o.seed, "random seed")->capture_default_str();
  };

  auto* dec = app.add_subcommand("decompose", "classify and decompose each symbol of TEXT");
  dec->add_option("text", o.text, "UTF-8 text")->required();

  auto* enc = app.add_subcommand("encode", "print the feature matrix of TEXT");
  enc->add_option("text", o.text, "UTF-8 text")->required();
  enc->add_option("--task", o.task, "task whose default length applies")->capture_default_str();
  enc->add_option("--scheme", o.scheme, "encoding scheme")->capture_default_str();
  enc->add_option("--len", o.len, "sequence length");
  enc->add_option("--seed", o.seed, "seed for --random-vectors")->capture_default_str();
  enc->add_option("--out", o.out, "write the matrix here instead of stdout");
  add_resource_flags(enc);

  auto* voc = app.add_subcommand("vocab", "build a syllable vocabulary");
  voc->add_option("input", o.text, "raw UTF-8 text file");
  voc->add_option("--train-file", o.train_file, "corpus file (parsed per --task)");
  voc->add_option("--task", o.task, "corpus format for --train-file")->capture_default_str();
  voc->add_option("--vectors", o.vectors, "take the syllable keys of this vector file");
  voc->add_option("--out", o.out, "write the vocabulary here");

  auto* par = app.add_subcommand("params", "print the trainable parameter count");
  add_model_flags(par);
  par->add_option("--len", o.len, "sequence length");
  par->add_option("--dim", o.dim, "override the input dimension");
  par->add_option("--vectors", o.vectors, "vector file fixing the dense width");
  par->add_option("--vocab", o.vocab, "vocabulary fixing the one-hot width");

  auto* gc = app.add_subcommand("gradcheck", "compare analytic and numerical gradients");
  gc->add_option("--arch", o.archs, "architectures (default: both)");
  gc->add_option("--seed", o.seed, "random seed")->capture_default_str();
  gc->add_option("--tolerance", o.tolerance, "relative error bound")->capture_default_str();

  auto* tr = app.add_subcommand("train", "train one model");
  add_model_flags(tr);
  add_resource_flags(tr);
  add_train_flags(tr);
  tr->add_option("--train-file", o.train_file, "training corpus")->required();
  tr->add_option("--test-file", o.test_file, "optional test corpus, scored after training");
  tr->add_option("--val-fraction", o.val_fraction, "held-out share of the training file")
      ->capture_default_str();
  tr->add_option("--out", o.out, "directory for checkpoint.json, history.jsonl and resources");

  auto* ev = app.add_subcommand("eval", "score a checkpoint on a test corpus");
  ev->add_option("--task", o.task, "nsmc or 3i4k")->capture_default_str();
  ev->add_option("--scheme", o.scheme, "scheme the checkpoint was trained with")->capture_default_str();
  ev->add_option("--checkpoint", o.checkpoint, "checkpoint.json from train")->required();
  ev->add_option("--test-file", o.test_file, "test corpus")->required();
  ev->add_option("--vectors", o.vectors, "vector file used in training");
  ev->add_option("--vocab", o.vocab, "vocabulary used in training");

  auto* mx = app.add_subcommand("matrix", "train (or count) every task x scheme x arch cell");
  mx->add_option("--task", o.tasks, "tasks (default nsmc)");
  mx->add_option("--scheme", o.schemes, "schemes (default: all five)");
  mx->add_option("--arch", o.archs, "architectures (default: both)");
  mx->add_option("--train-file", o.train_file, "training corpus");
  mx->add_option("--test-file", o.test_file, "test corpus");
  add_resource_flags(mx);
  add_train_flags(mx);
  mx->add_option("--out", o.out, "results table path (default stdout)");
  mx->add_option("--config", o.config, "JSON file with the same keys as the flags");
  mx->add_flag("--params-only", o.params_only, "skip training, report parameter counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*dec) return cmd_decompose(o);
    if (*enc) return cmd_encode(o);
    if (*voc) return cmd_vocab(o);
    if (*par) return cmd_params(o);
    if (*gc) return cmd_gradcheck(o);
    if (*tr) return cmd_train(o);
    if (*ev) return cmd_eval(o);
    if (*mx) return cmd_matrix(o, *mx);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
