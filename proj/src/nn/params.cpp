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

#include "kchar/nn/params.hpp"

#include <stdexcept>

namespace kchar::nn {

std::string architecture_name(Architecture arch) {
  return arch == Architecture::BiLSTM ? "bilstm" : "bilstm-sa";
}

Architecture parse_architecture(std::string_view name) {
  if (name == "bilstm") return Architecture::BiLSTM;
  if (name == "bilstm-sa") return Architecture::BiLSTM_SA;
  throw std::invalid_argument("unknown architecture '" + std::string(name) +
                              "' (expected bilstm or bilstm-sa)");
}

void ModelConfig::validate() const {
  auto positive = [](int v, const char* what) {
    if (v <= 0) throw std::invalid_argument(std::string("model config: ") + what + " must be positive");
  };
  positive(input_dim, "input_dim");
  positive(seq_len, "seq_len");
  positive(num_classes, "num_classes");
  positive(hidden, "hidden");
  if (arch == Architecture::BiLSTM) {
    positive(fc_width, "fc_width");
  } else {
    positive(attention_dim, "attention_dim");
    positive(aux_dim, "aux_dim");
    positive(sa_fc_width, "sa_fc_width");
    if (!(dropout >= 0.0 && dropout < 1.0))
      throw std::invalid_argument("model config: dropout must lie in [0, 1)");
  }
}

std::size_t lstm_param_count(int input_dim, int hidden) {
  const std::size_t h = static_cast<std::size_t>(hidden);
  return 4 * (h * (static_cast<std::size_t>(input_dim) + h) + h);
}

namespace {

std::size_t dense_count(int in, int out) {
  return static_cast<std::size_t>(in) * static_cast<std::size_t>(out) + static_cast<std::size_t>(out);
}

}  // namespace

std::size_t param_count(const ModelConfig& cfg) {
  const std::size_t recurrent = 2 * lstm_param_count(cfg.input_dim, cfg.hidden);
  const int pooled = 2 * cfg.hidden;
  if (cfg.arch == Architecture::BiLSTM)
    return recurrent + dense_count(pooled, cfg.fc_width) + dense_count(cfg.fc_width, cfg.num_classes);
  return recurrent + dense_count(pooled, cfg.attention_dim) +
         dense_count(cfg.aux_dim, cfg.attention_dim) +
         dense_count(cfg.attention_dim, cfg.attention_dim) + dense_count(cfg.seq_len, cfg.seq_len) +
         dense_count(pooled, cfg.sa_fc_width) + dense_count(cfg.sa_fc_width, cfg.sa_fc_width) +
         dense_count(cfg.sa_fc_width, cfg.num_classes);
}

ModelParams ModelParams::layout(const ModelConfig& cfg) {
  cfg.validate();
  ModelParams p;
  const int h = cfg.hidden;
  for (const char* dir : {"lstm_fwd", "lstm_bwd"}) {
    const std::string d(dir);
    p.add_segment(d + ".kernel", cfg.input_dim, 4 * h);
    p.add_segment(d + ".recurrent", h, 4 * h);
    p.add_segment(d + ".bias", 1, 4 * h);
  }
  auto dense = [&p](const std::string& name, int in, int out) {
    p.add_segment(name + ".kernel", in, out);
    p.add_segment(name + ".bias", 1, out);
  };
  if (cfg.arch == Architecture::BiLSTM) {
    dense("fc", 2 * h, cfg.fc_width);
    dense("out", cfg.fc_width, cfg.num_classes);
  } else {
    dense("attn_proj", 2 * h, cfg.attention_dim);
    dense("aux1", cfg.aux_dim, cfg.attention_dim);
    dense("aux2", cfg.attention_dim, cfg.attention_dim);
    dense("attn_score", cfg.seq_len, cfg.seq_len);
    dense("fc1", 2 * h, cfg.sa_fc_width);
    dense("fc2", cfg.sa_fc_width, cfg.sa_fc_width);
    dense("out", cfg.sa_fc_width, cfg.num_classes);
  }
  return p;
}

std::size_t ModelParams::add_segment(std::string name, int rows, int cols) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("segment " + name + " has an empty shape");
  for (const auto& s : segments_)
    if (s.name == name) throw std::invalid_argument("duplicate segment " + name);
  Segment seg{std::move(name), rows, cols, values_.size()};
  values_.resize(values_.size() + seg.size(), 0.0);
  segments_.push_back(std::move(seg));
  return segments_.size() - 1;
}

ModelParams ModelParams::zeros_like() const {
  ModelParams p;
  p.segments_ = segments_;
  p.values_.assign(values_.size(), 0.0);
  return p;
}

std::size_t ModelParams::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < segments_.size(); ++i)
    if (segments_[i].name == name) return i;
  throw std::out_of_range("no parameter segment named " + std::string(name));
}

MatrixMap ModelParams::matrix(std::size_t seg) {
  const auto& s = segments_.at(seg);
  return MatrixMap(values_.data() + s.offset, s.rows, s.cols);
}

ConstMatrixMap ModelParams::matrix(std::size_t seg) const {
  const auto& s = segments_.at(seg);
  return ConstMatrixMap(values_.data() + s.offset, s.rows, s.cols);
}

RowMap ModelParams::row(std::size_t seg) {
  const auto& s = segments_.at(seg);
  return RowMap(values_.data() + s.offset, static_cast<Eigen::Index>(s.size()));
}

ConstRowMap ModelParams::row(std::size_t seg) const {
  const auto& s = segments_.at(seg);
  return ConstRowMap(values_.data() + s.offset, static_cast<Eigen::Index>(s.size()));
}

bool ModelParams::same_layout(const ModelParams& other) const {
  if (segments_.size() != other.segments_.size() || values_.size() != other.values_.size())
    return false;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& a = segments_[i];
    const auto& b = other.segments_[i];
    if (a.name != b.name || a.rows != b.rows || a.cols != b.cols || a.offset != b.offset)
      return false;
  }
  return true;
}

}  // namespace kchar::nn
