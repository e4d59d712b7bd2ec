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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace kchar::nn {

enum class Architecture { BiLSTM, BiLSTM_SA };

std::string architecture_name(Architecture arch);
Architecture parse_architecture(std::string_view name);

/// Architecture hyperparameters. Defaults are the standard widths; the
/// gradient checks shrink them.
struct ModelConfig {
  Architecture arch = Architecture::BiLSTM;
  int input_dim = 0;
  int seq_len = 0;
  int num_classes = 2;
  int hidden = 32;           // per direction
  int fc_width = 128;        // BiLSTM head
  int attention_dim = 64;    // tanh projection of each hidden state
  int aux_dim = 64;          // auxiliary zero vector
  int sa_fc_width = 256;     // two layers after the attention pooling
  double dropout = 0.3;      // BiLSTM-SA only

  void validate() const;
  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// Closed-form trainable scalar count.
std::size_t param_count(const ModelConfig& cfg);

/// Per-direction LSTM scalars: 4 * (h * (D + h) + h).
std::size_t lstm_param_count(int input_dim, int hidden);

using MatrixMap = Eigen::Map<Eigen::MatrixXd>;
using ConstMatrixMap = Eigen::Map<const Eigen::MatrixXd>;
using RowMap = Eigen::Map<Eigen::RowVectorXd>;
using ConstRowMap = Eigen::Map<const Eigen::RowVectorXd>;

struct Segment {
  std::string name;
  int rows = 0;
  int cols = 0;
  std::size_t offset = 0;

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }
};

/// Flat scalar store split into named, shaped segments. Also used for
/// gradients, which share the layout of the parameters they belong to.
class ModelParams {
 public:
  ModelParams() = default;

  /// Zero-initialised store with the segment layout `cfg` requires.
  static ModelParams layout(const ModelConfig& cfg);

  std::size_t add_segment(std::string name, int rows, int cols);

  /// Same segments, all values zero.
  ModelParams zeros_like() const;

  std::size_t index_of(std::string_view name) const;
  const std::vector<Segment>& segments() const noexcept { return segments_; }
  const Segment& segment(std::size_t i) const { return segments_.at(i); }

  MatrixMap matrix(std::size_t seg);
  ConstMatrixMap matrix(std::size_t seg) const;
  /// A 1 x cols segment as a row vector.
  RowMap row(std::size_t seg);
  ConstRowMap row(std::size_t seg) const;

  std::size_t size() const noexcept { return values_.size(); }
  std::vector<double>& values() noexcept { return values_; }
  const std::vector<double>& values() const noexcept { return values_; }

  bool same_layout(const ModelParams& other) const;

 private:
  std::vector<Segment> segments_;
  std::vector<double> values_;
};

}  // namespace kchar::nn
