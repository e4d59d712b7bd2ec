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

#include <random>
#include <span>

#include <Eigen/Core>

#include "kchar/nn/lstm.hpp"
#include "kchar/nn/params.hpp"

namespace kchar::nn {

enum class Mode { Eval, Train };

/// -w * log(p[label]) for one example.
double loss_weighted_xent(std::span<const double> probs, int label,
                          std::span<const double> class_weights);

/// Row-wise softmax.
Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& logits);

/// Intermediate activations of one forward pass; enough to run the exact
/// reverse pass.
struct Tape {
  LstmTape fwd;
  LstmTape bwd;
  Eigen::MatrixXd pooled;       // BiLSTM: [h_fwd(L-1) | h_bwd(0)]; SA: attention-weighted sum
  Eigen::MatrixXd fc_pre;       // BiLSTM head / SA fc1 pre-activation
  Eigen::MatrixXd fc_out;       // post ReLU and dropout
  Eigen::MatrixXd fc2_pre;      // SA only
  Eigen::MatrixXd fc2_out;
  Eigen::MatrixXd mask1, mask2, mask_aux;  // inverted-dropout masks (SA, train mode)
  Eigen::MatrixXd logits;
  Eigen::MatrixXd probs;
  // self-attention
  Eigen::MatrixXd hidden_seq;         // (L*B) x 2h, [forward | backward]
  Eigen::MatrixXd proj;               // (L*B) x da, tanh output
  Eigen::RowVectorXd aux_pre;         // 1 x da, b2 (the kernel multiplies zeros)
  Eigen::MatrixXd aux_hidden;         // B x da, ReLU(b2) after dropout
  Eigen::MatrixXd query_pre;          // B x da
  Eigen::MatrixXd query;              // B x da
  Eigen::MatrixXd scores;             // B x L, raw dot products
  Eigen::MatrixXd attention;          // B x L, softmax
};

/// BiLSTM or self-attentive BiLSTM classifier over fixed-length feature
/// sequences. Owns its parameters.
class Model {
 public:
  explicit Model(const ModelConfig& cfg);
  Model(const ModelConfig& cfg, ModelParams params);

  const ModelConfig& config() const noexcept { return cfg_; }
  ModelParams& params() noexcept { return params_; }
  const ModelParams& params() const noexcept { return params_; }

  /// Class probabilities, B x N. Train mode needs `rng` for dropout masks.
  Eigen::MatrixXd forward(const SequenceBatch& x, Mode mode = Mode::Eval,
                          std::mt19937_64* rng = nullptr) const;

  /// Same as forward, keeping activations in `tape`.
  void forward(const SequenceBatch& x, Mode mode, std::mt19937_64* rng, Tape& tape) const;

  /// Mean weighted cross-entropy over the batch. Empty `class_weights` means
  /// all ones.
  double loss(const SequenceBatch& x, std::span<const int> labels,
              std::span<const double> class_weights, Mode mode = Mode::Eval,
              std::mt19937_64* rng = nullptr) const;

  /// Loss and its gradient w.r.t. every parameter; `grads` is overwritten.
  double loss_and_gradient(const SequenceBatch& x, std::span<const int> labels,
                           std::span<const double> class_weights, Mode mode,
                           std::mt19937_64* rng, ModelParams& grads) const;

  /// Final forward state concatenated with final backward state, B x 2h.
  Eigen::MatrixXd bilstm_last(const SequenceBatch& x) const;

  /// Full hidden sequence of one batch as (L*B) x 2h, time-major.
  Eigen::MatrixXd bilstm_sequence(const SequenceBatch& x) const;

  /// Attention weights, B x L (self-attentive model only).
  Eigen::MatrixXd attention(const SequenceBatch& x) const;

 private:
  LstmWeights lstm_weights(bool backward) const;
  void check_input(const SequenceBatch& x) const;
  void forward_bilstm_head(Mode mode, Tape& tape) const;
  void forward_sa_head(const SequenceBatch& x, Mode mode, std::mt19937_64* rng, Tape& tape) const;
  double batch_loss(const Tape& tape, std::span<const int> labels,
                    std::span<const double> class_weights) const;

  ModelConfig cfg_;
  ModelParams params_;
};

}  // namespace kchar::nn
