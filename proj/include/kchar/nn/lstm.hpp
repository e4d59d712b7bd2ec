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

#include <vector>

#include <Eigen/Core>

#include "kchar/nn/params.hpp"

namespace kchar::nn {

/// B sequences of L steps of D features, stored time-major: row t * B + b
/// holds step t of sequence b.
struct SequenceBatch {
  int seq_len = 0;
  int batch = 0;
  int dim = 0;
  Eigen::MatrixXd data;

  SequenceBatch() = default;
  SequenceBatch(int seq_len, int batch, int dim)
      : seq_len(seq_len), batch(batch), dim(dim), data(Eigen::MatrixXd::Zero(seq_len * batch, dim)) {}

  auto step(int t) { return data.middleRows(static_cast<Eigen::Index>(t) * batch, batch); }
  auto step(int t) const { return data.middleRows(static_cast<Eigen::Index>(t) * batch, batch); }

  /// Copies an L x D matrix into sequence slot `b`.
  void set_sequence(int b, const Eigen::Ref<const Eigen::MatrixXd>& seq);
  Eigen::MatrixXd sequence(int b) const;
};

/// One direction's weights; gates are laid out [input | forget | cell | output].
struct LstmWeights {
  ConstMatrixMap kernel;     // D x 4h
  ConstMatrixMap recurrent;  // h x 4h
  ConstRowMap bias;          // 1 x 4h
};

struct LstmGrads {
  MatrixMap kernel;
  MatrixMap recurrent;
  RowMap bias;
};

/// Activations recorded by the forward pass, indexed by input time step (so
/// for the reverse direction step t holds the state after consuming x_t..x_{L-1}).
struct LstmTape {
  bool reverse = false;
  Eigen::MatrixXd gates;   // (L*B) x 4h, post-activation
  Eigen::MatrixXd cells;   // (L*B) x h
  Eigen::MatrixXd hidden;  // (L*B) x h

  auto hidden_at(int t, int batch) const {
    return hidden.middleRows(static_cast<Eigen::Index>(t) * batch, batch);
  }
};

/// Runs the recurrence from zero initial state. `reverse` walks t = L-1 .. 0.
void lstm_forward(const SequenceBatch& x, const LstmWeights& w, bool reverse, LstmTape& tape);

/// Backpropagates `d_hidden` ((L*B) x h, gradient w.r.t. each recorded hidden
/// state) through the recurrence and accumulates into `g`.
void lstm_backward(const SequenceBatch& x, const LstmWeights& w, const LstmTape& tape,
                   const Eigen::MatrixXd& d_hidden, LstmGrads& g);

}  // namespace kchar::nn
