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

#include "kchar/nn/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kchar::nn {

namespace {

// Segment order produced by ModelParams::layout.
enum : std::size_t {
  kFwdKernel, kFwdRecurrent, kFwdBias,
  kBwdKernel, kBwdRecurrent, kBwdBias,
  kHeadStart
};

// BiLSTM head.
enum : std::size_t { kFcKernel = kHeadStart, kFcBias, kOutKernel, kOutBias };

// Self-attentive head.
enum : std::size_t {
  kProjKernel = kHeadStart, kProjBias,
  kAux1Kernel, kAux1Bias,
  kAux2Kernel, kAux2Bias,
  kScoreKernel, kScoreBias,
  kFc1Kernel, kFc1Bias,
  kFc2Kernel, kFc2Bias,
  kSaOutKernel, kSaOutBias
};

Eigen::MatrixXd relu(const Eigen::MatrixXd& m) { return m.cwiseMax(0.0); }

Eigen::MatrixXd relu_mask(const Eigen::MatrixXd& pre) {
  return (pre.array() > 0.0).cast<double>().matrix();
}

Eigen::MatrixXd dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate, Mode mode,
                             std::mt19937_64* rng) {
  if (mode == Mode::Eval || rate == 0.0) return Eigen::MatrixXd::Ones(rows, cols);
  if (!rng) throw std::invalid_argument("training-mode dropout needs a random generator");
  std::bernoulli_distribution keep(1.0 - rate);
  const double scale = 1.0 / (1.0 - rate);
  Eigen::MatrixXd mask(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) mask(i, j) = keep(*rng) ? scale : 0.0;
  return mask;
}

double weight_for(std::span<const double> class_weights, int label) {
  return class_weights.empty() ? 1.0 : class_weights[static_cast<std::size_t>(label)];
}

}  // namespace

double loss_weighted_xent(std::span<const double> probs, int label,
                          std::span<const double> class_weights) {
  if (label < 0 || static_cast<std::size_t>(label) >= probs.size())
    throw std::invalid_argument("label out of range");
  return -weight_for(class_weights, label) * std::log(probs[static_cast<std::size_t>(label)]);
}

Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd out = logits.colwise() - logits.rowwise().maxCoeff();
  out = out.array().exp().matrix();
  out.array().colwise() /= out.rowwise().sum().array();
  return out;
}

Model::Model(const ModelConfig& cfg) : Model(cfg, ModelParams::layout(cfg)) {}

Model::Model(const ModelConfig& cfg, ModelParams params) : cfg_(cfg), params_(std::move(params)) {
  cfg_.validate();
  if (!params_.same_layout(ModelParams::layout(cfg_)))
    throw std::invalid_argument("parameter layout does not match model config");
}

LstmWeights Model::lstm_weights(bool backward) const {
  const std::size_t base = backward ? kBwdKernel : kFwdKernel;
  return {params_.matrix(base), params_.matrix(base + 1), params_.row(base + 2)};
}

void Model::check_input(const SequenceBatch& x) const {
  if (x.seq_len != cfg_.seq_len || x.dim != cfg_.input_dim || x.batch <= 0 ||
      x.data.rows() != static_cast<Eigen::Index>(x.seq_len) * x.batch || x.data.cols() != x.dim)
    throw std::invalid_argument("input batch shape (L=" + std::to_string(x.seq_len) + ", D=" +
                                std::to_string(x.dim) + ") does not match model (L=" +
                                std::to_string(cfg_.seq_len) + ", D=" +
                                std::to_string(cfg_.input_dim) + ")");
}

void Model::forward(const SequenceBatch& x, Mode mode, std::mt19937_64* rng, Tape& tape) const {
  check_input(x);
  lstm_forward(x, lstm_weights(false), false, tape.fwd);
  lstm_forward(x, lstm_weights(true), true, tape.bwd);
  if (cfg_.arch == Architecture::BiLSTM) {
    const int B = x.batch;
    const int h = cfg_.hidden;
    tape.pooled.resize(B, 2 * h);
    tape.pooled.leftCols(h) = tape.fwd.hidden_at(cfg_.seq_len - 1, B);
    tape.pooled.rightCols(h) = tape.bwd.hidden_at(0, B);
    forward_bilstm_head(mode, tape);
  } else {
    forward_sa_head(x, mode, rng, tape);
  }
  tape.probs = softmax_rows(tape.logits);
}

void Model::forward_bilstm_head(Mode, Tape& tape) const {
  tape.fc_pre = tape.pooled * params_.matrix(kFcKernel);
  tape.fc_pre.rowwise() += params_.row(kFcBias);
  tape.fc_out = relu(tape.fc_pre);
  tape.logits = tape.fc_out * params_.matrix(kOutKernel);
  tape.logits.rowwise() += params_.row(kOutBias);
}

void Model::forward_sa_head(const SequenceBatch& x, Mode mode, std::mt19937_64* rng,
                            Tape& tape) const {
  const int L = cfg_.seq_len;
  const int B = x.batch;
  const int h = cfg_.hidden;
  const int da = cfg_.attention_dim;

  tape.hidden_seq.resize(static_cast<Eigen::Index>(L) * B, 2 * h);
  tape.hidden_seq.leftCols(h) = tape.fwd.hidden;
  tape.hidden_seq.rightCols(h) = tape.bwd.hidden;

  tape.proj = tape.hidden_seq * params_.matrix(kProjKernel);
  tape.proj.rowwise() += params_.row(kProjBias);
  tape.proj = tape.proj.array().tanh().matrix();

  // Auxiliary branch over a zero input: only the biases survive, but the
  // kernel is kept so the layer matches its declared shape.
  const Eigen::RowVectorXd zeros = Eigen::RowVectorXd::Zero(cfg_.aux_dim);
  tape.aux_pre = zeros * params_.matrix(kAux1Kernel) + params_.row(kAux1Bias);
  tape.mask_aux = dropout_mask(B, da, cfg_.dropout, mode, rng);
  tape.aux_hidden = tape.aux_pre.cwiseMax(0.0).replicate(B, 1).cwiseProduct(tape.mask_aux);
  tape.query_pre = tape.aux_hidden * params_.matrix(kAux2Kernel);
  tape.query_pre.rowwise() += params_.row(kAux2Bias);
  tape.query = relu(tape.query_pre);

  tape.scores.resize(B, L);
  for (int t = 0; t < L; ++t)
    tape.scores.col(t) =
        tape.proj.middleRows(static_cast<Eigen::Index>(t) * B, B).cwiseProduct(tape.query).rowwise().sum();
  Eigen::MatrixXd z = tape.scores * params_.matrix(kScoreKernel);
  z.rowwise() += params_.row(kScoreBias);
  tape.attention = softmax_rows(z);

  tape.pooled = Eigen::MatrixXd::Zero(B, 2 * h);
  for (int t = 0; t < L; ++t)
    tape.pooled += (tape.hidden_seq.middleRows(static_cast<Eigen::Index>(t) * B, B).array().colwise() *
                    tape.attention.col(t).array())
                       .matrix();

  tape.fc_pre = tape.pooled * params_.matrix(kFc1Kernel);
  tape.fc_pre.rowwise() += params_.row(kFc1Bias);
  tape.mask1 = dropout_mask(B, cfg_.sa_fc_width, cfg_.dropout, mode, rng);
  tape.fc_out = relu(tape.fc_pre).cwiseProduct(tape.mask1);

  tape.fc2_pre = tape.fc_out * params_.matrix(kFc2Kernel);
  tape.fc2_pre.rowwise() += params_.row(kFc2Bias);
  tape.mask2 = dropout_mask(B, cfg_.sa_fc_width, cfg_.dropout, mode, rng);
  tape.fc2_out = relu(tape.fc2_pre).cwiseProduct(tape.mask2);

  tape.logits = tape.fc2_out * params_.matrix(kSaOutKernel);
  tape.logits.rowwise() += params_.row(kSaOutBias);
}

Eigen::MatrixXd Model::forward(const SequenceBatch& x, Mode mode, std::mt19937_64* rng) const {
  Tape tape;
  forward(x, mode, rng, tape);
  return std::move(tape.probs);
}

double Model::batch_loss(const Tape& tape, std::span<const int> labels,
                         std::span<const double> class_weights) const {
  const Eigen::Index B = tape.logits.rows();
  if (static_cast<Eigen::Index>(labels.size()) != B)
    throw std::invalid_argument("label count does not match batch size");
  if (!class_weights.empty() && static_cast<int>(class_weights.size()) != cfg_.num_classes)
    throw std::invalid_argument("class weight count does not match num_classes");
  double total = 0.0;
  for (Eigen::Index b = 0; b < B; ++b) {
    const int y = labels[static_cast<std::size_t>(b)];
    if (y < 0 || y >= cfg_.num_classes) throw std::invalid_argument("label out of range");
    const double m = tape.logits.row(b).maxCoeff();
    const double lse = m + std::log((tape.logits.row(b).array() - m).exp().sum());
    total += weight_for(class_weights, y) * (lse - tape.logits(b, y));
  }
  return total / static_cast<double>(B);
}

double Model::loss(const SequenceBatch& x, std::span<const int> labels,
                   std::span<const double> class_weights, Mode mode, std::mt19937_64* rng) const {
  Tape tape;
  forward(x, mode, rng, tape);
  return batch_loss(tape, labels, class_weights);
}

double Model::loss_and_gradient(const SequenceBatch& x, std::span<const int> labels,
                                std::span<const double> class_weights, Mode mode,
                                std::mt19937_64* rng, ModelParams& grads) const {
  Tape tape;
  forward(x, mode, rng, tape);
  const double loss = batch_loss(tape, labels, class_weights);

  if (!grads.same_layout(params_)) grads = params_.zeros_like();
  std::fill(grads.values().begin(), grads.values().end(), 0.0);

  const int L = cfg_.seq_len;
  const int B = x.batch;
  const int h = cfg_.hidden;

  Eigen::MatrixXd d_logits = tape.probs;
  for (int b = 0; b < B; ++b) {
    const int y = labels[static_cast<std::size_t>(b)];
    d_logits(b, y) -= 1.0;
    d_logits.row(b) *= weight_for(class_weights, y) / static_cast<double>(B);
  }

  Eigen::MatrixXd d_fwd = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(L) * B, h);
  Eigen::MatrixXd d_bwd = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(L) * B, h);

  if (cfg_.arch == Architecture::BiLSTM) {
    grads.matrix(kOutKernel).noalias() = tape.fc_out.transpose() * d_logits;
    grads.row(kOutBias) = d_logits.colwise().sum();
    Eigen::MatrixXd d_fc = (d_logits * params_.matrix(kOutKernel).transpose())
                               .cwiseProduct(relu_mask(tape.fc_pre));
    grads.matrix(kFcKernel).noalias() = tape.pooled.transpose() * d_fc;
    grads.row(kFcBias) = d_fc.colwise().sum();
    const Eigen::MatrixXd d_pooled = d_fc * params_.matrix(kFcKernel).transpose();
    d_fwd.middleRows(static_cast<Eigen::Index>(L - 1) * B, B) = d_pooled.leftCols(h);
    d_bwd.middleRows(0, B) = d_pooled.rightCols(h);
  } else {
    grads.matrix(kSaOutKernel).noalias() = tape.fc2_out.transpose() * d_logits;
    grads.row(kSaOutBias) = d_logits.colwise().sum();

    Eigen::MatrixXd d_fc2 = (d_logits * params_.matrix(kSaOutKernel).transpose())
                                .cwiseProduct(tape.mask2)
                                .cwiseProduct(relu_mask(tape.fc2_pre));
    grads.matrix(kFc2Kernel).noalias() = tape.fc_out.transpose() * d_fc2;
    grads.row(kFc2Bias) = d_fc2.colwise().sum();

    Eigen::MatrixXd d_fc1 = (d_fc2 * params_.matrix(kFc2Kernel).transpose())
                                .cwiseProduct(tape.mask1)
                                .cwiseProduct(relu_mask(tape.fc_pre));
    grads.matrix(kFc1Kernel).noalias() = tape.pooled.transpose() * d_fc1;
    grads.row(kFc1Bias) = d_fc1.colwise().sum();
    const Eigen::MatrixXd d_pooled = d_fc1 * params_.matrix(kFc1Kernel).transpose();

    // Weighted sum over time.
    Eigen::MatrixXd d_hidden = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(L) * B, 2 * h);
    Eigen::MatrixXd d_attn(B, L);
    for (int t = 0; t < L; ++t) {
      const Eigen::Index r0 = static_cast<Eigen::Index>(t) * B;
      d_hidden.middleRows(r0, B) = (d_pooled.array().colwise() * tape.attention.col(t).array()).matrix();
      d_attn.col(t) = d_pooled.cwiseProduct(tape.hidden_seq.middleRows(r0, B)).rowwise().sum();
    }
    // Softmax.
    const Eigen::VectorXd inner = d_attn.cwiseProduct(tape.attention).rowwise().sum();
    const Eigen::MatrixXd d_z =
        tape.attention.cwiseProduct((d_attn.colwise() - inner));
    grads.matrix(kScoreKernel).noalias() = tape.scores.transpose() * d_z;
    grads.row(kScoreBias) = d_z.colwise().sum();
    const Eigen::MatrixXd d_scores = d_z * params_.matrix(kScoreKernel).transpose();

    // Column-wise dot products of projections with the query.
    Eigen::MatrixXd d_proj(static_cast<Eigen::Index>(L) * B, cfg_.attention_dim);
    Eigen::MatrixXd d_query = Eigen::MatrixXd::Zero(B, cfg_.attention_dim);
    for (int t = 0; t < L; ++t) {
      const Eigen::Index r0 = static_cast<Eigen::Index>(t) * B;
      d_proj.middleRows(r0, B) = (tape.query.array().colwise() * d_scores.col(t).array()).matrix();
      d_query += (tape.proj.middleRows(r0, B).array().colwise() * d_scores.col(t).array()).matrix();
    }
    d_proj = d_proj.cwiseProduct((1.0 - tape.proj.array().square()).matrix());
    grads.matrix(kProjKernel).noalias() = tape.hidden_seq.transpose() * d_proj;
    grads.row(kProjBias) = d_proj.colwise().sum();
    d_hidden.noalias() += d_proj * params_.matrix(kProjKernel).transpose();

    // Auxiliary branch.
    const Eigen::MatrixXd d_query_pre = d_query.cwiseProduct(relu_mask(tape.query_pre));
    grads.matrix(kAux2Kernel).noalias() = tape.aux_hidden.transpose() * d_query_pre;
    grads.row(kAux2Bias) = d_query_pre.colwise().sum();
    const Eigen::MatrixXd d_aux =
        (d_query_pre * params_.matrix(kAux2Kernel).transpose()).cwiseProduct(tape.mask_aux);
    const Eigen::RowVectorXd d_aux_pre =
        d_aux.colwise().sum().cwiseProduct((tape.aux_pre.array() > 0.0).cast<double>().matrix());
    grads.row(kAux1Bias) = d_aux_pre;
    // Kernel gradient is zeros^T * d_aux_pre, i.e. exactly zero.
    grads.matrix(kAux1Kernel).setZero();

    d_fwd = d_hidden.leftCols(h);
    d_bwd = d_hidden.rightCols(h);
  }

  LstmGrads gf{grads.matrix(kFwdKernel), grads.matrix(kFwdRecurrent), grads.row(kFwdBias)};
  lstm_backward(x, lstm_weights(false), tape.fwd, d_fwd, gf);
  LstmGrads gb{grads.matrix(kBwdKernel), grads.matrix(kBwdRecurrent), grads.row(kBwdBias)};
  lstm_backward(x, lstm_weights(true), tape.bwd, d_bwd, gb);
  return loss;
}

Eigen::MatrixXd Model::bilstm_last(const SequenceBatch& x) const {
  check_input(x);
  LstmTape f, b;
  lstm_forward(x, lstm_weights(false), false, f);
  lstm_forward(x, lstm_weights(true), true, b);
  const int h = cfg_.hidden;
  Eigen::MatrixXd out(x.batch, 2 * h);
  out.leftCols(h) = f.hidden_at(cfg_.seq_len - 1, x.batch);
  out.rightCols(h) = b.hidden_at(0, x.batch);
  return out;
}

Eigen::MatrixXd Model::bilstm_sequence(const SequenceBatch& x) const {
  check_input(x);
  LstmTape f, b;
  lstm_forward(x, lstm_weights(false), false, f);
  lstm_forward(x, lstm_weights(true), true, b);
  Eigen::MatrixXd out(f.hidden.rows(), 2 * cfg_.hidden);
  out << f.hidden, b.hidden;
  return out;
}

Eigen::MatrixXd Model::attention(const SequenceBatch& x) const {
  if (cfg_.arch != Architecture::BiLSTM_SA)
    throw std::logic_error("attention weights exist only for the self-attentive model");
  Tape tape;
  forward(x, Mode::Eval, nullptr, tape);
  return std::move(tape.attention);
}

}  // namespace kchar::nn
