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

#include "kchar/nn/lstm.hpp"

#include <cmath>
#include <stdexcept>

namespace kchar::nn {

namespace {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

void SequenceBatch::set_sequence(int b, const Eigen::Ref<const Eigen::MatrixXd>& seq) {
  if (seq.rows() != seq_len || seq.cols() != dim)
    throw std::invalid_argument("sequence shape does not match batch");
  for (int t = 0; t < seq_len; ++t)
    data.row(static_cast<Eigen::Index>(t) * batch + b) = seq.row(t);
}

Eigen::MatrixXd SequenceBatch::sequence(int b) const {
  Eigen::MatrixXd out(seq_len, dim);
  for (int t = 0; t < seq_len; ++t) out.row(t) = data.row(static_cast<Eigen::Index>(t) * batch + b);
  return out;
}

void lstm_forward(const SequenceBatch& x, const LstmWeights& w, bool reverse, LstmTape& tape) {
  const int L = x.seq_len;
  const int B = x.batch;
  const Eigen::Index h = w.recurrent.rows();
  if (w.kernel.rows() != x.dim || w.kernel.cols() != 4 * h)
    throw std::invalid_argument("lstm_forward: kernel shape does not match input");

  tape.reverse = reverse;
  // Input projections for every step in one product.
  tape.gates.noalias() = x.data * w.kernel;
  tape.gates.rowwise() += w.bias;
  tape.cells.resize(static_cast<Eigen::Index>(L) * B, h);
  tape.hidden.resize(static_cast<Eigen::Index>(L) * B, h);

  Eigen::MatrixXd h_prev = Eigen::MatrixXd::Zero(B, h);
  Eigen::MatrixXd c_prev = Eigen::MatrixXd::Zero(B, h);
  for (int k = 0; k < L; ++k) {
    const int t = reverse ? L - 1 - k : k;
    const Eigen::Index r0 = static_cast<Eigen::Index>(t) * B;
    auto z = tape.gates.middleRows(r0, B);
    z.noalias() += h_prev * w.recurrent;
    auto c = tape.cells.middleRows(r0, B);
    auto hid = tape.hidden.middleRows(r0, B);
    for (int b = 0; b < B; ++b) {
      for (Eigen::Index j = 0; j < h; ++j) {
        const double i_g = sigmoid(z(b, j));
        const double f_g = sigmoid(z(b, h + j));
        const double g_g = std::tanh(z(b, 2 * h + j));
        const double o_g = sigmoid(z(b, 3 * h + j));
        z(b, j) = i_g;
        z(b, h + j) = f_g;
        z(b, 2 * h + j) = g_g;
        z(b, 3 * h + j) = o_g;
        const double cell = f_g * c_prev(b, j) + i_g * g_g;
        c(b, j) = cell;
        hid(b, j) = o_g * std::tanh(cell);
      }
    }
    h_prev = hid;
    c_prev = c;
  }
}

void lstm_backward(const SequenceBatch& x, const LstmWeights& w, const LstmTape& tape,
                   const Eigen::MatrixXd& d_hidden, LstmGrads& g) {
  const int L = x.seq_len;
  const int B = x.batch;
  const Eigen::Index h = w.recurrent.rows();
  const bool reverse = tape.reverse;

  Eigen::MatrixXd dz_all(static_cast<Eigen::Index>(L) * B, 4 * h);
  // Hidden state each step consumed; zero for the first processed step.
  Eigen::MatrixXd h_prev_all = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(L) * B, h);

  Eigen::MatrixXd dh_next = Eigen::MatrixXd::Zero(B, h);
  Eigen::MatrixXd dc_next = Eigen::MatrixXd::Zero(B, h);
  for (int k = L - 1; k >= 0; --k) {
    const int t = reverse ? L - 1 - k : k;
    const int t_prev = reverse ? t + 1 : t - 1;
    const bool has_prev = k > 0;
    const Eigen::Index r0 = static_cast<Eigen::Index>(t) * B;
    const Eigen::Index rp = static_cast<Eigen::Index>(t_prev) * B;

    auto gates = tape.gates.middleRows(r0, B);
    auto c = tape.cells.middleRows(r0, B);
    auto dz = dz_all.middleRows(r0, B);
    Eigen::MatrixXd dh = d_hidden.middleRows(r0, B) + dh_next;
    for (int b = 0; b < B; ++b) {
      for (Eigen::Index j = 0; j < h; ++j) {
        const double i_g = gates(b, j);
        const double f_g = gates(b, h + j);
        const double g_g = gates(b, 2 * h + j);
        const double o_g = gates(b, 3 * h + j);
        const double tc = std::tanh(c(b, j));
        const double c_prev = has_prev ? tape.cells(rp + b, j) : 0.0;
        const double d_o = dh(b, j) * tc;
        const double dc = dc_next(b, j) + dh(b, j) * o_g * (1.0 - tc * tc);
        dz(b, j) = dc * g_g * i_g * (1.0 - i_g);
        dz(b, h + j) = dc * c_prev * f_g * (1.0 - f_g);
        dz(b, 2 * h + j) = dc * i_g * (1.0 - g_g * g_g);
        dz(b, 3 * h + j) = d_o * o_g * (1.0 - o_g);
        dc_next(b, j) = dc * f_g;
      }
    }
    if (has_prev) {
      h_prev_all.middleRows(r0, B) = tape.hidden.middleRows(rp, B);
      dh_next.noalias() = dz * w.recurrent.transpose();
    }
  }
  g.kernel.noalias() += x.data.transpose() * dz_all;
  g.recurrent.noalias() += h_prev_all.transpose() * dz_all;
  g.bias += dz_all.colwise().sum();
}

}  // namespace kchar::nn
