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

#include "kchar/nn/init.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/QR>

namespace kchar::nn {

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  // Sign fix makes the distribution uniform over the orthogonal group.
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace

ModelParams init_params(const ModelConfig& cfg, unsigned long long seed) {
  ModelParams p = ModelParams::layout(cfg);
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < p.segments().size(); ++s) {
    const Segment& seg = p.segment(s);
    auto m = p.matrix(s);
    if (ends_with(seg.name, ".recurrent")) {
      const int h = seg.rows;
      for (int g = 0; g < 4; ++g) m.middleCols(g * h, h) = random_orthogonal(h, rng);
    } else if (ends_with(seg.name, ".kernel")) {
      const double limit = std::sqrt(6.0 / (seg.rows + seg.cols));
      std::uniform_real_distribution<double> uni(-limit, limit);
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = uni(rng);
    } else if (seg.name.rfind("lstm_", 0) == 0 && ends_with(seg.name, ".bias")) {
      const int h = seg.cols / 4;
      m.setZero();
      m.middleCols(h, h).setOnes();
    }
  }
  return p;
}

}  // namespace kchar::nn
