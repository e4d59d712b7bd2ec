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

#include "kchar/nn/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "kchar/nn/init.hpp"
#include "kchar/nn/model.hpp"

namespace kchar::nn {

ModelConfig tiny_config(Architecture arch) {
  ModelConfig cfg;
  cfg.arch = arch;
  cfg.input_dim = 5;
  cfg.seq_len = 7;
  cfg.num_classes = 3;
  cfg.hidden = 2;
  cfg.fc_width = 4;
  cfg.attention_dim = 3;
  cfg.aux_dim = 3;
  cfg.sa_fc_width = 4;
  return cfg;
}

GradCheckReport grad_check(const ModelConfig& cfg, double tolerance, unsigned long long seed,
                           int batch, double step) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uni(0.1, 0.5);

  Model model(cfg, init_params(cfg, seed));
  // Non-zero biases exercise every term; positive auxiliary biases keep that
  // ReLU branch open.
  auto& p = model.params();
  for (std::size_t s = 0; s < p.segments().size(); ++s) {
    const auto& seg = p.segment(s);
    if (seg.name.size() < 5 || seg.name.compare(seg.name.size() - 5, 5, ".bias") != 0) continue;
    auto r = p.row(s);
    const bool aux = seg.name.rfind("aux", 0) == 0;
    for (Eigen::Index i = 0; i < r.size(); ++i) r[i] += aux ? uni(rng) : 0.1 * normal(rng);
  }

  SequenceBatch x(cfg.seq_len, batch, cfg.input_dim);
  for (Eigen::Index j = 0; j < x.data.cols(); ++j)
    for (Eigen::Index i = 0; i < x.data.rows(); ++i) x.data(i, j) = normal(rng);
  std::vector<int> labels(static_cast<std::size_t>(batch));
  std::uniform_int_distribution<int> label_dist(0, cfg.num_classes - 1);
  for (auto& y : labels) y = label_dist(rng);
  std::vector<double> weights(static_cast<std::size_t>(cfg.num_classes));
  std::uniform_real_distribution<double> wdist(0.5, 2.0);
  for (auto& w : weights) w = wdist(rng);

  ModelParams grads;
  model.loss_and_gradient(x, labels, weights, Mode::Eval, nullptr, grads);

  GradCheckReport report;
  report.tolerance = tolerance;
  auto& values = model.params().values();
  for (std::size_t s = 0; s < p.segments().size(); ++s) {
    const auto& seg = p.segment(s);
    for (std::size_t k = 0; k < seg.size(); ++k) {
      const std::size_t i = seg.offset + k;
      const double saved = values[i];
      values[i] = saved + step;
      const double up = model.loss(x, labels, weights);
      values[i] = saved - step;
      const double down = model.loss(x, labels, weights);
      values[i] = saved;
      const double numeric = (up - down) / (2.0 * step);
      const double analytic = grads.values()[i];
      const double abs_err = std::abs(analytic - numeric);
      const double rel_err = abs_err / std::max({std::abs(analytic), std::abs(numeric), 1e-6});
      report.max_abs_error = std::max(report.max_abs_error, abs_err);
      if (rel_err > report.max_rel_error || report.checked == 0) {
        report.max_rel_error = std::max(report.max_rel_error, rel_err);
        report.worst_segment = seg.name;
        report.worst_index = k;
      }
      ++report.checked;
    }
  }
  return report;
}

}  // namespace kchar::nn
