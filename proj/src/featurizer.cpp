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

#include "kchar/featurizer.hpp"

#include <algorithm>
#include <stdexcept>

#include "kchar/utf8.hpp"

namespace kchar {

std::vector<Symbol> tokenize(std::string_view text) {
  std::vector<Symbol> out;
  for (char32_t cp : utf8::decode(text)) {
    switch (classify_codepoint(cp).kind) {
      case CodepointKind::PrecomposedSyllable: out.push_back({Symbol::Kind::Syllable, cp}); break;
      case CodepointKind::StandaloneJamo: out.push_back({Symbol::Kind::Standalone, cp}); break;
      case CodepointKind::Space: out.push_back({Symbol::Kind::Space, cp}); break;
      case CodepointKind::Other: break;
    }
  }
  return out;
}

namespace {

int symbol_width(const Symbol& s, int expansion) {
  return s.kind == Symbol::Kind::Syllable ? expansion : 1;
}

}  // namespace

int expansion_bound(std::string_view text, SchemeKind scheme) {
  const int expansion = scheme_expansion(scheme);
  int n = 0;
  for (const auto& s : tokenize(text)) n += symbol_width(s, expansion);
  return n;
}

Featurizer::Featurizer(Encoder encoder, int max_len) : encoder_(encoder), max_len_(max_len) {
  if (max_len <= 0) throw std::invalid_argument("sequence length must be positive");
}

FeatureMatrix Featurizer::featurize(std::string_view text) const {
  FeatureMatrix m;
  m.data.resize(max_len_, encoder_.dim());
  m.occupancy = featurize_into(text, m.data);
  return m;
}

int Featurizer::featurize_into(std::string_view text, Eigen::Ref<Eigen::MatrixXd> out) const {
  out.setZero();
  const auto symbols = tokenize(text);
  const bool jamo = is_jamo_level(encoder_.kind());

  // Walk right to left so truncation drops the leftmost rows.
  int row = max_len_ - 1;
  auto emit = [&](auto&& write) {
    if (row >= 0) write(out.row(row));
    --row;
  };
  for (auto it = symbols.rbegin(); it != symbols.rend() && row >= 0; ++it) {
    const Symbol& s = *it;
    if (s.kind == Symbol::Kind::Space) {
      --row;
      continue;
    }
    if (!jamo) {
      emit([&](auto r) { encoder_.write_char(s.cp, r); });
      continue;
    }
    if (s.kind == Symbol::Kind::Standalone) {
      const int idx = classify_codepoint(s.cp).standalone_index;
      emit([&](auto r) { encoder_.write_jamo(JamoRequest::standalone(idx), r); });
      continue;
    }
    const auto t = decompose(s.cp);
    emit([&](auto r) { encoder_.write_jamo(JamoRequest::third(t.jong), r); });
    emit([&](auto r) { encoder_.write_jamo(JamoRequest::second(t.jung), r); });
    emit([&](auto r) { encoder_.write_jamo(JamoRequest::first(t.cho), r); });
  }
  return max_len_ - 1 - std::max(row, -1);
}

void dump_matrix(std::ostream& os, const FeatureMatrix& m) {
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << m.data(r, c);
    }
    os << '\n';
  }
}

}  // namespace kchar
