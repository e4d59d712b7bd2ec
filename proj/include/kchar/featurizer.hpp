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

#include <ostream>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "kchar/encodings.hpp"

namespace kchar {

/// A symbol that survives tokenization.
struct Symbol {
  enum class Kind { Syllable, Standalone, Space };
  Kind kind;
  char32_t cp;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Drops every Other-class code point; spaces are kept one for one.
std::vector<Symbol> tokenize(std::string_view text);

/// L x D sequence, right-aligned: the first `rows - occupancy` rows are zero
/// padding.
struct FeatureMatrix {
  Eigen::MatrixXd data;
  int occupancy = 0;

  int rows() const noexcept { return static_cast<int>(data.rows()); }
  int cols() const noexcept { return static_cast<int>(data.cols()); }
};

/// Positions the symbol sequence occupies before padding or truncation. A
/// syllable takes `expansion` rows; standalone letters and spaces take one.
int expansion_bound(std::string_view text, SchemeKind scheme);

class Featurizer {
 public:
  Featurizer(Encoder encoder, int max_len);

  const Encoder& encoder() const noexcept { return encoder_; }
  int max_len() const noexcept { return max_len_; }
  int dim() const noexcept { return encoder_.dim(); }

  /// Longer inputs keep their rightmost max_len rows.
  FeatureMatrix featurize(std::string_view text) const;

  /// Writes the featurized text into an L x D block (used for batch packing).
  int featurize_into(std::string_view text, Eigen::Ref<Eigen::MatrixXd> out) const;

 private:
  Encoder encoder_;
  int max_len_;
};

/// One row per line, space-separated values.
void dump_matrix(std::ostream& os, const FeatureMatrix& m);

}  // namespace kchar
