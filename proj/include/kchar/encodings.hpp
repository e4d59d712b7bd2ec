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

#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "kchar/hangul.hpp"

namespace kchar {

/// Writable row view; strided so it accepts a row of a column-major matrix.
using RowOut = Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>>;

enum class SchemeKind { Jamo67, Jamo118, CharOneHot, CharDense, CharMultiHot };

inline constexpr int kJamo67Dim = hangul::kNumCho + hangul::kNumJung + hangul::kNumJong;
inline constexpr int kJamo118Dim = kJamo67Dim + hangul::kNumStandalone;
inline constexpr int kMultiHotDim = kJamo67Dim;
inline constexpr int kSecondOffset = hangul::kNumCho;
inline constexpr int kThirdOffset = hangul::kNumCho + hangul::kNumJung;

/// CLI names: jamo67, jamo118, char-onehot, char-dense, multihot.
std::string scheme_name(SchemeKind kind);
SchemeKind parse_scheme(std::string_view name);

/// Rows emitted per full syllable: 3 for the jamo-level schemes, 1 otherwise.
int scheme_expansion(SchemeKind kind) noexcept;
bool is_jamo_level(SchemeKind kind) noexcept;

/// Error from parsing an external file; carries the 1-based line number when
/// the failure is tied to a line (0 otherwise).
class LoadError : public std::runtime_error {
 public:
  LoadError(const std::string& what, std::size_t line);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// One slot of the jamo layout: a first/second/third sound of a syllable, or a
/// standalone compatibility letter. Third(0) is the empty final slot.
struct JamoRequest {
  enum class Kind { First, Second, Third, Standalone };
  Kind kind;
  int index;

  static JamoRequest first(int i) { return {Kind::First, i}; }
  static JamoRequest second(int i) { return {Kind::Second, i}; }
  static JamoRequest third(int jong) { return {Kind::Third, jong}; }
  static JamoRequest standalone(int i) { return {Kind::Standalone, i}; }
};

/// 67-dim one-hot over [cho | jung | jong]; standalone letters and the empty
/// final slot encode as zeros.
Eigen::VectorXd encode_jamo67(const JamoRequest& req);

/// encode_jamo67 plus a 51-dim tail where standalone letter k sets 67 + k.
Eigen::VectorXd encode_jamo118(const JamoRequest& req);

/// Ordered set of precomposed syllables backing the character one-hot scheme.
class CharVocabulary {
 public:
  CharVocabulary() = default;

  /// Appends `syllable` if new; non-syllables are ignored. Returns its index,
  /// or nullopt when the symbol is not a syllable.
  std::optional<int> add(char32_t syllable);

  std::optional<int> index_of(char32_t syllable) const;
  char32_t at(int index) const { return symbols_.at(static_cast<std::size_t>(index)); }
  int size() const noexcept { return static_cast<int>(symbols_.size()); }
  bool empty() const noexcept { return symbols_.empty(); }
  const std::vector<char32_t>& symbols() const noexcept { return symbols_; }

  /// One syllable per line, line number = index.
  void save(const std::filesystem::path& path) const;
  static CharVocabulary load(const std::filesystem::path& path);

 private:
  std::vector<char32_t> symbols_;
  std::unordered_map<char32_t, int> index_;
};

/// Distinct precomposed syllables in first-appearance order.
CharVocabulary build_char_vocab(std::istream& corpus);
CharVocabulary build_char_vocab(const std::vector<std::string>& texts);

/// Character one-hot; all zeros for symbols outside the vocabulary.
Eigen::VectorXd encode_char_onehot(char32_t symbol, const CharVocabulary& vocab);

/// Pretrained per-token vectors of one shared width.
class DenseVectorTable {
 public:
  explicit DenseVectorTable(int width = 0) : width_(width) {}

  int width() const noexcept { return width_; }
  std::size_t size() const noexcept { return table_.size(); }

  /// Last insert wins. Throws std::invalid_argument on a width mismatch.
  void insert(const std::string& token, Eigen::VectorXd vec);
  const Eigen::VectorXd* find(const std::string& token) const;
  const Eigen::VectorXd* find(char32_t symbol) const;

  /// Keys in first-insertion order.
  const std::vector<std::string>& keys() const noexcept { return order_; }

 private:
  int width_;
  std::unordered_map<std::string, Eigen::VectorXd> table_;
  std::vector<std::string> order_;
};

/// Whitespace-separated text vectors: optional "count dim" header, then
/// `token v1 .. vdim` per line. Throws LoadError naming the offending line.
DenseVectorTable load_dense_vectors(const std::filesystem::path& path);
DenseVectorTable load_dense_vectors(std::istream& in);

/// Vocabulary over the syllable keys of a vector table, in file order.
CharVocabulary vocab_from_vectors(const DenseVectorTable& table);

/// Table with a N(0, scale^2) vector for each syllable of `vocab`; stands in
/// for pretrained vectors when none are supplied.
DenseVectorTable random_dense_vectors(const CharVocabulary& vocab, int width,
                                      unsigned long long seed, double scale = 1.0);

/// Stored vector, or zeros when absent (standalone letters are never stored).
Eigen::VectorXd encode_char_dense(char32_t symbol, const DenseVectorTable& table);

/// Syllable (i,j,k) sets i, 19+j and, for k > 0, 40+k-1. A standalone letter
/// sets the single position its slot maps to.
Eigen::VectorXd encode_char_multihot(char32_t symbol);

/// Scheme plus the resources it needs. Non-owning: the vocabulary or table
/// must outlive the encoder.
class Encoder {
 public:
  static Encoder jamo67();
  static Encoder jamo118();
  static Encoder char_onehot(const CharVocabulary& vocab);
  static Encoder char_dense(const DenseVectorTable& table);
  static Encoder multihot();

  SchemeKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  int expansion() const noexcept { return scheme_expansion(kind_); }

  /// Writes the vector for one jamo slot into `out` (zeroed first). Only
  /// valid for the jamo-level schemes.
  void write_jamo(const JamoRequest& req, RowOut out) const;

  /// Writes the vector for a whole syllable or standalone letter. Only valid
  /// for the character-level schemes.
  void write_char(char32_t symbol, RowOut out) const;

 private:
  Encoder(SchemeKind kind, int dim) : kind_(kind), dim_(dim) {}

  SchemeKind kind_;
  int dim_;
  const CharVocabulary* vocab_ = nullptr;
  const DenseVectorTable* table_ = nullptr;
};

}  // namespace kchar
