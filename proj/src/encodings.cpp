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

#include "kchar/encodings.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <utility>

#include "kchar/utf8.hpp"

namespace kchar {

namespace {

using Kind = JamoRequest::Kind;

void check_range(int value, int limit, const char* what) {
  if (value < 0 || value >= limit)
    throw DomainError(std::string(what) + " index out of range: " + std::to_string(value));
}

// Position in the shared 67-dim layout, or -1 for an all-zero vector.
int jamo67_position(const JamoRequest& req) {
  switch (req.kind) {
    case Kind::First:
      check_range(req.index, hangul::kNumCho, "first-sound");
      return req.index;
    case Kind::Second:
      check_range(req.index, hangul::kNumJung, "second-sound");
      return kSecondOffset + req.index;
    case Kind::Third:
      check_range(req.index, hangul::kNumJong + 1, "third-sound");
      return req.index == 0 ? -1 : kThirdOffset + req.index - 1;
    case Kind::Standalone:
      check_range(req.index, hangul::kNumStandalone, "standalone");
      return -1;
  }
  return -1;
}

int jamo118_position(const JamoRequest& req) {
  if (req.kind == Kind::Standalone) {
    check_range(req.index, hangul::kNumStandalone, "standalone");
    return kJamo67Dim + req.index;
  }
  return jamo67_position(req);
}

int slot_position(const SlotPosition& pos) {
  switch (pos.slot) {
    case JamoSlot::First: return pos.index;
    case JamoSlot::Second: return kSecondOffset + pos.index;
    case JamoSlot::Third: return kThirdOffset + pos.index;
  }
  return -1;
}

void write_multihot(char32_t symbol, RowOut out) {
  const auto cls = classify_codepoint(symbol);
  if (cls.kind == CodepointKind::PrecomposedSyllable) {
    const auto t = decompose(symbol);
    out[t.cho] = 1.0;
    out[kSecondOffset + t.jung] = 1.0;
    if (t.jong > 0) out[kThirdOffset + t.jong - 1] = 1.0;
  } else if (cls.kind == CodepointKind::StandaloneJamo) {
    out[slot_position(standalone_slot(cls.standalone_index))] = 1.0;
  }
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

std::optional<long long> parse_count(std::string_view s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

LoadError::LoadError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
      line_(line) {}

std::string scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Jamo67: return "jamo67";
    case SchemeKind::Jamo118: return "jamo118";
    case SchemeKind::CharOneHot: return "char-onehot";
    case SchemeKind::CharDense: return "char-dense";
    case SchemeKind::CharMultiHot: return "multihot";
  }
  return "?";
}

SchemeKind parse_scheme(std::string_view name) {
  for (auto k : {SchemeKind::Jamo67, SchemeKind::Jamo118, SchemeKind::CharOneHot,
                 SchemeKind::CharDense, SchemeKind::CharMultiHot})
    if (scheme_name(k) == name) return k;
  // Short forms, and the roman numerals (i)-(v) the schemes are often listed by.
  static const std::pair<std::string_view, SchemeKind> aliases[] = {
      {"i", SchemeKind::Jamo67},        {"ii", SchemeKind::Jamo118},
      {"iii", SchemeKind::CharOneHot},  {"iv", SchemeKind::CharDense},
      {"v", SchemeKind::CharMultiHot},  {"onehot", SchemeKind::CharOneHot},
      {"dense", SchemeKind::CharDense}, {"multi-hot", SchemeKind::CharMultiHot}};
  for (const auto& [alias, k] : aliases)
    if (alias == name) return k;
  throw std::invalid_argument("unknown scheme '" + std::string(name) +
                              "' (expected jamo67, jamo118, char-onehot, char-dense, multihot)");
}

bool is_jamo_level(SchemeKind kind) noexcept {
  return kind == SchemeKind::Jamo67 || kind == SchemeKind::Jamo118;
}

int scheme_expansion(SchemeKind kind) noexcept { return is_jamo_level(kind) ? 3 : 1; }

Eigen::VectorXd encode_jamo67(const JamoRequest& req) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(kJamo67Dim);
  if (int p = jamo67_position(req); p >= 0) v[p] = 1.0;
  return v;
}

Eigen::VectorXd encode_jamo118(const JamoRequest& req) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(kJamo118Dim);
  if (int p = jamo118_position(req); p >= 0) v[p] = 1.0;
  return v;
}

// --- CharVocabulary ---------------------------------------------------------

std::optional<int> CharVocabulary::add(char32_t syllable) {
  if (!is_precomposed_syllable(syllable)) return std::nullopt;
  auto [it, inserted] = index_.try_emplace(syllable, size());
  if (inserted) symbols_.push_back(syllable);
  return it->second;
}

std::optional<int> CharVocabulary::index_of(char32_t syllable) const {
  auto it = index_.find(syllable);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void CharVocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot write vocabulary file " + path.string(), 0);
  for (char32_t s : symbols_) out << utf8::encode(s) << '\n';
}

CharVocabulary CharVocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open vocabulary file " + path.string(), 0);
  CharVocabulary vocab;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto cps = utf8::decode(line);
    if (cps.size() != 1 || !is_precomposed_syllable(cps[0]))
      throw LoadError("vocabulary line is not a single Hangul syllable", lineno);
    if (vocab.index_of(cps[0])) throw LoadError("duplicate vocabulary entry", lineno);
    vocab.add(cps[0]);
  }
  return vocab;
}

CharVocabulary build_char_vocab(std::istream& corpus) {
  CharVocabulary vocab;
  std::string line;
  while (std::getline(corpus, line))
    for (char32_t cp : utf8::decode(line)) vocab.add(cp);
  return vocab;
}

CharVocabulary build_char_vocab(const std::vector<std::string>& texts) {
  CharVocabulary vocab;
  for (const auto& t : texts)
    for (char32_t cp : utf8::decode(t)) vocab.add(cp);
  return vocab;
}

Eigen::VectorXd encode_char_onehot(char32_t symbol, const CharVocabulary& vocab) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(vocab.size());
  if (auto idx = vocab.index_of(symbol)) v[*idx] = 1.0;
  return v;
}

// --- DenseVectorTable -------------------------------------------------------

void DenseVectorTable::insert(const std::string& token, Eigen::VectorXd vec) {
  if (vec.size() != width_)
    throw std::invalid_argument("dense vector width " + std::to_string(vec.size()) +
                                " != table width " + std::to_string(width_));
  auto [it, inserted] = table_.insert_or_assign(token, std::move(vec));
  if (inserted) order_.push_back(token);
}

const Eigen::VectorXd* DenseVectorTable::find(const std::string& token) const {
  auto it = table_.find(token);
  return it == table_.end() ? nullptr : &it->second;
}

const Eigen::VectorXd* DenseVectorTable::find(char32_t symbol) const {
  return find(utf8::encode(symbol));
}

DenseVectorTable load_dense_vectors(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<long long> header_count;
  std::optional<DenseVectorTable> table;
  std::size_t entries = 0;
  bool first_content = true;

  while (std::getline(in, line)) {
    ++lineno;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (first_content) {
      first_content = false;
      if (fields.size() == 2) {
        auto count = parse_count(fields[0]);
        auto dim = parse_count(fields[1]);
        if (count && dim) {
          if (*dim <= 0) throw LoadError("header declares non-positive dimension", lineno);
          header_count = *count;
          table.emplace(static_cast<int>(*dim));
          continue;
        }
      }
    }
    if (fields.size() < 2) throw LoadError("vector row has no values", lineno);
    const int width = static_cast<int>(fields.size() - 1);
    if (!table) table.emplace(width);
    if (width != table->width())
      throw LoadError("ragged row: expected " + std::to_string(table->width()) +
                          " values, found " + std::to_string(width),
                      lineno);
    Eigen::VectorXd vec(width);
    for (int k = 0; k < width; ++k) {
      const auto f = fields[static_cast<std::size_t>(k) + 1];
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size())
        throw LoadError("non-numeric field '" + std::string(f) + "'", lineno);
      vec[k] = v;
    }
    table->insert(std::string(fields[0]), std::move(vec));
    ++entries;
  }
  if (!table) throw LoadError("vector file is empty", 0);
  if (header_count && static_cast<std::size_t>(*header_count) != entries)
    throw LoadError("header declares " + std::to_string(*header_count) + " entries, found " +
                        std::to_string(entries),
                    0);
  return std::move(*table);
}

DenseVectorTable load_dense_vectors(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open vector file " + path.string(), 0);
  return load_dense_vectors(in);
}

CharVocabulary vocab_from_vectors(const DenseVectorTable& table) {
  CharVocabulary vocab;
  for (const auto& key : table.keys()) {
    const auto cps = utf8::decode(key);
    if (cps.size() == 1) vocab.add(cps[0]);
  }
  return vocab;
}

DenseVectorTable random_dense_vectors(const CharVocabulary& vocab, int width,
                                      unsigned long long seed, double scale) {
  if (width <= 0) throw std::invalid_argument("dense width must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, scale);
  DenseVectorTable table(width);
  for (char32_t s : vocab.symbols()) {
    Eigen::VectorXd v(width);
    for (int k = 0; k < width; ++k) v[k] = normal(rng);
    table.insert(utf8::encode(s), std::move(v));
  }
  return table;
}

Eigen::VectorXd encode_char_dense(char32_t symbol, const DenseVectorTable& table) {
  if (!is_precomposed_syllable(symbol)) return Eigen::VectorXd::Zero(table.width());
  if (const auto* v = table.find(symbol)) return *v;
  return Eigen::VectorXd::Zero(table.width());
}

Eigen::VectorXd encode_char_multihot(char32_t symbol) {
  Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(kMultiHotDim);
  write_multihot(symbol, v);
  return v.transpose();
}

// --- Encoder ----------------------------------------------------------------

Encoder Encoder::jamo67() { return Encoder(SchemeKind::Jamo67, kJamo67Dim); }
Encoder Encoder::jamo118() { return Encoder(SchemeKind::Jamo118, kJamo118Dim); }
Encoder Encoder::multihot() { return Encoder(SchemeKind::CharMultiHot, kMultiHotDim); }

Encoder Encoder::char_onehot(const CharVocabulary& vocab) {
  if (vocab.empty()) throw std::invalid_argument("character one-hot needs a non-empty vocabulary");
  Encoder e(SchemeKind::CharOneHot, vocab.size());
  e.vocab_ = &vocab;
  return e;
}

Encoder Encoder::char_dense(const DenseVectorTable& table) {
  if (table.width() <= 0) throw std::invalid_argument("dense table has no width");
  Encoder e(SchemeKind::CharDense, table.width());
  e.table_ = &table;
  return e;
}

void Encoder::write_jamo(const JamoRequest& req, RowOut out) const {
  out.setZero();
  int p = -1;
  if (kind_ == SchemeKind::Jamo67)
    p = jamo67_position(req);
  else if (kind_ == SchemeKind::Jamo118)
    p = jamo118_position(req);
  else
    throw std::logic_error("write_jamo called on a character-level scheme");
  if (p >= 0) out[p] = 1.0;
}

void Encoder::write_char(char32_t symbol, RowOut out) const {
  out.setZero();
  switch (kind_) {
    case SchemeKind::CharOneHot:
      if (auto idx = vocab_->index_of(symbol)) out[*idx] = 1.0;
      break;
    case SchemeKind::CharDense:
      if (is_precomposed_syllable(symbol))
        if (const auto* v = table_->find(symbol)) out = v->transpose();
      break;
    case SchemeKind::CharMultiHot:
      write_multihot(symbol, out);
      break;
    default:
      throw std::logic_error("write_char called on a jamo-level scheme");
  }
}

}  // namespace kchar
