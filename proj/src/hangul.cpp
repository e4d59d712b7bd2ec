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

#include "kchar/hangul.hpp"

#include <algorithm>

#include "kchar/utf8.hpp"

namespace kchar {
namespace hangul {

// ㄱ ㄲ ㄴ ㄷ ㄸ ㄹ ㅁ ㅂ ㅃ ㅅ ㅆ ㅇ ㅈ ㅉ ㅊ ㅋ ㅌ ㅍ ㅎ
const std::array<char32_t, kNumCho> kChoLetters = {
    0x3131, 0x3132, 0x3134, 0x3137, 0x3138, 0x3139, 0x3141,
    0x3142, 0x3143, 0x3145, 0x3146, 0x3147, 0x3148, 0x3149,
    0x314A, 0x314B, 0x314C, 0x314D, 0x314E};

// Vowels are contiguous in the compatibility block and already in jung order.
const std::array<char32_t, kNumJung> kJungLetters = [] {
  std::array<char32_t, kNumJung> out{};
  for (int i = 0; i < kNumJung; ++i) out[i] = 0x314F + i;
  return out;
}();

// ㄱ ㄲ ㄳ ㄴ ㄵ ㄶ ㄷ ㄹ ㄺ ㄻ ㄼ ㄽ ㄾ ㄿ ㅀ ㅁ ㅂ ㅄ ㅅ ㅆ ㅇ ㅈ ㅊ ㅋ ㅌ ㅍ ㅎ
const std::array<char32_t, kNumJong> kJongLetters = {
    0x3131, 0x3132, 0x3133, 0x3134, 0x3135, 0x3136, 0x3137, 0x3139, 0x313A,
    0x313B, 0x313C, 0x313D, 0x313E, 0x313F, 0x3140, 0x3141, 0x3142, 0x3144,
    0x3145, 0x3146, 0x3147, 0x3148, 0x314A, 0x314B, 0x314C, 0x314D, 0x314E};

}  // namespace hangul

namespace {

using namespace hangul;

template <std::size_t N>
std::optional<int> index_of(const std::array<char32_t, N>& table, char32_t cp) {
  auto it = std::find(table.begin(), table.end(), cp);
  if (it == table.end()) return std::nullopt;
  return static_cast<int>(it - table.begin());
}

}  // namespace

bool is_precomposed_syllable(char32_t cp) noexcept {
  return cp >= kSyllableBase && cp <= kSyllableLast;
}

CodepointClass classify_codepoint(char32_t cp) noexcept {
  if (is_precomposed_syllable(cp)) return {CodepointKind::PrecomposedSyllable, -1};
  if (cp >= kCompatBase && cp <= kCompatLast)
    return {CodepointKind::StandaloneJamo, static_cast<int>(cp - kCompatBase)};
  if (cp == U' ') return {CodepointKind::Space, -1};
  return {CodepointKind::Other, -1};
}

JamoTriple decompose(char32_t syllable) {
  if (!is_precomposed_syllable(syllable))
    throw DomainError("decompose: " + utf8::codepoint_label(syllable) +
                      " is not a precomposed Hangul syllable");
  const int offset = static_cast<int>(syllable - kSyllableBase);
  const int jong = offset % (kNumJong + 1);
  const int jung = (offset / (kNumJong + 1)) % kNumJung;
  const int cho = offset / ((kNumJong + 1) * kNumJung);
  return {cho, jung, jong};
}

char32_t compose(const JamoTriple& t) {
  if (t.cho < 0 || t.cho >= kNumCho || t.jung < 0 || t.jung >= kNumJung ||
      t.jong < 0 || t.jong > kNumJong)
    throw DomainError("compose: jamo index out of range (" + std::to_string(t.cho) +
                      ", " + std::to_string(t.jung) + ", " + std::to_string(t.jong) + ")");
  return kSyllableBase +
         static_cast<char32_t>((t.cho * kNumJung + t.jung) * (kNumJong + 1) + t.jong);
}

char32_t standalone_letter(int standalone_index) {
  if (standalone_index < 0 || standalone_index >= kNumStandalone)
    throw DomainError("standalone index out of range: " + std::to_string(standalone_index));
  return kCompatBase + static_cast<char32_t>(standalone_index);
}

SlotPosition standalone_slot(int standalone_index) {
  const char32_t cp = standalone_letter(standalone_index);
  if (standalone_index >= kNumCompatConsonants)
    return {JamoSlot::Second, standalone_index - kNumCompatConsonants};
  if (auto cho = index_of(kChoLetters, cp)) return {JamoSlot::First, *cho};
  // Every compatibility consonant is a first or a final sound.
  return {JamoSlot::Third, *index_of(kJongLetters, cp)};
}

std::string to_string(CodepointKind kind) {
  switch (kind) {
    case CodepointKind::PrecomposedSyllable: return "PrecomposedSyllable";
    case CodepointKind::StandaloneJamo: return "StandaloneJamo";
    case CodepointKind::Space: return "Space";
    case CodepointKind::Other: return "Other";
  }
  return "Other";
}

}  // namespace kchar
