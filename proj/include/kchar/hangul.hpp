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

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace kchar {

/// Raised when a code point or jamo index falls outside the modern Hangul
/// inventory an operation requires.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace hangul {

inline constexpr char32_t kSyllableBase = 0xAC00;
inline constexpr char32_t kSyllableLast = 0xD7A3;
inline constexpr char32_t kCompatBase = 0x3131;
inline constexpr char32_t kCompatLast = 0x3163;

inline constexpr int kNumCho = 19;
inline constexpr int kNumJung = 21;
/// Non-empty final consonants; the jong slot has kNumJong + 1 states.
inline constexpr int kNumJong = 27;
inline constexpr int kNumSyllables = kNumCho * kNumJung * (kNumJong + 1);
inline constexpr int kNumCompatConsonants = 30;
inline constexpr int kNumCompatVowels = 21;
inline constexpr int kNumStandalone = kNumCompatConsonants + kNumCompatVowels;

/// Compatibility-jamo code points for each slot, in slot-index order.
extern const std::array<char32_t, kNumCho> kChoLetters;
extern const std::array<char32_t, kNumJung> kJungLetters;
extern const std::array<char32_t, kNumJong> kJongLetters;

}  // namespace hangul

/// A decomposed syllable. `jong == 0` marks an empty third slot; 1..27 index
/// the final consonants.
struct JamoTriple {
  int cho = 0;
  int jung = 0;
  int jong = 0;

  friend bool operator==(const JamoTriple&, const JamoTriple&) = default;
};

enum class CodepointKind { PrecomposedSyllable, StandaloneJamo, Space, Other };

struct CodepointClass {
  CodepointKind kind = CodepointKind::Other;
  /// Index into the 51-symbol compatibility table; set only for StandaloneJamo.
  int standalone_index = -1;

  friend bool operator==(const CodepointClass&, const CodepointClass&) = default;
};

enum class JamoSlot { First, Second, Third };

struct SlotPosition {
  JamoSlot slot = JamoSlot::First;
  /// 0-based index within the slot inventory (19 / 21 / 27 non-empty finals).
  int index = 0;

  friend bool operator==(const SlotPosition&, const SlotPosition&) = default;
};

CodepointClass classify_codepoint(char32_t cp) noexcept;

bool is_precomposed_syllable(char32_t cp) noexcept;

/// Throws DomainError unless `syllable` is one of the 11,172 precomposed
/// syllables.
JamoTriple decompose(char32_t syllable);

/// Throws DomainError if any index is outside its slot inventory.
char32_t compose(const JamoTriple& triple);

/// Where a standalone letter lives in the syllable-slot layout. Consonants
/// prefer the first-sound slot and fall back to the third (cluster finals such
/// as ㅄ occur only there); vowels map to the second slot.
SlotPosition standalone_slot(int standalone_index);

/// Code point of the standalone letter at `standalone_index` (0..50).
char32_t standalone_letter(int standalone_index);

std::string to_string(CodepointKind kind);

}  // namespace kchar
