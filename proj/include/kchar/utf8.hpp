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

#include <string>
#include <string_view>

namespace kchar::utf8 {

/// Decodes UTF-8. Malformed sequences, overlongs and surrogates decode to
/// U+FFFD, one per offending lead byte.
std::u32string decode(std::string_view bytes);

std::string encode(char32_t cp);
std::string encode(std::u32string_view text);

/// "U+AC00"-style label.
std::string codepoint_label(char32_t cp);

}  // namespace kchar::utf8
