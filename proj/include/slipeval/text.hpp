// Copyright 2026 The slipeval Authors.
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

#ifndef SLIPEVAL_TEXT_HPP_
#define SLIPEVAL_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

// Small UTF-8 and whitespace helpers shared by the parsers.
namespace slipeval::text {

// Invalid sequences decode to U+FFFD.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);
void append_utf8(std::string& out, char32_t cp);

// Simple (1:1) lowercase mapping for Latin, Greek and Cyrillic letters.
char32_t fold_case(char32_t cp);

bool is_space(char32_t cp);

std::string_view trim(std::string_view s);

// Splits on runs of ASCII whitespace; no empty pieces.
std::vector<std::string> split_whitespace(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Case-insensitive ASCII comparison.
bool iequals(std::string_view a, std::string_view b);

std::string ascii_lower(std::string_view s);

}  // namespace slipeval::text

#endif  // SLIPEVAL_TEXT_HPP_
