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

#ifndef SLIPEVAL_NOTATION_HPP_
#define SLIPEVAL_NOTATION_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace slipeval {

// One bracketed `[X]` group. `index` is the byte offset in the error surface
// where the segment starts (or, for deletions, where it was dropped).
struct MispronouncedSegment {
  std::size_t index = 0;
  std::string segment;

  bool operator==(const MispronouncedSegment&) const = default;
};

// Decoded form of an error-notation token such as `/Re[k]ar=`.
//
//   /X            error word
//   X=            incomplete (aborted) word
//   [X]           mispronounced sound, spliced literally into the surface
//   (Intended: Y) inline intended word
struct ParsedAnnotation {
  std::string error_surface;
  std::string raw_notation;
  bool incomplete = false;
  std::vector<MispronouncedSegment> mispronounced_segments;
  std::optional<std::string> intended_inline;

  bool operator==(const ParsedAnnotation&) const = default;
};

// Optional rewrite of bracketed segments (e.g. IPA symbol -> graphemes)
// applied before splicing.
using SegmentMap = std::map<std::string, std::string, std::less<>>;

// Reads `ipa<TAB>graphemes` lines; blank lines and `#` comments are skipped.
SegmentMap load_segment_map(const std::filesystem::path& path);

struct NotationOptions {
  // Bracketed segments mark deleted sounds and are left out of the surface.
  bool deletion = false;
  const SegmentMap* segment_map = nullptr;
};

// Parses a bare notation token (leading `/`, no surrounding punctuation),
// optionally followed by an `(Intended: X)` group.
// Throws MalformedNotation.
ParsedAnnotation parse_notation(std::string_view token,
                                const NotationOptions& options = {});

// Inverse of parse_notation for annotations parsed without a segment map.
std::string render_notation(const ParsedAnnotation& annotation,
                            bool deletion = false);

// A context excerpt with all notation resolved to plain words.
struct PlainContext {
  std::vector<std::string> words;
  // Position in `words` of the first `/`-marked token.
  std::optional<std::size_t> error_word;
  std::optional<ParsedAnnotation> annotation;
};

// `error_options` applies to the first `/`-marked token only; other markup
// (secondary `/X`, `X=`, `[X]`) is resolved with default options.
PlainContext read_context(std::string_view context_text,
                          const NotationOptions& error_options = {});

// Context with notation markers removed, single-spaced.
std::string strip_notation(std::string_view context_text,
                           const NotationOptions& error_options = {});

}  // namespace slipeval

#endif  // SLIPEVAL_NOTATION_HPP_
