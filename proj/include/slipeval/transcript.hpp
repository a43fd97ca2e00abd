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

#ifndef SLIPEVAL_TRANSCRIPT_HPP_
#define SLIPEVAL_TRANSCRIPT_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slipeval {

struct WordToken {
  std::string text;
  double start_s = 0.0;
  double end_s = 0.0;
  std::optional<double> confidence;

  bool operator==(const WordToken&) const = default;
};

struct TranscriptSegment {
  double start_s = 0.0;
  double end_s = 0.0;
  std::string text;

  bool operator==(const TranscriptSegment&) const = default;
};

// Word-level ASR output for one recording; tokens sorted by start time.
struct Transcript {
  std::string audio_id;
  std::vector<WordToken> tokens;
  std::vector<TranscriptSegment> segments;

  bool operator==(const Transcript&) const = default;
};

struct TranscriptLoad {
  Transcript transcript;
  std::vector<std::string> warnings;
};

// Adjacent tokens may overlap by this much before a warning is emitted.
inline constexpr double kOverlapTolerance_s = 0.050;

// Parses the WhisperX-shaped JSON document. When the document has no
// "audio_id" key, `fallback_audio_id` is used (a warning is recorded).
// Throws SchemaError.
TranscriptLoad parse_transcript(std::string_view json_text,
                                std::string_view fallback_audio_id = {});

// Falls back to the file stem for a missing "audio_id".
TranscriptLoad load_transcript(const std::filesystem::path& path);

// Serializes with each token nested under the last segment starting at or
// before it. Numbers are written in shortest round-trip form.
std::string transcript_to_json(const Transcript& transcript);

// Case-folds, strips leading/trailing punctuation from every word, keeps
// internal apostrophes (curly ones become ') and collapses whitespace.
std::string normalize(std::string_view text);

// Half-open token index range [first, last).
struct TokenWindow {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t size() const { return last - first; }
};

// Tokens with start_s in [center_s - radius_s, center_s + radius_s].
// nullopt signals an empty window. Throws std::invalid_argument when
// radius_s <= 0.
std::optional<TokenWindow> tokens_in_window(const Transcript& transcript,
                                            double center_s, double radius_s);

}  // namespace slipeval

#endif  // SLIPEVAL_TRANSCRIPT_HPP_
