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

#ifndef SLIPEVAL_CORPUS_HPP_
#define SLIPEVAL_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slipeval/errors.hpp"
#include "slipeval/notation.hpp"

namespace slipeval {

enum class ErrorClass { Sound, Word };
enum class SoundErrorKind { Substitution, Deletion, Addition };
enum class WordPosition { Initial, Medial, Final };
enum class SyllablePosition { Onset, Nucleus, Coda };

std::string_view to_string(ErrorClass v);
std::string_view to_string(SoundErrorKind v);
std::string_view to_string(WordPosition v);
std::string_view to_string(SyllablePosition v);

// Case-insensitive; nullopt for unknown names.
std::optional<ErrorClass> parse_error_class(std::string_view s);
std::optional<SoundErrorKind> parse_sound_kind(std::string_view s);
std::optional<WordPosition> parse_word_position(std::string_view s);
std::optional<SyllablePosition> parse_syllable_position(std::string_view s);

// One annotated speech error and its condition cross-classification.
struct ErrorRecord {
  std::string record_id;
  std::string audio_id;
  double timestamp_s = 0.0;  // approximate error onset
  std::string context_text;  // notation included
  ParsedAnnotation annotation;
  ErrorClass error_class = ErrorClass::Word;
  std::optional<SoundErrorKind> sound_kind;
  bool contextual = false;
  bool corrected = false;
  bool complete = true;
  std::optional<WordPosition> word_position;
  std::optional<SyllablePosition> syllable_position;
  std::optional<std::string> intended_word;
  bool intended_low_confidence = false;

  // Derived from context_text: plain words and the error token's position.
  std::vector<std::string> context_words;
  std::size_t error_word = 0;

  bool operator==(const ErrorRecord&) const = default;
};

inline constexpr std::string_view kCorpusColumns[] = {
    "record_id",      "audio_id",          "timestamp_s",
    "context_text",   "error_class",       "sound_kind",
    "contextual",     "corrected",         "complete",
    "word_position",  "syllable_position", "intended_word",
    "intended_low_confidence"};

struct LoadOptions {
  // Skip failing rows instead of raising CorpusError.
  bool lenient = false;
  const SegmentMap* segment_map = nullptr;
};

struct CorpusLoad {
  std::vector<ErrorRecord> records;
  std::vector<RowError> errors;  // only non-empty in lenient mode
  std::vector<std::string> warnings;
};

// Throws SchemaError for header problems and, unless lenient, CorpusError
// carrying every failing row.
CorpusLoad load_corpus(const std::filesystem::path& path,
                       const LoadOptions& options = {});
CorpusLoad read_corpus(std::istream& in, const LoadOptions& options = {});

// Fills annotation, context_words and error_word from context_text, applies
// the inline intended-word override and checks per-record invariants.
// Returns an error message, or nullopt when the record is valid. Warnings
// are appended to `warnings` when non-null.
std::optional<std::string> finalize_record(
    ErrorRecord& record, const SegmentMap* segment_map = nullptr,
    std::vector<std::string>* warnings = nullptr);

// Canonical TSV; timestamps are written in shortest round-trip form.
void write_corpus(std::ostream& out, std::span<const ErrorRecord> records);

// Fraction of records carrying an intended word; the loader warns below 0.9.
double intended_coverage(std::span<const ErrorRecord> records);

}  // namespace slipeval

#endif  // SLIPEVAL_CORPUS_HPP_
