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

#ifndef SLIPEVAL_CLASSIFY_HPP_
#define SLIPEVAL_CLASSIFY_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slipeval/align.hpp"
#include "slipeval/corpus.hpp"
#include "slipeval/transcript.hpp"

namespace slipeval {

enum class Outcome { Corrected, Faithful, Incorrect };

inline constexpr Outcome kOutcomes[] = {Outcome::Corrected, Outcome::Faithful,
                                        Outcome::Incorrect};

std::string_view to_string(Outcome o);
std::optional<Outcome> parse_outcome(std::string_view s);

enum class Diagnostic : std::uint8_t {
  AlignmentFailed = 1 << 0,
  NoIntendedWord = 1 << 1,
  PrefixMatched = 1 << 2,
  // Intended word and error surface normalize to the same string.
  DegenerateAnnotation = 1 << 3,
};

inline constexpr Diagnostic kDiagnostics[] = {
    Diagnostic::AlignmentFailed, Diagnostic::NoIntendedWord,
    Diagnostic::PrefixMatched, Diagnostic::DegenerateAnnotation};

std::string_view to_string(Diagnostic d);
std::optional<Diagnostic> parse_diagnostic(std::string_view s);

class DiagnosticSet {
 public:
  void add(Diagnostic d) { bits_ |= static_cast<std::uint8_t>(d); }
  bool has(Diagnostic d) const { return (bits_ & static_cast<std::uint8_t>(d)) != 0; }
  bool empty() const { return bits_ == 0; }

  bool operator==(const DiagnosticSet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

struct ClassifyOptions {
  // Let an incomplete error's fragment match a longer slot token.
  bool prefix_match = true;
  std::size_t min_prefix_length = 2;
};

struct ClassifiedError {
  std::string record_id;
  Outcome outcome = Outcome::Incorrect;
  std::optional<std::string> matched_text;
  AlignedSpan span;
  DiagnosticSet diagnostics;

  bool operator==(const ClassifiedError&) const = default;
};

// Judges only the transcript token aligned to the error slot:
//   1. alignment failed                     -> Incorrect (+AlignmentFailed)
//   2. slot == intended word                -> Corrected
//   3. slot == error surface                -> Faithful
//   4. incomplete error, surface is a proper
//      prefix of the slot (>= min length)   -> Faithful (+PrefixMatched)
//   5. otherwise                            -> Incorrect
// `tokens` is the transcript the span indexes into (may be empty when the
// span failed).
ClassifiedError classify(const ErrorRecord& record, const AlignedSpan& span,
                         std::span<const WordToken> tokens,
                         const ClassifyOptions& options = {});

struct OutcomeCounts {
  std::size_t corrected = 0;
  std::size_t faithful = 0;
  std::size_t incorrect = 0;

  void add(Outcome o);
  std::size_t total() const { return corrected + faithful + incorrect; }
  std::size_t get(Outcome o) const;

  bool operator==(const OutcomeCounts&) const = default;
};

OutcomeCounts count_outcomes(std::span<const ClassifiedError> results);
OutcomeCounts count_outcomes(std::span<const Outcome> outcomes);

// (Corrected + Faithful) / total. Throws EmptyInput.
double accuracy(const OutcomeCounts& counts);
double accuracy(std::span<const Outcome> outcomes);

// One JSON object per record, keys in a fixed order.
std::string to_jsonl(const ClassifiedError& result);
// Reads back what to_jsonl writes; span fields beyond similarity are not
// serialized. Throws SchemaError.
ClassifiedError parse_jsonl(std::string_view line);
std::vector<ClassifiedError> load_results(const std::filesystem::path& path);

}  // namespace slipeval

#endif  // SLIPEVAL_CLASSIFY_HPP_
