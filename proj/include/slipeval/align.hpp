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

#ifndef SLIPEVAL_ALIGN_HPP_
#define SLIPEVAL_ALIGN_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "slipeval/corpus.hpp"
#include "slipeval/transcript.hpp"

namespace slipeval {

struct AlignConfig {
  double window_radius_s = 5.0;
  double min_similarity = 0.6;
  // Candidate spans may be this many tokens longer or shorter than the context.
  std::size_t max_span_slack = 3;

  // Throws ConfigError.
  void validate() const;

  bool operator==(const AlignConfig&) const = default;
};

// Transcript tokens matched to one error's annotated context.
struct AlignedSpan {
  std::string record_id;
  std::size_t begin = 0;  // token_range, half-open
  std::size_t end = 0;
  double similarity = 0.0;
  std::optional<std::size_t> error_token_index;
  bool failed = true;

  bool operator==(const AlignedSpan&) const = default;
};

AlignedSpan failed_span(const std::string& record_id);

// Normalized context words with the error word's index after dropping words
// that normalize to nothing.
struct NormalizedContext {
  std::vector<std::string> words;
  std::optional<std::size_t> error_word;
};

NormalizedContext normalized_context(const ErrorRecord& record);

// Searches every contiguous run of window tokens whose length is within
// max_span_slack of the context length, keeps the one with the highest
// character-level similarity to the normalized context (ties: earlier start,
// then shorter span) and maps the error word onto it with a token-level
// alignment. Failure is reported through AlignedSpan::failed.
AlignedSpan align_error(const ErrorRecord& record, const Transcript& transcript,
                        const AlignConfig& config = {});

}  // namespace slipeval

#endif  // SLIPEVAL_ALIGN_HPP_
