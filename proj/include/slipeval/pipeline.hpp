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

#ifndef SLIPEVAL_PIPELINE_HPP_
#define SLIPEVAL_PIPELINE_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slipeval/align.hpp"
#include "slipeval/classify.hpp"
#include "slipeval/corpus.hpp"
#include "slipeval/transcript.hpp"

namespace slipeval {

struct RunFlags {
  bool lenient_load = false;
  bool no_prefix_match = false;
  bool exclude_alignment_failures = false;
  double min_expected = 0.0;
};

// Mirrors the JSON config file:
//   {"corpus_path": ..., "transcript_dir": ..., "report_dir": ...,
//    "align": {"window_radius_s": 5.0, "min_similarity": 0.6, "max_span_slack": 3},
//    "flags": {"lenient_load": false, "no_prefix_match": false,
//              "exclude_alignment_failures": false, "min_expected": 0}}
// Every key is optional.
struct RunConfig {
  std::filesystem::path corpus_path;
  std::filesystem::path transcript_dir;
  std::filesystem::path report_dir;
  AlignConfig align;
  RunFlags flags;
};

// Throws ConfigError.
RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::filesystem::path& path);

using TranscriptMap = std::map<std::string, Transcript, std::less<>>;

// Loads <dir>/<audio_id>.json for every audio_id referenced by `records`.
// Missing files are skipped (their records fail alignment later) and noted
// in `warnings`; unreadable or malformed files throw SchemaError.
TranscriptMap load_transcripts(const std::filesystem::path& dir,
                               std::span<const ErrorRecord> records,
                               std::vector<std::string>& warnings);

// Aligns and classifies every record on `jobs` worker threads. The result
// is sorted by record_id whatever the worker count.
std::vector<ClassifiedError> classify_corpus(std::span<const ErrorRecord> records,
                                             const TranscriptMap& transcripts,
                                             const AlignConfig& align,
                                             const ClassifyOptions& options,
                                             std::size_t jobs = 1);

}  // namespace slipeval

#endif  // SLIPEVAL_PIPELINE_HPP_
