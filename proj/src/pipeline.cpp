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

#include "slipeval/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "slipeval/errors.hpp"

namespace slipeval {

namespace {

using nlohmann::json;

template <class T>
void read_key(const json& obj, const char* key, T& out) {
  if (const auto it = obj.find(key); it != obj.end() && !it->is_null()) {
    out = it->get<T>();
  }
}

}  // namespace

RunConfig parse_run_config(std::string_view json_text) {
  RunConfig cfg;
  try {
    const json doc = json::parse(json_text);
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    std::string s;
    if (read_key(doc, "corpus_path", s), !s.empty()) cfg.corpus_path = s;
    s.clear();
    if (read_key(doc, "transcript_dir", s), !s.empty()) cfg.transcript_dir = s;
    s.clear();
    if (read_key(doc, "report_dir", s), !s.empty()) cfg.report_dir = s;
    if (const auto it = doc.find("align"); it != doc.end()) {
      read_key(*it, "window_radius_s", cfg.align.window_radius_s);
      read_key(*it, "min_similarity", cfg.align.min_similarity);
      read_key(*it, "max_span_slack", cfg.align.max_span_slack);
    }
    if (const auto it = doc.find("flags"); it != doc.end()) {
      read_key(*it, "lenient_load", cfg.flags.lenient_load);
      read_key(*it, "no_prefix_match", cfg.flags.no_prefix_match);
      read_key(*it, "exclude_alignment_failures", cfg.flags.exclude_alignment_failures);
      read_key(*it, "min_expected", cfg.flags.min_expected);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  cfg.align.validate();
  if (!(cfg.flags.min_expected >= 0.0)) throw ConfigError("min_expected must be >= 0");
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

TranscriptMap load_transcripts(const std::filesystem::path& dir,
                               std::span<const ErrorRecord> records,
                               std::vector<std::string>& warnings) {
  std::set<std::string> ids;
  for (const auto& r : records) ids.insert(r.audio_id);
  TranscriptMap out;
  for (const auto& id : ids) {
    const auto path = dir / (id + ".json");
    if (!std::filesystem::exists(path)) {
      warnings.push_back("missing transcript " + path.string());
      continue;
    }
    TranscriptLoad load = load_transcript(path);
    for (auto& w : load.warnings) warnings.push_back(path.string() + ": " + w);
    if (load.transcript.audio_id != id) {
      throw SchemaError(path.string() + ": audio_id '" + load.transcript.audio_id +
                        "' does not match file name");
    }
    out.emplace(id, std::move(load.transcript));
  }
  return out;
}

std::vector<ClassifiedError> classify_corpus(std::span<const ErrorRecord> records,
                                             const TranscriptMap& transcripts,
                                             const AlignConfig& align,
                                             const ClassifyOptions& options,
                                             std::size_t jobs) {
  std::vector<ClassifiedError> results(records.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < records.size(); i = next++) {
      const ErrorRecord& rec = records[i];
      const auto it = transcripts.find(rec.audio_id);
      if (it == transcripts.end()) {
        results[i] = classify(rec, failed_span(rec.record_id), {}, options);
      } else {
        results[i] = classify(rec, align_error(rec, it->second, align),
                              it->second.tokens, options);
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, records.size()));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(work);
  }
  std::sort(results.begin(), results.end(),
            [](const auto& a, const auto& b) { return a.record_id < b.record_id; });
  return results;
}

}  // namespace slipeval
