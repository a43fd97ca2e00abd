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

#include "slipeval/align.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "slipeval/edit_distance.hpp"
#include "slipeval/errors.hpp"
#include "slipeval/text.hpp"

namespace slipeval {

void AlignConfig::validate() const {
  if (!(window_radius_s > 0.0) || !std::isfinite(window_radius_s)) {
    throw ConfigError("window_radius_s must be a positive number");
  }
  if (!(min_similarity >= 0.0 && min_similarity <= 1.0)) {
    throw ConfigError("min_similarity must be in [0, 1]");
  }
}

AlignedSpan failed_span(const std::string& record_id) {
  AlignedSpan span;
  span.record_id = record_id;
  return span;
}

NormalizedContext normalized_context(const ErrorRecord& record) {
  NormalizedContext out;
  for (std::size_t i = 0; i < record.context_words.size(); ++i) {
    std::string w = normalize(record.context_words[i]);
    if (w.empty()) continue;
    if (i == record.error_word) out.error_word = out.words.size();
    out.words.push_back(std::move(w));
  }
  return out;
}

namespace {

struct Candidate {
  std::size_t start = 0;  // index into the window's word list
  std::size_t length = 0;
  std::size_t distance = 0;
  std::size_t longest = 0;

  // similarity = 1 - distance / longest, compared without rounding
  bool better_than(const Candidate& o) const {
    return distance * o.longest < o.distance * longest;
  }
};

}  // namespace

AlignedSpan align_error(const ErrorRecord& record, const Transcript& transcript,
                        const AlignConfig& config) {
  if (record.audio_id != transcript.audio_id) {
    throw std::invalid_argument("record " + record.record_id + " belongs to '" +
                                record.audio_id + "', transcript is '" +
                                transcript.audio_id + "'");
  }
  AlignedSpan span = failed_span(record.record_id);
  const NormalizedContext ctx = normalized_context(record);
  if (ctx.words.empty()) return span;

  const auto window =
      tokens_in_window(transcript, record.timestamp_s, config.window_radius_s);
  if (!window) return span;

  // Window words that survive normalization, with their absolute indices.
  std::vector<std::string> words;
  std::vector<std::size_t> absolute;
  for (std::size_t i = window->first; i < window->last; ++i) {
    std::string w = normalize(transcript.tokens[i].text);
    if (w.empty()) continue;
    words.push_back(std::move(w));
    absolute.push_back(i);
  }
  if (words.empty()) return span;

  const std::u32string target = text::decode_utf8(text::join(ctx.words, " "));
  std::vector<std::u32string> chars;
  chars.reserve(words.size());
  for (const auto& w : words) chars.push_back(text::decode_utf8(w));

  const std::size_t n = ctx.words.size();
  const std::size_t min_len = n > config.max_span_slack ? n - config.max_span_slack : 1;
  const std::size_t max_len = n + config.max_span_slack;
  const std::size_t cols = target.size();

  // For each start, grow the span one character at a time against the full
  // context; the last cell after each word is that span's distance.
  std::optional<Candidate> best;
  std::vector<std::size_t> row(cols + 1);
  std::vector<std::size_t> next(cols + 1);
  for (std::size_t start = 0; start < words.size(); ++start) {
    std::iota(row.begin(), row.end(), std::size_t{0});
    std::size_t span_chars = 0;
    const auto feed = [&](char32_t c) {
      next[0] = row[0] + 1;
      for (std::size_t j = 1; j <= cols; ++j) {
        const std::size_t sub = row[j - 1] + (target[j - 1] == c ? 0 : 1);
        next[j] = std::min({sub, row[j] + 1, next[j - 1] + 1});
      }
      row.swap(next);
      ++span_chars;
    };
    for (std::size_t len = 1; len <= max_len && start + len <= words.size(); ++len) {
      if (len > 1) feed(U' ');
      for (char32_t c : chars[start + len - 1]) feed(c);
      if (len < min_len) continue;
      Candidate cand{start, len, row[cols], std::max(span_chars, cols)};
      if (!best || cand.better_than(*best)) best = cand;
    }
  }
  if (!best) return span;

  span.begin = absolute[best->start];
  span.end = absolute[best->start + best->length - 1] + 1;
  span.similarity = 1.0 - static_cast<double>(best->distance) /
                              static_cast<double>(best->longest);
  span.failed = span.similarity < config.min_similarity;

  if (ctx.error_word) {
    const std::span<const std::string> chosen(words.data() + best->start, best->length);
    const TokenAlignment ta = token_levenshtein(ctx.words, chosen);
    for (const auto& [ci, si] : ta.pairing) {
      if (ci == *ctx.error_word) {
        span.error_token_index = absolute[best->start + si];
        break;
      }
    }
  }
  return span;
}

}  // namespace slipeval
