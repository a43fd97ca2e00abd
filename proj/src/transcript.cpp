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

#include "slipeval/transcript.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "json.hpp"
#include "slipeval/errors.hpp"
#include "slipeval/text.hpp"

namespace slipeval {

namespace {

using nlohmann::json;

std::optional<double> number_field(const json& obj, const char* key,
                                   std::string_view where) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) {
    throw SchemaError(fmt::format("{}: \"{}\" must be a number", where, key));
  }
  const double v = it->get<double>();
  if (!std::isfinite(v)) {
    throw SchemaError(fmt::format("{}: \"{}\" is not finite", where, key));
  }
  return v;
}

bool is_strippable(char32_t c) {
  switch (c) {
    case U'.': case U',': case U'!': case U'?': case U';': case U':':
    case U'"': case U'\'': case U'(': case U')': case U'[': case U']':
    case U'{': case U'}': case U'-':
    case U'…': case U'—': case U'–': case U'“': case U'”': case U'‘':
    case U'’': case U'«': case U'»':
      return true;
    default:
      return false;
  }
}

}  // namespace

TranscriptLoad parse_transcript(std::string_view json_text,
                                std::string_view fallback_audio_id) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("transcript is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("transcript must be a JSON object");

  TranscriptLoad out;
  Transcript& t = out.transcript;
  if (const auto it = doc.find("audio_id"); it != doc.end()) {
    if (!it->is_string() || it->get<std::string>().empty()) {
      throw SchemaError("\"audio_id\" must be a non-empty string");
    }
    t.audio_id = it->get<std::string>();
  } else if (!fallback_audio_id.empty()) {
    t.audio_id = std::string(fallback_audio_id);
    out.warnings.push_back(
        fmt::format("no \"audio_id\"; using '{}'", fallback_audio_id));
  } else {
    throw SchemaError("transcript has no \"audio_id\"");
  }

  const auto segs = doc.find("segments");
  if (segs == doc.end() || !segs->is_array()) {
    throw SchemaError("transcript must have a \"segments\" array");
  }
  std::size_t unanchored = 0;
  std::size_t dropped = 0;
  for (std::size_t si = 0; si < segs->size(); ++si) {
    const json& seg = (*segs)[si];
    const std::string where = fmt::format("segments[{}]", si);
    if (!seg.is_object()) throw SchemaError(where + " is not an object");
    TranscriptSegment segment;
    segment.start_s = number_field(seg, "start", where).value_or(0.0);
    segment.end_s = number_field(seg, "end", where).value_or(segment.start_s);
    if (const auto it = seg.find("text"); it != seg.end() && it->is_string()) {
      segment.text = it->get<std::string>();
    }
    t.segments.push_back(segment);

    const auto words = seg.find("words");
    if (words == seg.end()) continue;
    if (!words->is_array()) throw SchemaError(where + ".words must be an array");
    double cursor = segment.start_s;
    for (std::size_t wi = 0; wi < words->size(); ++wi) {
      const json& w = (*words)[wi];
      const std::string wwhere = fmt::format("{}.words[{}]", where, wi);
      if (!w.is_object()) throw SchemaError(wwhere + " is not an object");
      const auto text_it = w.find("word");
      if (text_it == w.end() || !text_it->is_string()) {
        throw SchemaError(wwhere + ": missing \"word\" string");
      }
      WordToken tok;
      tok.text = std::string(text::trim(text_it->get<std::string>()));
      if (tok.text.empty()) {
        ++dropped;
        continue;
      }
      const auto start = number_field(w, "start", wwhere);
      const auto end = number_field(w, "end", wwhere);
      // Forced aligners leave some tokens (numerals, symbols) unanchored.
      if (!start) ++unanchored;
      tok.start_s = start.value_or(cursor);
      tok.end_s = end.value_or(tok.start_s);
      if (tok.start_s < 0.0) throw SchemaError(wwhere + ": negative start");
      if (tok.end_s < tok.start_s) tok.end_s = tok.start_s;
      if (auto score = number_field(w, "score", wwhere)) {
        if (*score < 0.0 || *score > 1.0) {
          throw SchemaError(wwhere + ": score outside [0, 1]");
        }
        tok.confidence = score;
      }
      cursor = tok.end_s;
      t.tokens.push_back(std::move(tok));
    }
  }
  if (unanchored) {
    out.warnings.push_back(fmt::format(
        "{} word(s) without timestamps anchored to the preceding word", unanchored));
  }
  if (dropped) {
    out.warnings.push_back(fmt::format("{} empty word(s) dropped", dropped));
  }

  const auto by_start = [](const WordToken& a, const WordToken& b) {
    return a.start_s < b.start_s;
  };
  if (!std::is_sorted(t.tokens.begin(), t.tokens.end(), by_start)) {
    std::stable_sort(t.tokens.begin(), t.tokens.end(), by_start);
    out.warnings.push_back("non-monotonic word timestamps; tokens re-sorted");
  }
  std::size_t overlaps = 0;
  for (std::size_t i = 1; i < t.tokens.size(); ++i) {
    if (t.tokens[i].start_s < t.tokens[i - 1].end_s - kOverlapTolerance_s) ++overlaps;
  }
  if (overlaps) {
    out.warnings.push_back(
        fmt::format("{} word(s) overlap their predecessor by more than 50 ms", overlaps));
  }
  return out;
}

TranscriptLoad load_transcript(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open transcript: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_transcript(buf.str(), path.stem().string());
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

std::string transcript_to_json(const Transcript& t) {
  json doc;
  doc["audio_id"] = t.audio_id;
  json segs = json::array();
  for (const auto& s : t.segments) {
    segs.push_back({{"start", s.start_s},
                    {"end", s.end_s},
                    {"text", s.text},
                    {"words", json::array()}});
  }
  for (const auto& tok : t.tokens) {
    json w = {{"word", tok.text}, {"start", tok.start_s}, {"end", tok.end_s}};
    if (tok.confidence) w["score"] = *tok.confidence;
    if (segs.empty()) {
      segs.push_back({{"start", tok.start_s},
                      {"end", tok.end_s},
                      {"text", ""},
                      {"words", json::array()}});
    }
    std::size_t k = 0;
    for (std::size_t i = 0; i < t.segments.size(); ++i) {
      if (t.segments[i].start_s <= tok.start_s) k = i;
    }
    segs[k]["words"].push_back(std::move(w));
  }
  doc["segments"] = std::move(segs);
  return doc.dump(1) + "\n";
}

std::string normalize(std::string_view input) {
  const std::u32string cps = text::decode_utf8(input);
  std::string out;
  out.reserve(input.size());
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && text::is_space(cps[i])) ++i;
    std::size_t b = i;
    while (i < cps.size() && !text::is_space(cps[i])) ++i;
    std::size_t e = i;
    while (b < e && is_strippable(cps[b])) ++b;
    while (e > b && is_strippable(cps[e - 1])) --e;
    if (b == e) continue;
    if (!out.empty()) out += ' ';
    for (std::size_t k = b; k < e; ++k) {
      const char32_t c = cps[k] == U'’' ? U'\'' : text::fold_case(cps[k]);
      text::append_utf8(out, c);
    }
  }
  return out;
}

std::optional<TokenWindow> tokens_in_window(const Transcript& t, double center_s,
                                            double radius_s) {
  if (!(radius_s > 0.0)) throw std::invalid_argument("radius_s must be > 0");
  const double lo = center_s - radius_s;
  const double hi = center_s + radius_s;
  const auto first = std::lower_bound(
      t.tokens.begin(), t.tokens.end(), lo,
      [](const WordToken& tok, double v) { return tok.start_s < v; });
  const auto last = std::upper_bound(
      first, t.tokens.end(), hi,
      [](double v, const WordToken& tok) { return v < tok.start_s; });
  if (first == last) return std::nullopt;
  return TokenWindow{static_cast<std::size_t>(first - t.tokens.begin()),
                     static_cast<std::size_t>(last - t.tokens.begin())};
}

}  // namespace slipeval
