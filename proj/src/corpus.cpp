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

#include "slipeval/corpus.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <fmt/format.h>

#include "slipeval/text.hpp"

namespace slipeval {

namespace {

template <class E, std::size_t N>
std::optional<E> lookup(std::string_view s,
                        const std::array<std::pair<std::string_view, E>, N>& names) {
  for (const auto& [name, value] : names) {
    if (text::iequals(name, s)) return value;
  }
  return std::nullopt;
}

constexpr std::array<std::pair<std::string_view, ErrorClass>, 2> kErrorClasses{
    {{"sound", ErrorClass::Sound}, {"word", ErrorClass::Word}}};
constexpr std::array<std::pair<std::string_view, SoundErrorKind>, 3> kSoundKinds{
    {{"substitution", SoundErrorKind::Substitution},
     {"deletion", SoundErrorKind::Deletion},
     {"addition", SoundErrorKind::Addition}}};
constexpr std::array<std::pair<std::string_view, WordPosition>, 3> kWordPositions{
    {{"initial", WordPosition::Initial},
     {"medial", WordPosition::Medial},
     {"final", WordPosition::Final}}};
constexpr std::array<std::pair<std::string_view, SyllablePosition>, 3>
    kSyllablePositions{{{"onset", SyllablePosition::Onset},
                        {"nucleus", SyllablePosition::Nucleus},
                        {"coda", SyllablePosition::Coda}}};

template <class E, std::size_t N>
std::string_view name_of(E v, const std::array<std::pair<std::string_view, E>, N>& names) {
  for (const auto& [name, value] : names) {
    if (value == v) return name;
  }
  return "?";
}

constexpr std::size_t kNumColumns = std::size(kCorpusColumns);

struct RowParseError {
  std::string message;
};

bool parse_bool(std::string_view field, std::string_view column) {
  if (field == "true") return true;
  if (field == "false") return false;
  throw RowParseError{fmt::format("{}: expected true|false, got '{}'", column, field)};
}

template <class E>
std::optional<E> parse_optional_enum(std::string_view field, std::string_view column,
                                     std::optional<E> (*parse)(std::string_view)) {
  if (field.empty()) return std::nullopt;
  auto v = parse(field);
  if (!v) throw RowParseError{fmt::format("{}: unknown value '{}'", column, field)};
  return v;
}

double parse_timestamp(std::string_view field) {
  double v = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw RowParseError{fmt::format("timestamp_s: not a number '{}'", field)};
  }
  return v;
}

ErrorRecord parse_row(const std::vector<std::string_view>& f,
                      const std::array<std::size_t, kNumColumns>& col) {
  const auto at = [&](std::size_t c) { return f[col[c]]; };
  ErrorRecord rec;
  rec.record_id = std::string(text::trim(at(0)));
  rec.audio_id = std::string(text::trim(at(1)));
  rec.timestamp_s = parse_timestamp(text::trim(at(2)));
  rec.context_text = std::string(at(3));
  auto cls = parse_error_class(at(4));
  if (!cls) throw RowParseError{fmt::format("error_class: unknown value '{}'", at(4))};
  rec.error_class = *cls;
  rec.sound_kind = parse_optional_enum<SoundErrorKind>(at(5), "sound_kind", parse_sound_kind);
  rec.contextual = parse_bool(at(6), "contextual");
  rec.corrected = parse_bool(at(7), "corrected");
  rec.complete = parse_bool(at(8), "complete");
  rec.word_position =
      parse_optional_enum<WordPosition>(at(9), "word_position", parse_word_position);
  rec.syllable_position = parse_optional_enum<SyllablePosition>(
      at(10), "syllable_position", parse_syllable_position);
  if (const auto w = text::trim(at(11)); !w.empty()) rec.intended_word = std::string(w);
  rec.intended_low_confidence = parse_bool(at(12), "intended_low_confidence");
  return rec;
}

}  // namespace

std::string_view to_string(ErrorClass v) { return name_of(v, kErrorClasses); }
std::string_view to_string(SoundErrorKind v) { return name_of(v, kSoundKinds); }
std::string_view to_string(WordPosition v) { return name_of(v, kWordPositions); }
std::string_view to_string(SyllablePosition v) { return name_of(v, kSyllablePositions); }

std::optional<ErrorClass> parse_error_class(std::string_view s) {
  return lookup(s, kErrorClasses);
}
std::optional<SoundErrorKind> parse_sound_kind(std::string_view s) {
  return lookup(s, kSoundKinds);
}
std::optional<WordPosition> parse_word_position(std::string_view s) {
  return lookup(s, kWordPositions);
}
std::optional<SyllablePosition> parse_syllable_position(std::string_view s) {
  return lookup(s, kSyllablePositions);
}

std::optional<std::string> finalize_record(ErrorRecord& rec,
                                           const SegmentMap* segment_map,
                                           std::vector<std::string>* warnings) {
  const auto warn = [&](std::string msg) {
    if (warnings) warnings->push_back(fmt::format("{}: {}", rec.record_id, msg));
  };
  if (rec.record_id.empty()) return "record_id is empty";
  if (rec.audio_id.empty()) return "audio_id is empty";
  if (!std::isfinite(rec.timestamp_s) || rec.timestamp_s < 0.0) {
    return fmt::format("timestamp_s must be finite and >= 0, got {}", rec.timestamp_s);
  }
  const bool sound = rec.error_class == ErrorClass::Sound;
  if (sound && !rec.sound_kind) return "sound_kind is required for sound errors";
  if (!sound && rec.sound_kind) return "sound_kind is only valid for sound errors";
  if (!sound && rec.word_position) return "word_position is only valid for sound errors";
  if (!sound && rec.syllable_position) {
    return "syllable_position is only valid for sound errors";
  }

  NotationOptions opts;
  opts.deletion = rec.sound_kind == SoundErrorKind::Deletion;
  opts.segment_map = segment_map;
  PlainContext ctx;
  try {
    ctx = read_context(rec.context_text, opts);
  } catch (const MalformedNotation& e) {
    return fmt::format("context_text: {}", e.what());
  }
  if (!ctx.error_word || !ctx.annotation) {
    return "context_text has no '/'-marked error token";
  }
  rec.annotation = std::move(*ctx.annotation);
  rec.context_words = std::move(ctx.words);
  rec.error_word = *ctx.error_word;

  if (rec.complete == rec.annotation.incomplete) {
    return fmt::format("complete={} contradicts notation '{}'", rec.complete,
                       rec.annotation.raw_notation);
  }
  if (const auto& inline_word = rec.annotation.intended_inline) {
    if (rec.intended_word && *rec.intended_word != *inline_word) {
      warn(fmt::format("inline intended word '{}' overrides column value '{}'",
                       *inline_word, *rec.intended_word));
    }
    rec.intended_word = *inline_word;
  }
  if (!rec.intended_word && !rec.intended_low_confidence) {
    warn("no intended word; record can never be classified corrected");
  }
  return std::nullopt;
}

CorpusLoad read_corpus(std::istream& in, const LoadOptions& options) {
  CorpusLoad out;
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("corpus has no header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);

  const auto header = text::split(line, '\t');
  std::array<std::size_t, kNumColumns> col{};
  std::vector<std::string> missing;
  for (std::size_t c = 0; c < kNumColumns; ++c) {
    std::size_t found = header.size();
    for (std::size_t h = 0; h < header.size(); ++h) {
      if (text::trim(header[h]) == kCorpusColumns[c]) {
        found = h;
        break;
      }
    }
    if (found == header.size()) missing.emplace_back(kCorpusColumns[c]);
    col[c] = found;
  }
  if (!missing.empty()) {
    throw SchemaError("corpus header is missing columns: " + text::join(missing, ", "));
  }

  std::unordered_set<std::string> seen_ids;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    const auto fields = text::split(line, '\t');
    if (fields.size() != header.size()) {
      out.errors.push_back({lineno, fmt::format("expected {} fields, got {}",
                                                header.size(), fields.size())});
      continue;
    }
    ErrorRecord rec;
    try {
      rec = parse_row(fields, col);
    } catch (const RowParseError& e) {
      out.errors.push_back({lineno, e.message});
      continue;
    }
    if (auto err = finalize_record(rec, options.segment_map, &out.warnings)) {
      out.errors.push_back({lineno, *err});
      continue;
    }
    if (!seen_ids.insert(rec.record_id).second) {
      out.errors.push_back({lineno, "duplicate record_id '" + rec.record_id + "'"});
      continue;
    }
    out.records.push_back(std::move(rec));
  }

  if (!out.errors.empty() && !options.lenient) throw CorpusError(out.errors);
  if (!out.records.empty()) {
    const double coverage = intended_coverage(out.records);
    if (coverage < 0.9) {
      out.warnings.push_back(fmt::format(
          "only {:.1f}% of records carry an intended word (expected >= 90%)",
          coverage * 100.0));
    }
  }
  return out;
}

CorpusLoad load_corpus(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open corpus: " + path.string());
  return read_corpus(in, options);
}

double intended_coverage(std::span<const ErrorRecord> records) {
  if (records.empty()) return 1.0;
  std::size_t with = 0;
  for (const auto& r : records) with += r.intended_word.has_value();
  return static_cast<double>(with) / static_cast<double>(records.size());
}

void write_corpus(std::ostream& out, std::span<const ErrorRecord> records) {
  for (std::size_t c = 0; c < kNumColumns; ++c) {
    out << (c ? "\t" : "") << kCorpusColumns[c];
  }
  out << '\n';
  const auto opt = [](const auto& v) -> std::string {
    return v ? std::string(to_string(*v)) : std::string();
  };
  const auto b = [](bool v) { return v ? "true" : "false"; };
  for (const auto& r : records) {
    if (r.context_text.find_first_of("\t\n\r") != std::string::npos) {
      throw SchemaError("context_text of " + r.record_id + " contains a tab or newline");
    }
    out << r.record_id << '\t' << r.audio_id << '\t' << fmt::format("{}", r.timestamp_s)
        << '\t' << r.context_text << '\t' << to_string(r.error_class) << '\t'
        << opt(r.sound_kind) << '\t' << b(r.contextual) << '\t' << b(r.corrected) << '\t'
        << b(r.complete) << '\t' << opt(r.word_position) << '\t'
        << opt(r.syllable_position) << '\t' << r.intended_word.value_or("") << '\t'
        << b(r.intended_low_confidence) << '\n';
  }
}

}  // namespace slipeval
