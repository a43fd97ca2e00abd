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

#include "slipeval/fixture.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

#include "json.hpp"
#include "slipeval/classify.hpp"
#include "slipeval/errors.hpp"
#include "slipeval/text.hpp"

namespace slipeval {

namespace {

using nlohmann::json;

constexpr std::string_view kConsonants = "bdfgklmnprstvz";
constexpr std::string_view kVowels = "aeiou";
constexpr std::size_t kGapWords = 30;
constexpr std::size_t kSideWords = 3;
constexpr std::size_t kSegmentWords = 12;

bool is_vowel(char c) { return kVowels.find(c) != std::string_view::npos; }

// Portable bounded draw; std distributions are implementation-defined.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) {
    const std::uint64_t range = n;
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % range;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return static_cast<std::size_t>(v % range);
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  char pick(std::string_view from) { return from[below(from.size())]; }

  std::string word() {
    const std::size_t syllables = 2 + below(2);
    std::string w;
    for (std::size_t s = 0; s < syllables; ++s) {
      w += pick(kConsonants);
      w += pick(kVowels);
    }
    return w;
  }

 private:
  std::mt19937_64 engine_;
};

struct Planned {
  std::size_t cell = 0;
  std::size_t index = 0;
  Outcome outcome = Outcome::Corrected;
};

std::array<std::size_t, 3> split_counts(const FixtureCell& cell) {
  const std::array<double, 3> fracs{cell.corrected_frac, cell.faithful_frac,
                                    cell.incorrect_frac};
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> remainders{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double exact = fracs[i] * static_cast<double>(cell.count);
    counts[i] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    remainders[i] = exact - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  while (assigned < cell.count) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < 3; ++i) {
      if (remainders[i] > remainders[best]) best = i;
    }
    ++counts[best];
    remainders[best] = -1.0;
    ++assigned;
  }
  return counts;
}

struct Built {
  ErrorRecord record;
  std::vector<std::string> transcript_words;
  std::size_t slot = 0;  // offset of the error slot in transcript_words
};

Built build_record(Draw& draw, const FixtureCell& cell, Outcome outcome) {
  Built b;
  ErrorRecord& r = b.record;
  r.error_class = cell.error_class;
  r.contextual = cell.contextual;
  r.corrected = cell.corrected;
  r.complete = cell.complete;

  std::string intended;
  std::string notation;
  std::string surface;
  char contextual_unit = 0;
  std::string full_error;
  if (cell.error_class == ErrorClass::Word) {
    intended = draw.word();
    do {
      full_error = draw.word();
    } while (full_error == intended);
    surface = cell.complete ? full_error
                            : full_error.substr(0, std::max<std::size_t>(2, full_error.size() / 2));
    notation = "/" + surface + (cell.complete ? "" : "=");
  } else {
    intended = draw.word();
    const std::size_t len = intended.size();
    const std::size_t p = draw.below(cell.complete ? len : len - 1);
    const bool vowel = is_vowel(intended[p]);
    char x;
    do {
      x = draw.pick(vowel ? kVowels : kConsonants);
    } while (x == intended[p]);
    full_error = intended;
    full_error[p] = x;
    contextual_unit = x;
    const std::size_t keep = cell.complete ? len : std::max<std::size_t>(p + 1, 2);
    surface = full_error.substr(0, keep);
    notation = "/" + intended.substr(0, p) + "[" + std::string(1, x) + "]" +
               full_error.substr(p + 1, keep - p - 1) + (cell.complete ? "" : "=");
    r.sound_kind = SoundErrorKind::Substitution;
    r.word_position = p == 0 ? WordPosition::Initial
                      : p + 1 == len ? WordPosition::Final
                                     : WordPosition::Medial;
    r.syllable_position = vowel ? SyllablePosition::Nucleus : SyllablePosition::Onset;
  }
  r.intended_word = intended;

  std::string other;
  do {
    other = draw.word();
  } while (other == intended || other == surface || other.starts_with(surface));

  std::vector<std::string> pre(kSideWords);
  std::vector<std::string> post(kSideWords);
  for (auto& w : pre) w = draw.word();
  for (auto& w : post) w = draw.word();
  if (cell.contextual) {
    post.back() = cell.error_class == ErrorClass::Word
                      ? full_error
                      : std::string(1, contextual_unit) + draw.word();
  }

  std::vector<std::string> context = pre;
  context.push_back(notation + (cell.corrected ? "," : ""));
  if (cell.corrected) context.push_back(intended);
  context.insert(context.end(), post.begin(), post.end());
  r.context_text = text::join(context, " ");

  b.transcript_words = pre;
  b.transcript_words.front()[0] =
      static_cast<char>(std::toupper(static_cast<unsigned char>(pre.front()[0])));
  b.slot = b.transcript_words.size();
  switch (outcome) {
    case Outcome::Corrected: b.transcript_words.push_back(intended); break;
    case Outcome::Faithful: b.transcript_words.push_back(surface); break;
    case Outcome::Incorrect: b.transcript_words.push_back(other); break;
  }
  if (cell.corrected) b.transcript_words.push_back(intended);
  b.transcript_words.insert(b.transcript_words.end(), post.begin(), post.end());
  return b;
}

double word_start(std::size_t index) {
  return std::round(static_cast<double>(index) * kFixtureWordStep_s * 1000.0) / 1000.0;
}

}  // namespace

void FixtureSpec::validate() const {
  std::vector<std::tuple<ErrorClass, bool, bool, bool>> keys;
  for (const auto& c : cells) {
    for (double f : {c.corrected_frac, c.faithful_frac, c.incorrect_frac}) {
      if (!(f >= 0.0 && f <= 1.0)) throw SpecError("outcome fractions must be in [0, 1]");
    }
    const double sum = c.corrected_frac + c.faithful_frac + c.incorrect_frac;
    if (std::fabs(sum - 1.0) > 1e-9) {
      throw SpecError(fmt::format("outcome fractions sum to {}, expected 1", sum));
    }
    auto key = std::make_tuple(c.error_class, c.contextual, c.corrected, c.complete);
    if (std::find(keys.begin(), keys.end(), key) != keys.end()) {
      throw SpecError("duplicate fixture cell");
    }
    keys.push_back(key);
  }
}

FixtureSpec parse_fixture_spec(std::string_view json_text) {
  FixtureSpec spec;
  try {
    const json doc = json::parse(json_text);
    spec.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& c : doc.at("cells")) {
      FixtureCell cell;
      const auto cls = parse_error_class(c.at("error_class").get<std::string>());
      if (!cls) throw SpecError("unknown error_class in fixture cell");
      cell.error_class = *cls;
      cell.contextual = c.at("contextual").get<bool>();
      cell.corrected = c.at("corrected").get<bool>();
      cell.complete = c.at("complete").get<bool>();
      const auto count = c.at("count").get<std::int64_t>();
      if (count < 0) throw SpecError("cell count must be >= 0");
      cell.count = static_cast<std::size_t>(count);
      const auto& o = c.at("outcomes");
      cell.corrected_frac = o.at("corrected").get<double>();
      cell.faithful_frac = o.at("faithful").get<double>();
      cell.incorrect_frac = o.at("incorrect").get<double>();
      spec.cells.push_back(cell);
    }
  } catch (const json::exception& e) {
    throw SpecError(std::string("invalid fixture spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

FixtureSpec load_fixture_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open fixture spec: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_fixture_spec(buf.str());
}

Fixture generate_fixture(const FixtureSpec& spec) {
  spec.validate();
  Draw draw(spec.seed);

  std::vector<Planned> plan;
  for (std::size_t ci = 0; ci < spec.cells.size(); ++ci) {
    const auto counts = split_counts(spec.cells[ci]);
    std::vector<Outcome> outcomes;
    for (std::size_t o = 0; o < 3; ++o) outcomes.insert(outcomes.end(), counts[o], kOutcomes[o]);
    draw.shuffle(outcomes);
    for (std::size_t k = 0; k < outcomes.size(); ++k) plan.push_back({ci, k, outcomes[k]});
  }
  draw.shuffle(plan);

  Fixture fx;
  const std::size_t audio_count =
      (plan.size() + kFixtureRecordsPerAudio - 1) / kFixtureRecordsPerAudio;
  for (std::size_t a = 0; a < audio_count; ++a) {
    Transcript t;
    t.audio_id = fmt::format("fx_audio_{:03}", a);
    std::vector<std::string> words;
    const auto filler = [&] {
      for (std::size_t g = 0; g < kGapWords; ++g) words.push_back(draw.word());
    };
    const std::size_t first = a * kFixtureRecordsPerAudio;
    const std::size_t last = std::min(plan.size(), first + kFixtureRecordsPerAudio);
    for (std::size_t i = first; i < last; ++i) {
      filler();
      const Planned& p = plan[i];
      Built b = build_record(draw, spec.cells[p.cell], p.outcome);
      b.record.record_id = fmt::format("fx-c{:02}-{:05}", p.cell, p.index);
      b.record.audio_id = t.audio_id;
      b.record.timestamp_s = word_start(words.size() + b.slot);
      words.insert(words.end(), b.transcript_words.begin(), b.transcript_words.end());
      if (auto err = finalize_record(b.record)) {
        throw std::logic_error("fixture produced an invalid record: " + *err);
      }
      fx.records.push_back(std::move(b.record));
    }
    filler();

    for (std::size_t w = 0; w < words.size(); ++w) {
      const double start = word_start(w);
      const double score = 0.5 + static_cast<double>(draw.below(50)) / 100.0;
      t.tokens.push_back({words[w], start, std::round((start + 0.3) * 1000.0) / 1000.0, score});
    }
    for (std::size_t s = 0; s < t.tokens.size(); s += kSegmentWords) {
      const std::size_t e = std::min(t.tokens.size(), s + kSegmentWords);
      std::vector<std::string> seg_words(words.begin() + static_cast<std::ptrdiff_t>(s),
                                         words.begin() + static_cast<std::ptrdiff_t>(e));
      t.segments.push_back({t.tokens[s].start_s, t.tokens[e - 1].end_s,
                            " " + text::join(seg_words, " ")});
    }
    fx.transcripts.push_back(std::move(t));
  }
  return fx;
}

void write_fixture(const Fixture& fixture, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir / "transcripts");
  {
    std::ofstream out(out_dir / "corpus.tsv", std::ios::binary);
    if (!out) throw SpecError("cannot write " + (out_dir / "corpus.tsv").string());
    write_corpus(out, fixture.records);
  }
  for (const auto& t : fixture.transcripts) {
    const fs::path p = out_dir / "transcripts" / (t.audio_id + ".json");
    std::ofstream out(p, std::ios::binary);
    if (!out) throw SpecError("cannot write " + p.string());
    out << transcript_to_json(t);
  }
}

}  // namespace slipeval
