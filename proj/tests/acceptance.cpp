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

// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "generators.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "slipeval/align.hpp"
#include "slipeval/classify.hpp"
#include "slipeval/edit_distance.hpp"
#include "slipeval/fixture.hpp"
#include "slipeval/lattice.hpp"
#include "slipeval/notation.hpp"
#include "slipeval/stats.hpp"
#include "slipeval/transcript.hpp"
#include "support.hpp"

using namespace slipeval;
namespace fs = std::filesystem;

namespace {

// Collects failed expectations for one criterion.
class Ledger {
 public:
  void expect(bool ok, std::string what) {
    if (!ok) failures_.push_back(std::move(what));
  }
  bool ok() const { return failures_.empty(); }
  std::string summary() const {
    std::string s;
    for (std::size_t i = 0; i < failures_.size() && i < 5; ++i) {
      s += (i ? "; " : "") + failures_[i];
    }
    if (failures_.size() > 5) s += fmt::format("; ... {} more", failures_.size() - 5);
    return s;
  }

 private:
  std::vector<std::string> failures_;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;  // 0 = no runtime bound
  std::function<void(Ledger&)> body;
};

// 1
void notation_parser(Ledger& L) {
  const auto a = parse_notation("/ab[I]t");
  L.expect(a.error_surface == "abIt" && !a.incomplete &&
               a.mispronounced_segments == std::vector<MispronouncedSegment>{{2, "I"}},
           "/ab[I]t");
  const auto b = parse_notation("/mov=");
  L.expect(b.error_surface == "mov" && b.incomplete && b.mispronounced_segments.empty(), "/mov=");
  const auto c = parse_notation("/Re[k]ar=");
  L.expect(c.error_surface == "Rekar" && c.incomplete &&
               c.mispronounced_segments == std::vector<MispronouncedSegment>{{2, "k"}},
           "/Re[k]ar=");
  const auto d = parse_notation("/username (Intended: password)");
  L.expect(d.error_surface == "username" && d.intended_inline == "password" && !d.incomplete,
           "/username (Intended: password)");

  std::mt19937_64 rng(1);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto ann = generators::random_annotation(rng, false);
    if (!(parse_notation(ann.raw_notation) == ann)) ++bad;
  }
  L.expect(bad == 0, fmt::format("{} of 1000 round trips differ", bad));
}

// 2
void levenshtein_oracle(Ledger& L) {
  std::vector<std::string> words{""};
  for (std::size_t begin = 0, len = 1; len <= 5; ++len) {
    const std::size_t end = words.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (char ch : std::string_view("abc")) words.push_back(words[i] + ch);
    }
    begin = end;
  }
  std::size_t bad = 0;
  for (const auto& x : words) {
    for (const auto& y : words) bad += levenshtein(x, y) != oracle::naive_levenshtein(x, y);
  }
  L.expect(words.size() == 364, "string enumeration");
  L.expect(bad == 0, fmt::format("{} disagreeing pairs", bad));
  L.expect(levenshtein("kitten", "sitting") == 3, "kitten/sitting");
}

ContingencyTable table2(std::vector<std::vector<std::uint64_t>> m) {
  ContingencyTable t;
  t.row_labels = {"a", "b"};
  for (std::size_t j = 0; j < m[0].size(); ++j) t.col_labels.push_back(std::to_string(j));
  t.counts = std::move(m);
  return t;
}

// 3
void chi_square_values(Ledger& L) {
  const auto r = chi_square(table2({{10, 20}, {30, 40}}));
  L.expect(std::fabs(r.statistic - 0.793651) <= 1e-6, fmt::format("statistic {}", r.statistic));
  L.expect(r.df == 1, "df");
  for (const auto& m : std::vector<std::vector<std::vector<std::uint64_t>>>{
           {{1, 2}, {2, 4}}, {{3, 5, 7}, {30, 50, 70}}, {{12, 0, 4}, {36, 0, 12}}}) {
    const auto p = chi_square(table2(m));
    L.expect(p.statistic == 0.0, fmt::format("proportional rows gave {}", p.statistic));
  }
  const struct {
    double x;
    int df;
    double want;
  } table[] = {{3.841, 1, 0.05}, {6.635, 1, 0.01}, {5.991, 2, 0.05}};
  for (const auto& t : table) {
    const double q = chi_square_survival(t.x, t.df);
    L.expect(std::fabs(q - t.want) <= 5e-4, fmt::format("Q({}, {}) = {}", t.x, t.df, q));
  }
}

// 4
void classifier_triple(Ledger& L) {
  const auto rec = testing::make_record({.id = "fig1",
                                         .audio = "a",
                                         .t = 1.2,
                                         .context = "I told my /Dad about the trip",
                                         .intended = "Mom"});
  const struct {
    const char* slot;
    Outcome want;
  } cases[] = {{"dad", Outcome::Faithful}, {"mom", Outcome::Corrected}, {"tom", Outcome::Incorrect}};
  for (const auto& c : cases) {
    Transcript t;
    t.audio_id = "a";
    const char* words[] = {"I", "told", "my", c.slot, "about", "the", "trip"};
    for (std::size_t i = 0; i < 7; ++i) {
      t.tokens.push_back({words[i], 0.4 * double(i), 0.4 * double(i) + 0.3, {}});
    }
    const auto span = align_error(rec, t);
    const auto res = classify(rec, span, t.tokens);
    L.expect(span.error_token_index == 3u, fmt::format("slot for '{}'", c.slot));
    L.expect(res.outcome == c.want, fmt::format("'{}' gave {}", c.slot, to_string(res.outcome)));
  }
  L.expect(accuracy(OutcomeCounts{81, 2, 17}) == 0.83, "accuracy 81/2/17");
  L.expect(accuracy(OutcomeCounts{43, 31, 26}) == 0.74, "accuracy 43/31/26");
}

nlohmann::json find_test(const nlohmann::json& summary, std::string_view cond) {
  for (const auto& t : summary.at("tests")) {
    if (t.at("group") == "all" && t.at("condition") == cond) return t;
  }
  return nullptr;
}

// 5
void end_to_end(Ledger& L) {
  const auto dir = testing::scratch_dir("acceptance_e2e");
  const auto specs = testing::data_dir() / "specs";
  auto r = testing::cli({"synth", "--seed", "42", "--spec", (specs / "mix_300.json").string(),
                         "--out-dir", (dir / "mix").string()});
  L.expect(r.code == 0, "synth mix: " + r.err);
  r = testing::cli({"classify", "--corpus-path", (dir / "mix/corpus.tsv").string(),
                    "--transcript-dir", (dir / "mix/transcripts").string(), "--out",
                    (dir / "mix.jsonl").string()});
  L.expect(r.code == 0, "classify mix: " + r.err);
  L.expect(r.out.find("records=300 corrected=150 faithful=90 incorrect=60 alignment_failed=0 "
                      "accuracy=0.800000") != std::string::npos,
           "summary line: " + r.out);

  r = testing::cli({"synth", "--spec", (specs / "corrected_dependent.json").string(),
                    "--out-dir", (dir / "dep").string()});
  L.expect(r.code == 0, "synth dependent: " + r.err);
  r = testing::cli({"classify", "--corpus-path", (dir / "dep/corpus.tsv").string(),
                    "--transcript-dir", (dir / "dep/transcripts").string(), "--out",
                    (dir / "dep.jsonl").string()});
  L.expect(r.code == 0, "classify dependent: " + r.err);
  r = testing::cli({"report", "--results", (dir / "dep.jsonl").string(), "--corpus-path",
                    (dir / "dep/corpus.tsv").string(), "--report-dir",
                    (dir / "dep_report").string()});
  L.expect(r.code == 0, "report: " + r.err);
  const auto summary =
      nlohmann::json::parse(testing::read_file(dir / "dep_report/summary.json"));
  const auto dep = find_test(summary, "corrected");
  const auto ind = find_test(summary, "contextual");
  L.expect(!dep.is_null() && dep.at("p_value").get<double>() < 0.01,
           "dependent condition p " + dep.dump());
  L.expect(!ind.is_null() && ind.at("p_value").get<double>() > 0.2,
           "independent condition p " + ind.dump());
}

const Transcript& transcript_for(const Fixture& fx, const ErrorRecord& r) {
  for (const auto& t : fx.transcripts) {
    if (t.audio_id == r.audio_id) return t;
  }
  throw std::logic_error("missing transcript");
}

// 6
void alignment_property(Ledger& L) {
  FixtureSpec verbatim;
  verbatim.seed = 6;
  for (auto cls : {ErrorClass::Word, ErrorClass::Sound}) {
    for (bool ctx : {false, true}) {
      for (bool corr : {false, true}) {
        for (bool comp : {false, true}) {
          verbatim.cells.push_back({cls, ctx, corr, comp, 10, 0.0, 1.0, 0.0});
        }
      }
    }
  }
  const auto fx = generate_fixture(verbatim);
  std::size_t bad = 0;
  for (const auto& r : fx.records) {
    const auto& t = transcript_for(fx, r);
    const auto span = align_error(r, t);
    const bool slot_ok =
        span.error_token_index && t.tokens[*span.error_token_index].start_s == r.timestamp_s;
    bad += !(span.similarity == 1.0 && slot_ok);
  }
  L.expect(bad == 0, fmt::format("{} of {} verbatim records misaligned", bad, fx.records.size()));

  std::mt19937_64 rng(66);
  std::size_t disagreements = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    FixtureSpec spec;
    spec.seed = 1000 + seed;
    spec.cells.push_back({seed % 2 ? ErrorClass::Word : ErrorClass::Sound, seed % 3 == 1,
                          seed % 3 == 0, seed % 5 != 0, 6, 0.34, 0.33, 0.33});
    const auto one = generate_fixture(spec);
    const auto& r = one.records[seed % one.records.size()];
    Transcript t = transcript_for(one, r);
    std::size_t slot = 0;
    while (t.tokens[slot].start_s != r.timestamp_s) ++slot;
    // Substitute one nearby word and sometimes drop another.
    std::uniform_int_distribution<int> off(-4, 4);
    const long victim = static_cast<long>(slot) + off(rng);
    if (victim >= 0 && victim < static_cast<long>(t.tokens.size())) {
      t.tokens[static_cast<std::size_t>(victim)].text = "quux";
    }
    if (std::bernoulli_distribution(0.5)(rng) && slot + 2 < t.tokens.size()) {
      t.tokens.erase(t.tokens.begin() + static_cast<long>(slot + 2));
    }
    AlignConfig cfg;
    cfg.max_span_slack = seed % 4;
    const auto span = align_error(r, t, cfg);
    std::vector<std::string> window, ctx;
    std::vector<std::size_t> absolute;
    for (std::size_t i = 0; i < t.tokens.size(); ++i) {
      if (std::fabs(t.tokens[i].start_s - r.timestamp_s) > cfg.window_radius_s) continue;
      if (auto w = normalize(t.tokens[i].text); !w.empty()) {
        window.push_back(w);
        absolute.push_back(i);
      }
    }
    for (const auto& w : r.context_words) {
      if (auto n = normalize(w); !n.empty()) ctx.push_back(n);
    }
    const auto want = oracle::best_span(ctx, window, cfg.max_span_slack);
    const bool same = span.begin == absolute[want.start] &&
                      span.end == absolute[want.start + want.length - 1] + 1 &&
                      std::fabs(span.similarity - want.similarity) < 1e-12;
    disagreements += !same;
  }
  L.expect(disagreements == 0, fmt::format("{} of 100 spans differ from brute force", disagreements));
}

// 7
void lattice_checks(Ledger& L) {
  const std::vector<Alternative> alts{{"Tom", 1.0}};
  const auto fig1 = build_error_lattice("Dad", "Mom", alts);
  std::vector<std::string> seq;
  for (double c : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0}) {
    seq.push_back(best_path(reweight(fig1, {c, 1.0})).labels.at(0));
  }
  std::size_t changes = 0;
  for (std::size_t i = 1; i < seq.size(); ++i) changes += seq[i] != seq[i - 1];
  L.expect(changes <= 1 && seq.front() == "Dad" && seq.back() == "Mom",
           "switching sequence " + fmt::format("{}", fmt::join(seq, ",")));

  const auto check_against_enumeration = [&](const Lattice& l) {
    std::vector<oracle::OracleArc> arcs;
    for (const auto& a : l.arcs()) arcs.push_back({a.from, a.to, a.label, a.weight});
    const auto want = oracle::min_path(arcs, l.start(), l.end());
    const auto got = best_path(l);
    return got.labels == want.labels && std::fabs(got.total_weight - want.weight) < 1e-9;
  };
  std::size_t bad = 0;
  std::vector<Lattice> lattices{fig1, build_error_lattice("Dad", std::nullopt, {})};
  for (double c : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0}) lattices.push_back(reweight(fig1, {c, 1.0}));
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) lattices.push_back(generators::random_dag(rng, i % 2 == 0));
  for (const auto& l : lattices) bad += !check_against_enumeration(l);
  L.expect(bad == 0, fmt::format("{} of {} lattices disagree with enumeration", bad, lattices.size()));

  const fs::path golden = SLIPEVAL_GOLDEN_DIR;
  L.expect(export_lattice(fig1, ExportFormat::Arclist) ==
               testing::read_file(golden / "fig1.arclist"),
           "arclist golden");
  L.expect(export_lattice(fig1, ExportFormat::Dot) == testing::read_file(golden / "fig1.dot"),
           "dot golden");
}

// 8
void whisperx_format(Ledger& L) {
  const auto load = load_transcript(testing::data_dir() / "whisperx_sample.json");
  const auto& t = load.transcript;
  L.expect(t.tokens.size() == 23, fmt::format("{} tokens", t.tokens.size()));
  std::size_t nonempty = 0;
  for (const auto& tok : t.tokens) nonempty += !normalize(tok.text).empty();
  L.expect(nonempty == t.tokens.size(), "every token survives normalization");
  const auto w = tokens_in_window(t, 4.5, 0.5);
  L.expect(w && w->size() == 3, "window query");
  L.expect(!tokens_in_window(t, 100.0, 1.0), "empty window query");
}

// 9
void determinism(Ledger& L) {
  const auto dir = testing::scratch_dir("acceptance_jobs");
  auto r = testing::cli({"synth", "--spec", (testing::data_dir() / "specs/mix_300.json").string(),
                         "--out-dir", (dir / "fx").string()});
  L.expect(r.code == 0, "synth");
  const auto run = [&](const std::string& jobs) {
    const auto out = dir / ("jobs" + jobs + ".jsonl");
    const auto c = testing::cli({"--jobs", jobs, "classify", "--corpus-path",
                                 (dir / "fx/corpus.tsv").string(), "--transcript-dir",
                                 (dir / "fx/transcripts").string(), "--out", out.string()});
    L.expect(c.code == 0, "classify --jobs " + jobs);
    return testing::read_file(out);
  };
  const auto one = run("1");
  const auto eight = run("8");
  L.expect(!one.empty() && one == eight, "jobs 1 and 8 differ");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "notation parser examples and round trip", 1.0, notation_parser},
      {2, "levenshtein exhaustive oracle", 10.0, levenshtein_oracle},
      {3, "chi-square statistic and survival", 0.0, chi_square_values},
      {4, "classifier triple and accuracy", 0.0, classifier_triple},
      {5, "end-to-end synthetic recovery", 30.0, end_to_end},
      {6, "alignment verbatim and brute force", 0.0, alignment_property},
      {7, "lattice switching, enumeration, goldens", 0.0, lattice_checks},
      {8, "whisperx transcript format", 0.0, whisperx_format},
      {9, "classify determinism across jobs", 0.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Ledger L;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(L);
    } catch (const std::exception& e) {
      L.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs >= c.limit_s) {
      L.expect(false, fmt::format("took {:.3f} s, limit {:.0f} s", secs, c.limit_s));
    }
    std::cout << fmt::format("{} {} {} ({:.3f} s)", L.ok() ? "PASS" : "FAIL", c.id, c.name, secs);
    if (!L.ok()) std::cout << ": " << L.summary();
    std::cout << std::endl;
    failed += !L.ok();
  }
  std::cout << fmt::format("{}/{} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
