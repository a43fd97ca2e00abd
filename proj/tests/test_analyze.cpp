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

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "slipeval/analyze.hpp"
#include "slipeval/errors.hpp"
#include "support.hpp"

using namespace slipeval;

namespace {

std::vector<ErrorRecord> table1() {
  return load_corpus(testing::data_dir() / "table1/corpus.tsv").records;
}

std::vector<ClassifiedError> all_as(const std::vector<ErrorRecord>& corpus, Outcome o) {
  std::vector<ClassifiedError> out;
  for (const auto& r : corpus) {
    ClassifiedError c;
    c.record_id = r.record_id;
    c.outcome = o;
    out.push_back(c);
  }
  return out;
}

// Random corpus over every condition, with random outcomes and failures.
std::pair<std::vector<ErrorRecord>, std::vector<ClassifiedError>> random_corpus(
    std::mt19937_64& rng, std::size_t n) {
  std::vector<ErrorRecord> corpus;
  std::vector<ClassifiedError> classified;
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> three(0, 2);
  std::uniform_int_distribution<int> four(0, 3);
  for (std::size_t i = 0; i < n; ++i) {
    const bool sound = coin(rng);
    const bool complete = coin(rng);
    auto r = testing::make_record({.id = "r" + std::to_string(i),
                                   .context = complete ? "the /cat sat" : "the /ca= sat",
                                   .cls = sound ? ErrorClass::Sound : ErrorClass::Word,
                                   .intended = "dog"});
    r.contextual = coin(rng);
    r.corrected = coin(rng);
    if (sound) {
      r.sound_kind = static_cast<SoundErrorKind>(three(rng));
      if (int p = four(rng); p < 3) r.word_position = static_cast<WordPosition>(p);
      if (int p = four(rng); p < 3) r.syllable_position = static_cast<SyllablePosition>(p);
    }
    ClassifiedError c;
    c.record_id = r.record_id;
    c.outcome = static_cast<Outcome>(three(rng));
    if (c.outcome == Outcome::Incorrect && coin(rng)) c.diagnostics.add(Diagnostic::AlignmentFailed);
    corpus.push_back(std::move(r));
    classified.push_back(std::move(c));
  }
  return {corpus, classified};
}

}  // namespace

TEST_SUITE("analyze") {

TEST_CASE("all corrected by error class") {
  const auto corpus = table1();
  const auto tab = tabulate(all_as(corpus, Outcome::Corrected), corpus, Condition::ErrorClass);
  CHECK(tab.table.row_labels == std::vector<std::string>{"sound", "word"});
  CHECK(tab.table.col_labels == std::vector<std::string>{"corrected", "faithful", "incorrect"});
  CHECK(tab.table.counts == std::vector<std::vector<std::uint64_t>>{{2, 0, 0}, {2, 0, 0}});
  CHECK(tab.excluded_missing_attribute == 0);
}

TEST_CASE("attribute absent on every record gives an empty table") {
  const auto corpus = table1();
  std::vector<ErrorRecord> words;
  for (const auto& r : corpus) {
    if (r.error_class == ErrorClass::Word) words.push_back(r);
  }
  const auto tab = tabulate(all_as(words, Outcome::Faithful), words, Condition::WordPosition);
  CHECK(tab.table.rows() == 0);
  CHECK(tab.excluded_missing_attribute == 2);
}

TEST_CASE("condition names") {
  for (Condition c : kConditions) CHECK(parse_condition(to_string(c)) == c);
  CHECK(parse_condition("Error_Class") == Condition::ErrorClass);
  CHECK_THROWS_AS(parse_condition("speaker_age"), UnknownCondition);
  CHECK(is_binary(Condition::Corrected));
  CHECK_FALSE(is_binary(Condition::SoundKind));
}

TEST_CASE("unknown record ids are rejected") {
  const auto corpus = table1();
  auto classified = all_as(corpus, Outcome::Faithful);
  classified[0].record_id = "ghost";
  CHECK_THROWS_AS(tabulate(classified, corpus, Condition::ErrorClass), Error);
}

TEST_CASE("row sums and exclusions account for every record") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto [corpus, classified] = random_corpus(rng, 120);
    for (bool exclude : {false, true}) {
      for (Condition cond : kConditions) {
        const auto tab = tabulate(classified, corpus, cond, {exclude});
        std::uint64_t grand = 0;
        for (std::size_t i = 0; i < tab.table.rows(); ++i) {
          std::uint64_t row = 0;
          for (auto v : tab.table.counts[i]) row += v;
          CHECK(row > 0);
          // Row sum equals the records carrying this value.
          std::uint64_t want = 0;
          for (std::size_t k = 0; k < corpus.size(); ++k) {
            if (exclude && classified[k].diagnostics.has(Diagnostic::AlignmentFailed)) continue;
            if (condition_value(corpus[k], cond) == tab.table.row_labels[i]) ++want;
          }
          CHECK(row == want);
          grand += row;
        }
        CHECK(grand + tab.excluded_missing_attribute + tab.excluded_alignment_failures ==
              corpus.size());
        if (!exclude) CHECK(tab.excluded_alignment_failures == 0);

        const auto bd = breakdown(classified, corpus, cond, {exclude});
        for (const auto& [value, share] : bd.per_value) {
          CHECK(std::fabs(share.corrected_pct + share.faithful_pct + share.incorrect_pct - 100.0) <=
                0.01);
        }
      }
    }
  }
}

TEST_CASE("deltas") {
  ContingencyTable t;
  t.row_labels = {"true", "false"};
  t.col_labels = {"corrected", "faithful", "incorrect"};
  t.counts = {{81, 2, 17}, {43, 31, 26}};
  const auto bd = breakdown_from_table(t, "contextual", true);
  REQUIRE(bd.deltas);
  CHECK((*bd.deltas)[0] == doctest::Approx(38.0));
  CHECK((*bd.deltas)[1] == doctest::Approx(-29.0));
  CHECK((*bd.deltas)[2] == doctest::Approx(-9.0));
  CHECK(bd.per_value[0].second.n == 100);

  t.row_labels = {"true"};
  t.counts = {{5, 5, 0}};
  const auto single = breakdown_from_table(t, "contextual", true);
  CHECK_FALSE(single.deltas);
  CHECK(single.per_value[0].second.corrected_pct == 50.0);

  t.row_labels = {"sound", "word"};
  t.counts = {{1, 1, 0}, {0, 1, 1}};
  CHECK_FALSE(breakdown_from_table(t, "error_class", false).deltas);
}

TEST_CASE("step sample") {
  std::vector<ClassifiedError> items(10);
  // Deliberately unsorted ids.
  for (std::size_t i = 0; i < 10; ++i) items[i].record_id = "id" + std::to_string(9 - i);
  const auto every3 = step_sample(items, 3);
  REQUIRE(every3.size() == 4);
  CHECK(every3[0].record_id == "id0");
  CHECK(every3[1].record_id == "id3");
  CHECK(every3[2].record_id == "id6");
  CHECK(every3[3].record_id == "id9");
  CHECK(step_sample(items, 1).size() == 10);
  const auto big = step_sample(items, 50);
  REQUIRE(big.size() == 1);
  CHECK(big[0].record_id == "id0");
  CHECK(step_sample(std::vector<ClassifiedError>{}, 2).empty());
  CHECK_THROWS_AS(step_sample(items, 0), std::invalid_argument);
}

}  // TEST_SUITE
