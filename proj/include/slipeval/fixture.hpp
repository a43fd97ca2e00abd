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

#ifndef SLIPEVAL_FIXTURE_HPP_
#define SLIPEVAL_FIXTURE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "slipeval/corpus.hpp"
#include "slipeval/transcript.hpp"

namespace slipeval {

// One cross-classification cell and the outcome mix planted in it.
struct FixtureCell {
  ErrorClass error_class = ErrorClass::Word;
  bool contextual = false;
  bool corrected = false;
  bool complete = true;
  std::size_t count = 0;
  double corrected_frac = 1.0;
  double faithful_frac = 0.0;
  double incorrect_frac = 0.0;
};

struct FixtureSpec {
  std::uint64_t seed = 0;
  std::vector<FixtureCell> cells;

  // Throws SpecError: fractions outside [0, 1] or not summing to 1 +- 1e-9,
  // duplicate cells.
  void validate() const;
};

// JSON: {"seed": 42, "cells": [{"error_class": "word", "contextual": false,
// "corrected": true, "complete": true, "count": 300,
// "outcomes": {"corrected": 0.5, "faithful": 0.3, "incorrect": 0.2}}]}
FixtureSpec parse_fixture_spec(std::string_view json_text);
FixtureSpec load_fixture_spec(const std::filesystem::path& path);

struct Fixture {
  std::vector<ErrorRecord> records;     // shuffled by the seed
  std::vector<Transcript> transcripts;  // one per audio_id, sorted by id
};

// Words are spaced every kFixtureWordStep_s seconds.
inline constexpr double kFixtureWordStep_s = 0.35;
inline constexpr std::size_t kFixtureRecordsPerAudio = 25;

// Per cell, outcome counts are the largest-remainder rounding of
// count * fraction. Each record's transcript repeats its context verbatim
// except at the error slot, which holds the intended word (Corrected), the
// produced form (Faithful) or an unrelated word (Incorrect), so the
// classifier recovers the planted outcome exactly.
Fixture generate_fixture(const FixtureSpec& spec);

// Writes corpus.tsv and transcripts/<audio_id>.json under `out_dir`.
void write_fixture(const Fixture& fixture, const std::filesystem::path& out_dir);

}  // namespace slipeval

#endif  // SLIPEVAL_FIXTURE_HPP_
