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

#ifndef SLIPEVAL_ANALYZE_HPP_
#define SLIPEVAL_ANALYZE_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slipeval/classify.hpp"
#include "slipeval/corpus.hpp"
#include "slipeval/stats.hpp"

namespace slipeval {

enum class Condition {
  ErrorClass,
  SoundKind,
  Contextual,
  Corrected,
  Complete,
  WordPosition,
  SyllablePosition,
};

inline constexpr Condition kConditions[] = {
    Condition::ErrorClass, Condition::SoundKind,    Condition::Contextual,
    Condition::Corrected,  Condition::Complete,     Condition::WordPosition,
    Condition::SyllablePosition};

std::string_view to_string(Condition c);
// Throws UnknownCondition.
Condition parse_condition(std::string_view s);

// Canonical row order; binary conditions list "true" first.
std::vector<std::string> condition_values(Condition c);
bool is_binary(Condition c);

// nullopt when the record lacks the attribute (e.g. word_position of a
// word error).
std::optional<std::string> condition_value(const ErrorRecord& record, Condition c);

struct TabulateOptions {
  bool exclude_alignment_failures = false;
};

struct Tabulation {
  ContingencyTable table;  // observed values only, columns = outcomes
  std::size_t excluded_missing_attribute = 0;
  std::size_t excluded_alignment_failures = 0;
};

// Every classified record_id must exist in `corpus` (throws Error otherwise).
Tabulation tabulate(std::span<const ClassifiedError> classified,
                    std::span<const ErrorRecord> corpus, Condition condition,
                    const TabulateOptions& options = {});

struct OutcomeShare {
  double corrected_pct = 0.0;
  double faithful_pct = 0.0;
  double incorrect_pct = 0.0;
  std::size_t n = 0;
};

struct ConditionBreakdown {
  std::string condition;
  std::vector<std::pair<std::string, OutcomeShare>> per_value;
  // Percentage-point differences (true - false) per outcome, in kOutcomes
  // order; only for binary conditions with both values observed.
  std::optional<std::array<double, 3>> deltas;
};

ConditionBreakdown breakdown_from_table(const ContingencyTable& table,
                                        std::string condition, bool binary);

ConditionBreakdown breakdown(std::span<const ClassifiedError> classified,
                             std::span<const ErrorRecord> corpus, Condition condition,
                             const TabulateOptions& options = {});

// Every k-th result in record_id order, starting with the first.
std::vector<ClassifiedError> step_sample(std::span<const ClassifiedError> classified,
                                         std::size_t k);

}  // namespace slipeval

#endif  // SLIPEVAL_ANALYZE_HPP_
