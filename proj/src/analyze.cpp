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

#include "slipeval/analyze.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "slipeval/errors.hpp"
#include "slipeval/text.hpp"

namespace slipeval {

namespace {

std::string bool_value(bool b) { return b ? "true" : "false"; }

template <class E>
std::optional<std::string> opt_value(const std::optional<E>& v) {
  if (!v) return std::nullopt;
  return std::string(to_string(*v));
}

}  // namespace

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::ErrorClass: return "error_class";
    case Condition::SoundKind: return "sound_kind";
    case Condition::Contextual: return "contextual";
    case Condition::Corrected: return "corrected";
    case Condition::Complete: return "complete";
    case Condition::WordPosition: return "word_position";
    case Condition::SyllablePosition: return "syllable_position";
  }
  return "?";
}

Condition parse_condition(std::string_view s) {
  for (Condition c : kConditions) {
    if (text::iequals(to_string(c), s)) return c;
  }
  throw UnknownCondition("unknown condition '" + std::string(s) + "'");
}

bool is_binary(Condition c) {
  return c == Condition::Contextual || c == Condition::Corrected ||
         c == Condition::Complete;
}

std::vector<std::string> condition_values(Condition c) {
  switch (c) {
    case Condition::ErrorClass: return {"sound", "word"};
    case Condition::SoundKind: return {"substitution", "deletion", "addition"};
    case Condition::Contextual:
    case Condition::Corrected:
    case Condition::Complete: return {"true", "false"};
    case Condition::WordPosition: return {"initial", "medial", "final"};
    case Condition::SyllablePosition: return {"onset", "nucleus", "coda"};
  }
  return {};
}

std::optional<std::string> condition_value(const ErrorRecord& r, Condition c) {
  switch (c) {
    case Condition::ErrorClass: return std::string(to_string(r.error_class));
    case Condition::SoundKind: return opt_value(r.sound_kind);
    case Condition::Contextual: return bool_value(r.contextual);
    case Condition::Corrected: return bool_value(r.corrected);
    case Condition::Complete: return bool_value(r.complete);
    case Condition::WordPosition: return opt_value(r.word_position);
    case Condition::SyllablePosition: return opt_value(r.syllable_position);
  }
  return std::nullopt;
}

Tabulation tabulate(std::span<const ClassifiedError> classified,
                    std::span<const ErrorRecord> corpus, Condition condition,
                    const TabulateOptions& options) {
  std::unordered_map<std::string_view, const ErrorRecord*> by_id;
  by_id.reserve(corpus.size());
  for (const auto& r : corpus) by_id.emplace(r.record_id, &r);

  const std::vector<std::string> values = condition_values(condition);
  std::vector<std::array<std::uint64_t, 3>> counts(values.size(), {0, 0, 0});
  Tabulation out;
  for (const auto& c : classified) {
    const auto it = by_id.find(c.record_id);
    if (it == by_id.end()) {
      throw Error("classified record '" + c.record_id + "' is not in the corpus");
    }
    if (options.exclude_alignment_failures &&
        c.diagnostics.has(Diagnostic::AlignmentFailed)) {
      ++out.excluded_alignment_failures;
      continue;
    }
    const auto value = condition_value(*it->second, condition);
    if (!value) {
      ++out.excluded_missing_attribute;
      continue;
    }
    const auto pos = std::find(values.begin(), values.end(), *value) - values.begin();
    ++counts[pos][static_cast<std::size_t>(c.outcome)];
  }

  for (Outcome o : kOutcomes) out.table.col_labels.emplace_back(to_string(o));
  for (std::size_t v = 0; v < values.size(); ++v) {
    if (counts[v][0] + counts[v][1] + counts[v][2] == 0) continue;
    out.table.row_labels.push_back(values[v]);
    out.table.counts.push_back({counts[v].begin(), counts[v].end()});
  }
  return out;
}

ConditionBreakdown breakdown_from_table(const ContingencyTable& table,
                                        std::string condition, bool binary) {
  ConditionBreakdown out;
  out.condition = std::move(condition);
  for (std::size_t i = 0; i < table.rows(); ++i) {
    const auto& row = table.counts[i];
    OutcomeShare share;
    for (auto v : row) share.n += v;
    if (share.n > 0) {
      const double n = static_cast<double>(share.n);
      share.corrected_pct = 100.0 * static_cast<double>(row.at(0)) / n;
      share.faithful_pct = 100.0 * static_cast<double>(row.at(1)) / n;
      share.incorrect_pct = 100.0 * static_cast<double>(row.at(2)) / n;
    }
    out.per_value.emplace_back(table.row_labels[i], share);
  }
  if (binary) {
    const auto find = [&](std::string_view label) -> const OutcomeShare* {
      for (const auto& [v, s] : out.per_value) {
        if (v == label && s.n > 0) return &s;
      }
      return nullptr;
    };
    const OutcomeShare* t = find("true");
    const OutcomeShare* f = find("false");
    if (t && f) {
      out.deltas = std::array<double, 3>{t->corrected_pct - f->corrected_pct,
                                         t->faithful_pct - f->faithful_pct,
                                         t->incorrect_pct - f->incorrect_pct};
    }
  }
  return out;
}

ConditionBreakdown breakdown(std::span<const ClassifiedError> classified,
                             std::span<const ErrorRecord> corpus, Condition condition,
                             const TabulateOptions& options) {
  const Tabulation tab = tabulate(classified, corpus, condition, options);
  return breakdown_from_table(tab.table, std::string(to_string(condition)),
                              is_binary(condition));
}

std::vector<ClassifiedError> step_sample(std::span<const ClassifiedError> classified,
                                         std::size_t k) {
  if (k == 0) throw std::invalid_argument("step_sample: k must be >= 1");
  std::vector<const ClassifiedError*> sorted;
  sorted.reserve(classified.size());
  for (const auto& c : classified) sorted.push_back(&c);
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    return a->record_id < b->record_id;
  });
  std::vector<ClassifiedError> out;
  for (std::size_t i = 0; i < sorted.size(); i += k) out.push_back(*sorted[i]);
  return out;
}

}  // namespace slipeval
