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

#include "slipeval/classify.hpp"

#include <fstream>

#include "json.hpp"
#include "slipeval/errors.hpp"
#include "slipeval/text.hpp"

namespace slipeval {

namespace {

using nlohmann::ordered_json;

bool is_proper_prefix(std::string_view prefix, std::string_view word,
                      std::size_t min_length) {
  const std::size_t len = text::decode_utf8(prefix).size();
  return len >= min_length && prefix.size() < word.size() && word.starts_with(prefix);
}

}  // namespace

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Corrected: return "corrected";
    case Outcome::Faithful: return "faithful";
    case Outcome::Incorrect: return "incorrect";
  }
  return "?";
}

std::optional<Outcome> parse_outcome(std::string_view s) {
  for (Outcome o : kOutcomes) {
    if (text::iequals(to_string(o), s)) return o;
  }
  return std::nullopt;
}

std::string_view to_string(Diagnostic d) {
  switch (d) {
    case Diagnostic::AlignmentFailed: return "alignment_failed";
    case Diagnostic::NoIntendedWord: return "no_intended_word";
    case Diagnostic::PrefixMatched: return "prefix_matched";
    case Diagnostic::DegenerateAnnotation: return "degenerate_annotation";
  }
  return "?";
}

std::optional<Diagnostic> parse_diagnostic(std::string_view s) {
  for (Diagnostic d : kDiagnostics) {
    if (to_string(d) == s) return d;
  }
  return std::nullopt;
}

ClassifiedError classify(const ErrorRecord& record, const AlignedSpan& span,
                         std::span<const WordToken> tokens,
                         const ClassifyOptions& options) {
  ClassifiedError out;
  out.record_id = record.record_id;
  out.span = span;

  const std::string surface = normalize(record.annotation.error_surface);
  std::optional<std::string> intended;
  if (record.intended_word) {
    intended = normalize(*record.intended_word);
    if (*intended == surface) out.diagnostics.add(Diagnostic::DegenerateAnnotation);
  } else {
    out.diagnostics.add(Diagnostic::NoIntendedWord);
  }

  if (span.error_token_index && *span.error_token_index < tokens.size()) {
    out.matched_text = tokens[*span.error_token_index].text;
  }
  if (span.failed) {
    out.outcome = Outcome::Incorrect;
    out.diagnostics.add(Diagnostic::AlignmentFailed);
    return out;
  }
  if (!out.matched_text) {
    out.outcome = Outcome::Incorrect;
    return out;
  }

  const std::string slot = normalize(*out.matched_text);
  if (intended && slot == *intended) {
    out.outcome = Outcome::Corrected;
  } else if (slot == surface) {
    out.outcome = Outcome::Faithful;
  } else if (options.prefix_match && record.annotation.incomplete &&
             is_proper_prefix(surface, slot, options.min_prefix_length)) {
    out.outcome = Outcome::Faithful;
    out.diagnostics.add(Diagnostic::PrefixMatched);
  } else {
    out.outcome = Outcome::Incorrect;
  }
  return out;
}

void OutcomeCounts::add(Outcome o) {
  switch (o) {
    case Outcome::Corrected: ++corrected; break;
    case Outcome::Faithful: ++faithful; break;
    case Outcome::Incorrect: ++incorrect; break;
  }
}

std::size_t OutcomeCounts::get(Outcome o) const {
  switch (o) {
    case Outcome::Corrected: return corrected;
    case Outcome::Faithful: return faithful;
    case Outcome::Incorrect: return incorrect;
  }
  return 0;
}

OutcomeCounts count_outcomes(std::span<const ClassifiedError> results) {
  OutcomeCounts c;
  for (const auto& r : results) c.add(r.outcome);
  return c;
}

OutcomeCounts count_outcomes(std::span<const Outcome> outcomes) {
  OutcomeCounts c;
  for (Outcome o : outcomes) c.add(o);
  return c;
}

double accuracy(const OutcomeCounts& counts) {
  if (counts.total() == 0) throw EmptyInput("accuracy of an empty outcome set");
  return static_cast<double>(counts.corrected + counts.faithful) /
         static_cast<double>(counts.total());
}

double accuracy(std::span<const Outcome> outcomes) {
  return accuracy(count_outcomes(outcomes));
}

std::string to_jsonl(const ClassifiedError& r) {
  ordered_json j;
  j["record_id"] = r.record_id;
  j["outcome"] = to_string(r.outcome);
  j["matched_text"] = r.matched_text ? ordered_json(*r.matched_text) : ordered_json(nullptr);
  j["similarity"] = r.span.similarity;
  ordered_json diags = ordered_json::array();
  for (Diagnostic d : kDiagnostics) {
    if (r.diagnostics.has(d)) diags.push_back(to_string(d));
  }
  j["diagnostics"] = std::move(diags);
  return j.dump();
}

ClassifiedError parse_jsonl(std::string_view line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const ordered_json::parse_error& e) {
    throw SchemaError(std::string("result line is not JSON: ") + e.what());
  }
  try {
    ClassifiedError r;
    r.record_id = j.at("record_id").get<std::string>();
    r.span.record_id = r.record_id;
    const auto outcome = parse_outcome(j.at("outcome").get<std::string>());
    if (!outcome) throw SchemaError("unknown outcome in result for " + r.record_id);
    r.outcome = *outcome;
    if (const auto& m = j.at("matched_text"); !m.is_null()) {
      r.matched_text = m.get<std::string>();
    }
    r.span.similarity = j.at("similarity").get<double>();
    for (const auto& d : j.at("diagnostics")) {
      const auto diag = parse_diagnostic(d.get<std::string>());
      if (!diag) throw SchemaError("unknown diagnostic in result for " + r.record_id);
      r.diagnostics.add(*diag);
    }
    r.span.failed = r.diagnostics.has(Diagnostic::AlignmentFailed);
    return r;
  } catch (const ordered_json::exception& e) {
    throw SchemaError(std::string("malformed result line: ") + e.what());
  }
}

std::vector<ClassifiedError> load_results(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open results: " + path.string());
  std::vector<ClassifiedError> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(parse_jsonl(line));
    } catch (const SchemaError& e) {
      throw SchemaError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace slipeval
