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

#include "slipeval/report.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <unordered_map>

#include <fmt/format.h>

#include "json.hpp"
#include "slipeval/analyze.hpp"
#include "slipeval/errors.hpp"
#include "slipeval/stats.hpp"

namespace slipeval {

namespace {

using nlohmann::ordered_json;

struct Group {
  std::string name;
  std::function<bool(const ErrorRecord&)> member;
  std::vector<Condition> conditions;
};

std::vector<Group> report_groups() {
  const std::vector<Condition> binary = {Condition::Contextual, Condition::Corrected,
                                         Condition::Complete};
  const std::vector<Condition> positions = {Condition::WordPosition,
                                            Condition::SyllablePosition};
  std::vector<Group> groups;
  groups.push_back({"all", [](const ErrorRecord&) { return true; },
                    {std::begin(kConditions), std::end(kConditions)}});

  std::vector<Condition> sound = {Condition::SoundKind};
  sound.insert(sound.end(), binary.begin(), binary.end());
  sound.insert(sound.end(), positions.begin(), positions.end());
  groups.push_back({"sound",
                    [](const ErrorRecord& r) { return r.error_class == ErrorClass::Sound; },
                    sound});
  groups.push_back({"word",
                    [](const ErrorRecord& r) { return r.error_class == ErrorClass::Word; },
                    binary});
  std::vector<Condition> per_kind = binary;
  per_kind.insert(per_kind.end(), positions.begin(), positions.end());
  for (SoundErrorKind k : {SoundErrorKind::Substitution, SoundErrorKind::Deletion,
                           SoundErrorKind::Addition}) {
    groups.push_back({"sound_" + std::string(to_string(k)),
                      [k](const ErrorRecord& r) { return r.sound_kind == k; }, per_kind});
  }
  return groups;
}

std::string pct(double v) { return fmt::format("{:.4f}", v); }

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + p.string());
  return out;
}

ordered_json matrix_json(const std::vector<std::vector<double>>& m) {
  ordered_json out = ordered_json::array();
  for (const auto& row : m) out.push_back(row);
  return out;
}

}  // namespace

std::vector<std::filesystem::path> write_report(const std::filesystem::path& out_dir,
                                                std::span<const ClassifiedError> classified,
                                                std::span<const ErrorRecord> corpus,
                                                const ReportOptions& options) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::vector<fs::path> written;

  std::unordered_map<std::string_view, const ErrorRecord*> by_id;
  for (const auto& r : corpus) by_id.emplace(r.record_id, &r);
  std::vector<ClassifiedError> sorted(classified.begin(), classified.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.record_id < b.record_id; });
  for (const auto& c : sorted) {
    if (!by_id.count(c.record_id)) {
      throw ConfigError("result '" + c.record_id + "' has no corpus record");
    }
  }

  const TabulateOptions tab_opts{options.exclude_alignment_failures};
  std::size_t alignment_failures = 0;
  for (const auto& c : sorted) {
    alignment_failures += c.diagnostics.has(Diagnostic::AlignmentFailed);
  }

  ordered_json summary;
  const OutcomeCounts all_counts = count_outcomes(sorted);
  summary["records"] = sorted.size();
  summary["outcome_counts"] = {{"corrected", all_counts.corrected},
                               {"faithful", all_counts.faithful},
                               {"incorrect", all_counts.incorrect}};
  summary["accuracy"] = all_counts.total() ? ordered_json(accuracy(all_counts))
                                           : ordered_json(nullptr);
  summary["alignment_failures"] = alignment_failures;
  summary["exclude_alignment_failures"] = options.exclude_alignment_failures;
  summary["min_expected"] = options.min_expected;
  ordered_json tests = ordered_json::array();

  // Plot data: per condition, stacked outcome shares per error type.
  const std::vector<std::string> plot_groups = {"sound_substitution", "sound_deletion",
                                                "sound_addition", "sound", "word"};
  std::unordered_map<std::string, std::string> plot_rows;

  for (const Group& g : report_groups()) {
    std::vector<ErrorRecord> members;
    for (const auto& r : corpus) {
      if (g.member(r)) members.push_back(r);
    }
    if (members.empty()) continue;
    std::vector<ClassifiedError> group_results;
    for (const auto& c : sorted) {
      if (g.member(*by_id.at(c.record_id))) group_results.push_back(c);
    }

    for (Condition cond : g.conditions) {
      const std::string cname(to_string(cond));
      const Tabulation tab = tabulate(group_results, members, cond, tab_opts);
      const ConditionBreakdown bd = breakdown_from_table(tab.table, cname, is_binary(cond));

      const fs::path csv = out_dir / fmt::format("breakdown_{}_{}.csv", g.name, cname);
      {
        auto out = open_out(csv);
        out << "condition_value,n,corrected_pct,faithful_pct,incorrect_pct\n";
        for (const auto& [value, s] : bd.per_value) {
          out << value << ',' << s.n << ',' << pct(s.corrected_pct) << ','
              << pct(s.faithful_pct) << ',' << pct(s.incorrect_pct) << '\n';
        }
      }
      written.push_back(csv);

      if (std::find(plot_groups.begin(), plot_groups.end(), g.name) != plot_groups.end()) {
        std::string& rows = plot_rows[cname];
        for (const auto& [value, s] : bd.per_value) {
          double base = 0.0;
          const double shares[] = {s.corrected_pct, s.faithful_pct, s.incorrect_pct};
          for (std::size_t o = 0; o < 3; ++o) {
            rows += fmt::format("{},{},{},{},{},{}\n", g.name, value, s.n,
                                to_string(kOutcomes[o]), pct(shares[o]), pct(base));
            base += shares[o];
          }
        }
      }

      ordered_json t;
      t["group"] = g.name;
      t["condition"] = cname;
      t["rows"] = tab.table.row_labels;
      t["columns"] = tab.table.col_labels;
      t["counts"] = tab.table.counts;
      t["excluded_missing_attribute"] = tab.excluded_missing_attribute;
      t["excluded_alignment_failures"] = tab.excluded_alignment_failures;
      if (bd.deltas) {
        t["deltas_pct_points"] = {{"corrected", (*bd.deltas)[0]},
                                  {"faithful", (*bd.deltas)[1]},
                                  {"incorrect", (*bd.deltas)[2]}};
      }
      try {
        const ChiSquareResult res = chi_square(tab.table);
        t["statistic"] = res.statistic;
        t["df"] = res.df;
        t["p_value"] = res.p_value;
        t["expected"] = matrix_json(res.expected);
        t["min_expected"] = res.min_expected;
        t["low_expected_warning"] = res.low_expected_warning;
        t["insufficient_class_warning"] = res.insufficient_class_warning;
        t["degenerate"] = res.degenerate;
        t["excluded"] = res.min_expected < options.min_expected;
      } catch (const DegenerateTable& e) {
        t["statistic"] = nullptr;
        t["excluded"] = true;
        t["skipped_reason"] = e.what();
      }
      tests.push_back(std::move(t));
    }
  }
  summary["tests"] = std::move(tests);

  std::vector<std::string> plot_names;
  for (const auto& [name, rows] : plot_rows) plot_names.push_back(name);
  std::sort(plot_names.begin(), plot_names.end());
  for (const auto& name : plot_names) {
    const fs::path p = out_dir / fmt::format("plot_{}.csv", name);
    auto out = open_out(p);
    out << "error_type,condition_value,n,outcome,percent,stack_base\n" << plot_rows[name];
    written.push_back(p);
  }

  const fs::path summary_path = out_dir / "summary.json";
  {
    auto out = open_out(summary_path);
    out << summary.dump(2) << '\n';
  }
  written.push_back(summary_path);

  if (options.step_sample_k > 0) {
    const fs::path p = out_dir / "audit_sample.jsonl";
    auto out = open_out(p);
    for (const auto& c : step_sample(sorted, options.step_sample_k)) out << to_jsonl(c) << '\n';
    written.push_back(p);
  }
  return written;
}

}  // namespace slipeval
