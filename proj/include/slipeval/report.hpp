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

#ifndef SLIPEVAL_REPORT_HPP_
#define SLIPEVAL_REPORT_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "slipeval/classify.hpp"
#include "slipeval/corpus.hpp"

namespace slipeval {

struct ReportOptions {
  bool exclude_alignment_failures = false;
  // Tests whose smallest expected cell is below this are marked excluded.
  double min_expected = 0.0;
  // Write every k-th result to audit_sample.jsonl when k > 0.
  std::size_t step_sample_k = 0;
};

// Writes, under `out_dir`:
//   breakdown_<group>_<condition>.csv  condition_value,n,corrected_pct,...
//   plot_<condition>.csv               stacked shares per error type
//   summary.json                       counts, accuracy, every chi-square test
//   audit_sample.jsonl                 optional step sample
// Groups are all, sound, word and sound_<kind>. Output bytes depend only on
// the inputs. Returns the written paths in creation order.
std::vector<std::filesystem::path> write_report(
    const std::filesystem::path& out_dir, std::span<const ClassifiedError> classified,
    std::span<const ErrorRecord> corpus, const ReportOptions& options = {});

}  // namespace slipeval

#endif  // SLIPEVAL_REPORT_HPP_
