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

#ifndef SLIPEVAL_EDIT_DISTANCE_HPP_
#define SLIPEVAL_EDIT_DISTANCE_HPP_

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace slipeval {

// Unit-cost Levenshtein distance with a single rolling row.
template <class T>
std::size_t levenshtein(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({sub, up + 1, row[j - 1] + 1});
      diag = up;
    }
  }
  return row[b.size()];
}

// Distance over Unicode code points of two UTF-8 strings.
std::size_t levenshtein(std::string_view a, std::string_view b);

// 1 - d / max(|a|, |b|) in code points; 1.0 when both are empty.
double similarity(std::string_view a, std::string_view b);

struct TokenAlignment {
  std::size_t distance = 0;
  // Matched or substituted (index_a, index_b) pairs in increasing order.
  std::vector<std::pair<std::size_t, std::size_t>> pairing;
};

// Token-level edit distance. The backtrace prefers match/substitute, then
// deletion from `a`, then insertion, so the pairing is deterministic.
TokenAlignment token_levenshtein(std::span<const std::string> a,
                                 std::span<const std::string> b);

}  // namespace slipeval

#endif  // SLIPEVAL_EDIT_DISTANCE_HPP_
