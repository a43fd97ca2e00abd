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

#include "slipeval/edit_distance.hpp"

#include "slipeval/text.hpp"

namespace slipeval {

std::size_t levenshtein(std::string_view a, std::string_view b) {
  const std::u32string ua = text::decode_utf8(a);
  const std::u32string ub = text::decode_utf8(b);
  return levenshtein(std::span<const char32_t>(ua), std::span<const char32_t>(ub));
}

double similarity(std::string_view a, std::string_view b) {
  const std::u32string ua = text::decode_utf8(a);
  const std::u32string ub = text::decode_utf8(b);
  const std::size_t longest = std::max(ua.size(), ub.size());
  if (longest == 0) return 1.0;
  const std::size_t d =
      levenshtein(std::span<const char32_t>(ua), std::span<const char32_t>(ub));
  return 1.0 - static_cast<double>(d) / static_cast<double>(longest);
}

TokenAlignment token_levenshtein(std::span<const std::string> a,
                                 std::span<const std::string> b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const std::size_t w = m + 1;
  std::vector<std::size_t> dp((n + 1) * w);
  for (std::size_t i = 0; i <= n; ++i) dp[i * w] = i;
  for (std::size_t j = 0; j <= m; ++j) dp[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub = dp[(i - 1) * w + j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      dp[i * w + j] = std::min({sub, dp[(i - 1) * w + j] + 1, dp[i * w + j - 1] + 1});
    }
  }

  TokenAlignment out;
  out.distance = dp[n * w + m];
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const std::size_t here = dp[i * w + j];
    if (i > 0 && j > 0 &&
        here == dp[(i - 1) * w + j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)) {
      out.pairing.emplace_back(i - 1, j - 1);
      --i;
      --j;
    } else if (i > 0 && here == dp[(i - 1) * w + j] + 1) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(out.pairing.begin(), out.pairing.end());
  return out;
}

}  // namespace slipeval
