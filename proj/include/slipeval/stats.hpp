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

#ifndef SLIPEVAL_STATS_HPP_
#define SLIPEVAL_STATS_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace slipeval {

// Regularized upper incomplete gamma function Q(a, x), a > 0, x >= 0.
// Power series for x < a + 1, Lentz continued fraction otherwise.
double regularized_gamma_q(double a, double x);

// Upper-tail probability of the chi-square distribution: Q(df/2, x/2).
double chi_square_survival(double x, int df);

struct ContingencyTable {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<std::uint64_t>> counts;  // rows x cols

  std::size_t rows() const { return counts.size(); }
  std::size_t cols() const { return col_labels.size(); }
  std::uint64_t total() const;
};

struct ChiSquareResult {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  std::vector<std::vector<double>> expected;
  double min_expected = 0.0;
  bool low_expected_warning = false;        // some expected cell < 5
  bool insufficient_class_warning = false;  // some column total is 0
  bool degenerate = false;                  // some row or column total is 0
};

// Pearson's test of independence without continuity correction. Zero rows
// and columns are dropped from the statistic and the degrees of freedom
// (flagged as degenerate). Throws DegenerateTable when fewer than two
// non-empty rows or columns remain.
ChiSquareResult chi_square(const ContingencyTable& table);

}  // namespace slipeval

#endif  // SLIPEVAL_STATS_HPP_
