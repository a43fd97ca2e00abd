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

#include "slipeval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "slipeval/errors.hpp"

namespace slipeval {

namespace {

constexpr int kMaxIterations = 10000;
constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

// exp(-x) x^a / Gamma(a)
double gamma_prefactor(double a, double x) {
  return std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double lower_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEpsilon) break;
  }
  return sum * gamma_prefactor(a, x);
}

double upper_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return gamma_prefactor(a, x) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("gamma shape must be > 0");
  if (!(x >= 0.0)) throw std::invalid_argument("gamma argument must be >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return std::clamp(1.0 - lower_series(a, x), 0.0, 1.0);
  return std::clamp(upper_continued_fraction(a, x), 0.0, 1.0);
}

double chi_square_survival(double x, int df) {
  if (df < 1) throw std::invalid_argument("chi-square df must be >= 1");
  if (!(x >= 0.0)) throw std::invalid_argument("chi-square statistic must be >= 0");
  return regularized_gamma_q(0.5 * df, 0.5 * x);
}

std::uint64_t ContingencyTable::total() const {
  std::uint64_t t = 0;
  for (const auto& row : counts) t = std::accumulate(row.begin(), row.end(), t);
  return t;
}

ChiSquareResult chi_square(const ContingencyTable& table) {
  const std::size_t r = table.rows();
  const std::size_t c = table.cols();
  for (const auto& row : table.counts) {
    if (row.size() != c) throw DegenerateTable("ragged contingency table");
  }
  if (r < 2 || c < 2) {
    throw DegenerateTable(fmt::format("need at least 2x2 cells, got {}x{}", r, c));
  }
  const std::uint64_t n = table.total();
  if (n == 0) throw DegenerateTable("contingency table is empty");

  std::vector<double> row_tot(r, 0.0);
  std::vector<double> col_tot(c, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      row_tot[i] += static_cast<double>(table.counts[i][j]);
      col_tot[j] += static_cast<double>(table.counts[i][j]);
    }
  }
  const auto nonzero = [](const std::vector<double>& v) {
    return static_cast<std::size_t>(std::count_if(v.begin(), v.end(),
                                                  [](double x) { return x > 0.0; }));
  };
  const std::size_t live_rows = nonzero(row_tot);
  const std::size_t live_cols = nonzero(col_tot);

  ChiSquareResult res;
  res.degenerate = live_rows != r || live_cols != c;
  res.insufficient_class_warning = live_cols != c;
  if (live_rows < 2 || live_cols < 2) {
    throw DegenerateTable(fmt::format(
        "only {} non-empty row(s) and {} non-empty column(s)", live_rows, live_cols));
  }

  const double total = static_cast<double>(n);
  res.expected.assign(r, std::vector<double>(c, 0.0));
  res.min_expected = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const double e = row_tot[i] * col_tot[j] / total;
      res.expected[i][j] = e;
      res.min_expected = std::min(res.min_expected, e);
      if (e > 0.0) {
        const double diff = static_cast<double>(table.counts[i][j]) - e;
        res.statistic += diff * diff / e;
      }
    }
  }
  res.low_expected_warning = res.min_expected < 5.0;
  res.df = static_cast<int>((live_rows - 1) * (live_cols - 1));
  res.p_value = chi_square_survival(res.statistic, res.df);
  return res;
}

}  // namespace slipeval
