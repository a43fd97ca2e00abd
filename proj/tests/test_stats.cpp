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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "doctest.h"
#include "slipeval/errors.hpp"
#include "slipeval/stats.hpp"

using namespace slipeval;

namespace {

ContingencyTable table(std::vector<std::vector<std::uint64_t>> counts) {
  ContingencyTable t;
  for (std::size_t i = 0; i < counts.size(); ++i) t.row_labels.push_back("r" + std::to_string(i));
  for (std::size_t j = 0; j < counts.at(0).size(); ++j) {
    t.col_labels.push_back("c" + std::to_string(j));
  }
  t.counts = std::move(counts);
  return t;
}

// Pearson statistic straight from the definition, long double throughout.
long double pearson(const std::vector<std::vector<std::uint64_t>>& m) {
  long double n = 0;
  std::vector<long double> rt(m.size(), 0), ct(m[0].size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      rt[i] += m[i][j];
      ct[j] += m[i][j];
      n += m[i][j];
    }
  }
  long double x = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      const long double e = rt[i] * ct[j] / n;
      x += (m[i][j] - e) * (m[i][j] - e) / e;
    }
  }
  return x;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("worked two by two") {
  const auto res = chi_square(table({{10, 20}, {30, 40}}));
  // Expected counts 12, 18, 28, 42.
  CHECK(res.expected[0][0] == doctest::Approx(12.0));
  CHECK(res.expected[0][1] == doctest::Approx(18.0));
  CHECK(res.expected[1][0] == doctest::Approx(28.0));
  CHECK(res.expected[1][1] == doctest::Approx(42.0));
  const double hand = 4.0 / 12 + 4.0 / 18 + 4.0 / 28 + 4.0 / 42;
  CHECK(std::fabs(res.statistic - hand) < 1e-12);
  CHECK(std::fabs(res.statistic - 0.793651) < 1e-6);
  CHECK(res.df == 1);
  CHECK(std::fabs(res.p_value - boost::math::gamma_q(0.5, res.statistic / 2)) < 1e-10);
  CHECK_FALSE(res.low_expected_warning);
  CHECK_FALSE(res.degenerate);
}

TEST_CASE("proportional rows give exactly zero") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> base(1, 40);
  std::uniform_int_distribution<std::uint64_t> mult(1, 9);
  std::uniform_int_distribution<std::size_t> dim(2, 5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::uint64_t> b(dim(rng));
    for (auto& v : b) v = base(rng);
    std::vector<std::vector<std::uint64_t>> m(dim(rng));
    for (auto& row : m) {
      const auto k = mult(rng);
      for (auto v : b) row.push_back(v * k);
    }
    const auto res = chi_square(table(m));
    CHECK(res.statistic == 0.0);
    CHECK(res.p_value == 1.0);
  }
}

TEST_CASE("survival against critical value tables") {
  CHECK(std::fabs(chi_square_survival(3.841, 1) - 0.05) < 5e-4);
  CHECK(std::fabs(chi_square_survival(6.635, 1) - 0.01) < 5e-4);
  CHECK(std::fabs(chi_square_survival(5.991, 2) - 0.05) < 5e-4);
  CHECK(std::fabs(chi_square_survival(9.488, 4) - 0.05) < 5e-4);
  CHECK(std::fabs(chi_square_survival(23.209, 10) - 0.01) < 5e-4);
  for (int k = 1; k <= 30; ++k) CHECK(chi_square_survival(0.0, k) == 1.0);
}

TEST_CASE("survival matches an independent incomplete gamma") {
  double worst = 0.0;
  for (int df = 1; df <= 10; ++df) {
    for (double x = 0.0; x <= 50.0; x += 0.125) {
      const double want = boost::math::gamma_q(df / 2.0, x / 2.0);
      worst = std::max(worst, std::fabs(chi_square_survival(x, df) - want));
    }
  }
  CHECK(worst <= 1e-8);
  for (double a : {0.5, 1.0, 2.5, 7.0, 30.0, 120.0}) {
    for (double x : {1e-6, 0.1, 1.0, a, a + 1.0, 2 * a, 200.0}) {
      CAPTURE(a);
      CAPTURE(x);
      CHECK(regularized_gamma_q(a, x) ==
            doctest::Approx(boost::math::gamma_q(a, x)).epsilon(1e-9).scale(1e-300));
    }
  }
}

TEST_CASE("survival is decreasing and vanishes") {
  for (int df : {1, 2, 3, 5, 8, 20}) {
    double prev = 1.0;
    for (double x = 0.0; x <= 200.0; x += 0.25) {
      const double q = chi_square_survival(x, df);
      CHECK(q <= prev);
      CHECK(q >= 0.0);
      prev = q;
    }
    CHECK(chi_square_survival(1e4, df) < 1e-100);
  }
  CHECK_THROWS(chi_square_survival(1.0, 0));
  CHECK_THROWS(chi_square_survival(-1.0, 1));
}

TEST_CASE("large dependent table is significant") {
  const auto res = chi_square(table({{81, 2, 17}, {43, 31, 26}}));
  CHECK(res.df == 2);
  CHECK(std::fabs(res.statistic - static_cast<double>(pearson({{81, 2, 17}, {43, 31, 26}}))) <
        1e-9);
  CHECK(res.p_value < 0.001);
  CHECK(res.p_value == doctest::Approx(boost::math::gamma_q(1.0, res.statistic / 2)));
}

TEST_CASE("statistic matches the definition on random tables") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::uint64_t> cell(1, 60);
  std::uniform_int_distribution<std::size_t> dim(2, 6);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::vector<std::uint64_t>> m(dim(rng));
    const std::size_t cols = dim(rng);
    for (auto& row : m) {
      row.resize(cols);
      for (auto& v : row) v = cell(rng);
    }
    const auto res = chi_square(table(m));
    CHECK(res.statistic == doctest::Approx(static_cast<double>(pearson(m))).epsilon(1e-10));
    CHECK(res.df == static_cast<int>((m.size() - 1) * (cols - 1)));
    CHECK(res.p_value >= 0.0);
    CHECK(res.p_value <= 1.0);
  }
}

TEST_CASE("permutation invariance and scaling") {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<std::uint64_t> cell(0, 30);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<std::uint64_t>> m(3, std::vector<std::uint64_t>(3));
    for (auto& row : m) {
      for (auto& v : row) v = cell(rng) + 1;
    }
    const double base = chi_square(table(m)).statistic;
    auto rows = m;
    std::shuffle(rows.begin(), rows.end(), rng);
    CHECK(chi_square(table(rows)).statistic == doctest::Approx(base).epsilon(1e-12));
    std::vector<std::size_t> perm{0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    auto cols = m;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) cols[i][j] = m[i][perm[j]];
    }
    CHECK(chi_square(table(cols)).statistic == doctest::Approx(base).epsilon(1e-12));
  }
  const double one = chi_square(table({{10, 20}, {30, 40}})).statistic;
  for (std::uint64_t c : {2u, 3u, 7u, 100u}) {
    const double scaled = chi_square(table({{10 * c, 20 * c}, {30 * c, 40 * c}})).statistic;
    CHECK(scaled == doctest::Approx(one * static_cast<double>(c)).epsilon(1e-13));
  }
}

TEST_CASE("warnings and degenerate tables") {
  auto res = chi_square(table({{3, 4}, {5, 2}}));
  CHECK(res.low_expected_warning);
  CHECK(res.min_expected < 5.0);

  // A missing outcome class is dropped from the degrees of freedom.
  res = chi_square(table({{10, 0, 20}, {30, 0, 40}}));
  CHECK(res.insufficient_class_warning);
  CHECK(res.degenerate);
  CHECK(res.df == 1);
  CHECK(res.statistic == doctest::Approx(0.793651).epsilon(1e-6));

  CHECK_THROWS_AS(chi_square(table({{1, 2, 3}})), DegenerateTable);
  CHECK_THROWS_AS(chi_square(table({{1}, {2}})), DegenerateTable);
  CHECK_THROWS_AS(chi_square(table({{0, 0}, {0, 0}})), DegenerateTable);
  CHECK_THROWS_AS(chi_square(table({{0, 0}, {3, 4}})), DegenerateTable);
  CHECK_THROWS_AS(chi_square(table({{5, 0}, {3, 0}})), DegenerateTable);
}

}  // TEST_SUITE
