#pragma once

// Two-sample Mann-Whitney U (Wilcoxon rank-sum) test.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "stylometer/style_metrics.hpp"

namespace stylometer {

struct Ranking {
  std::vector<double> ranks;  // 1-based, parallel to the input, mid-ranks for ties
  std::vector<std::size_t> tie_groups;  // sizes of tied blocks with more than one member
};

// Throws EmptyInput for no values, InvalidArgument for NaN.
Ranking rank_with_ties(std::span<const double> values);

enum class TestMode { Auto, Exact, NormalApprox };

// Greater: the alternative is that sample 1 tends to be larger.
enum class Sidedness { TwoSided, Greater };

// Largest n1 + n2 for which the exact null distribution is used.
inline constexpr std::size_t kExactMaxTotal = 25;

struct RankSumResult {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double u1 = 0.0;  // pairs (x from sample 1, y from sample 2) with x > y, ties counting 1/2
  double u2 = 0.0;
  double rank_sum1 = 0.0;
  std::optional<double> z;  // normal approximation only; continuity-corrected
  double p_two_sided = 1.0;
  double p_greater = 1.0;  // P(U1 >= observed) under the null
  Sidedness sidedness = Sidedness::TwoSided;
  bool significant_95 = false;  // p for the chosen sidedness below 0.05
  TestMode mode = TestMode::NormalApprox;  // Exact or NormalApprox, never Auto
};

// Number of rank assignments giving each U1 = 0..n1*n2 when there are no
// ties. Entries are exact integers for n1 + n2 <= kExactMaxTotal.
std::vector<double> exact_u_counts(std::size_t n1, std::size_t n2);

// Auto uses the exact distribution when n1 + n2 <= kExactMaxTotal and no
// values are tied, the normal approximation (tie-corrected variance,
// continuity correction 0.5) otherwise. Explicit Exact throws
// ExactModeUnavailable when that condition fails.
RankSumResult mann_whitney(std::span<const double> sample1, std::span<const double> sample2,
                           TestMode mode = TestMode::Auto,
                           Sidedness sidedness = Sidedness::TwoSided);

struct CategoryTest {
  StyleField field;
  CategoryLabel first;
  CategoryLabel second;
  RankSumResult result;
  std::size_t skipped_first = 0;  // documents with the field undefined
  std::size_t skipped_second = 0;
};

// Throws EmptyCategory when either category has no defined value for the
// field, MissingLabel for an unlabelled vector.
CategoryTest category_tests(const StyleTable& vectors, const LabelMap& labels, StyleField field,
                            std::pair<CategoryLabel, CategoryLabel> pair,
                            TestMode mode = TestMode::Auto,
                            Sidedness sidedness = Sidedness::TwoSided);

}  // namespace stylometer
