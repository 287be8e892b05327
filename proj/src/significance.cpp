#include "stylometer/significance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace stylometer {

Ranking rank_with_ties(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "cannot rank an empty sequence");
  for (double v : values) {
    if (std::isnan(v)) throw Error(ErrorKind::InvalidArgument, "cannot rank NaN");
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  Ranking out;
  out.ranks.resize(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Ranks i+1 .. j share their average.
    const double mid = static_cast<double>(i + 1 + j) / 2.0;
    for (std::size_t k = i; k < j; ++k) out.ranks[order[k]] = mid;
    if (j - i > 1) out.tie_groups.push_back(j - i);
    i = j;
  }
  return out;
}

std::vector<double> exact_u_counts(std::size_t n1, std::size_t n2) {
  // table[i][j][u]: arrangements of i items from sample 1 and j from sample 2
  // with U = u. Placing the largest remaining item from sample 1 adds j.
  std::vector<std::vector<std::vector<double>>> table(
      n1 + 1, std::vector<std::vector<double>>(n2 + 1));
  for (std::size_t i = 0; i <= n1; ++i) {
    for (std::size_t j = 0; j <= n2; ++j) {
      auto& cell = table[i][j];
      cell.assign(i * j + 1, 0.0);
      if (i == 0 || j == 0) {
        cell[0] = 1.0;
        continue;
      }
      const auto& from1 = table[i - 1][j];
      const auto& from2 = table[i][j - 1];
      for (std::size_t u = 0; u < from1.size(); ++u) cell[u + j] += from1[u];
      for (std::size_t u = 0; u < from2.size(); ++u) cell[u] += from2[u];
    }
  }
  return table[n1][n2];
}

namespace {

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

RankSumResult mann_whitney(std::span<const double> sample1, std::span<const double> sample2,
                           TestMode mode, Sidedness sidedness) {
  if (sample1.empty() || sample2.empty()) {
    throw Error(ErrorKind::EmptySample, "both samples need at least one value");
  }
  std::vector<double> combined(sample1.begin(), sample1.end());
  combined.insert(combined.end(), sample2.begin(), sample2.end());
  const Ranking ranking = rank_with_ties(combined);

  RankSumResult r;
  r.n1 = sample1.size();
  r.n2 = sample2.size();
  r.sidedness = sidedness;
  const double n1 = static_cast<double>(r.n1);
  const double n2 = static_cast<double>(r.n2);
  for (std::size_t i = 0; i < r.n1; ++i) r.rank_sum1 += ranking.ranks[i];
  r.u1 = r.rank_sum1 - n1 * (n1 + 1.0) / 2.0;
  r.u2 = n1 * n2 - r.u1;

  const bool exact_allowed = r.n1 + r.n2 <= kExactMaxTotal && ranking.tie_groups.empty();
  if (mode == TestMode::Exact && !exact_allowed) {
    throw Error(ErrorKind::ExactModeUnavailable,
                ranking.tie_groups.empty()
                    ? "exact test needs n1 + n2 <= " + std::to_string(kExactMaxTotal) +
                          "; use the normal approximation"
                    : "exact test is undefined with tied values; use the normal approximation");
  }

  if (mode == TestMode::Exact || (mode == TestMode::Auto && exact_allowed)) {
    r.mode = TestMode::Exact;
    const std::vector<double> counts = exact_u_counts(r.n1, r.n2);
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    const auto u = static_cast<std::size_t>(r.u1);  // integral without ties
    double lower = 0.0;
    for (std::size_t v = 0; v <= u; ++v) lower += counts[v];
    double upper = 0.0;
    for (std::size_t v = u; v < counts.size(); ++v) upper += counts[v];
    r.p_two_sided = clamp_probability(2.0 * std::min(lower, upper) / total);
    r.p_greater = clamp_probability(upper / total);
  } else {
    r.mode = TestMode::NormalApprox;
    const double n = n1 + n2;
    double tie_term = 0.0;
    for (std::size_t t : ranking.tie_groups) {
      const auto tt = static_cast<double>(t);
      tie_term += tt * tt * tt - tt;
    }
    const double mean = n1 * n2 / 2.0;
    const double variance = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    const double sd = variance > 0.0 ? std::sqrt(variance) : 0.0;
    const double diff = r.u1 - mean;
    if (sd == 0.0) {
      r.z = 0.0;
      r.p_two_sided = 1.0;
      r.p_greater = diff > 0.0 ? 0.0 : 1.0;
    } else {
      const double corrected = std::max(0.0, std::abs(diff) - 0.5);
      const double z = diff < 0.0 ? -corrected / sd : corrected / sd;
      r.z = z;
      r.p_two_sided = clamp_probability(2.0 * normal_upper_tail(std::abs(z)));
      r.p_greater = clamp_probability(normal_upper_tail((diff - 0.5) / sd));
    }
  }
  const double p = sidedness == Sidedness::TwoSided ? r.p_two_sided : r.p_greater;
  r.significant_95 = p < 0.05;
  return r;
}

CategoryTest category_tests(const StyleTable& vectors, const LabelMap& labels, StyleField field,
                            std::pair<CategoryLabel, CategoryLabel> pair, TestMode mode,
                            Sidedness sidedness) {
  CategoryTest out{field, pair.first, pair.second, {}, 0, 0};
  std::vector<double> first;
  std::vector<double> second;
  for (const auto& [id, v] : vectors) {
    auto it = labels.find(id);
    if (it == labels.end()) {
      throw Error(ErrorKind::MissingLabel, "document '" + id.str() + "' has no category label");
    }
    const bool in_first = it->second == pair.first;
    const bool in_second = it->second == pair.second;
    if (!in_first && !in_second) continue;
    auto value = field_value(v, field);
    if (in_first) {
      if (value) first.push_back(*value); else ++out.skipped_first;
    }
    if (in_second) {
      if (value) second.push_back(*value); else ++out.skipped_second;
    }
  }
  for (auto [label, sample] : {std::pair{pair.first, &first}, std::pair{pair.second, &second}}) {
    if (sample->empty()) {
      throw Error(ErrorKind::EmptyCategory, std::string(to_string(label)) + " has no defined " +
                                                std::string(field_name(field)) + " values");
    }
  }
  out.result = mann_whitney(first, second, mode, sidedness);
  return out;
}

}  // namespace stylometer
