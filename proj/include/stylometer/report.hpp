#pragma once

// Schemas and row builders for the report files.

#include <map>
#include <string>
#include <vector>

#include "stylometer/genre.hpp"
#include "stylometer/significance.hpp"
#include "stylometer/style_metrics.hpp"
#include "stylometer/table.hpp"
#include "stylometer/tiling.hpp"
#include "stylometer/tree_stats.hpp"

namespace stylometer::report {

const TableSchema& table1_schema();
const TableSchema& table2_schema();
const TableSchema& table3_schema();
const TableSchema& table4_schema();
const TableSchema& tests_schema();
const TableSchema& metrics_schema();
const TableSchema& assignments_schema();

std::vector<Row> table1_rows(const std::vector<CategoryRow>& means);
std::vector<Row> table2_rows(const std::vector<TileRow>& tiles, std::size_t word_threshold);
std::vector<Row> table3_rows(const std::vector<TreeRow>& trees);
std::vector<Row> table4_rows(const std::vector<ClusterRow>& clusters);

// A test that could not run (an empty category) is reported with its sample
// sizes and NA statistics.
struct TestOutcome {
  StyleField field;
  CategoryLabel first;
  CategoryLabel second;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::optional<RankSumResult> result;
};
std::vector<Row> tests_rows(const std::vector<TestOutcome>& tests);

std::vector<Row> metrics_rows(const StyleTable& vectors, const LabelMap& labels);
std::vector<Row> assignments_rows(const std::map<DocumentId, std::string>& assignments);

}  // namespace stylometer::report
