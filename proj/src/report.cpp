#include "stylometer/report.hpp"

namespace stylometer::report {

namespace {

Cell count(std::size_t n) { return static_cast<std::int64_t>(n); }
Cell text(std::string_view s) { return std::string(s); }

}  // namespace

const TableSchema& table1_schema() {
  static const TableSchema s{
      {"Category", "Number", "WordCount", "TypeTokenRatio", "WordLength", "WordsPerSentence"}};
  return s;
}

const TableSchema& table2_schema() {
  static const TableSchema s{{"Subset", "Category", "Number", "Tiles"}};
  return s;
}

const TableSchema& table3_schema() {
  static const TableSchema s{{"Category", "Number", "Depth", "Skips"}};
  return s;
}

const TableSchema& table4_schema() {
  static const TableSchema s{{"Cluster", "N", "RelevantPercent", "Category", "Number",
                              "TreeDepth", "Skips", "Words", "TypeTokenRatio", "CharsPerWord",
                              "DigitsPerKChar", "WordsPerSentence"}};
  return s;
}

const TableSchema& tests_schema() {
  static const TableSchema s{{"Field", "Pair", "N1", "N2", "U1", "Z", "P", "Significant"}};
  return s;
}

const TableSchema& metrics_schema() {
  static const TableSchema s{{"DocId", "Category", "WordCount", "TypeTokenRatio", "WordLength",
                              "WordsPerSentence", "DigitsPerKChar", "LongWordRatio", "Tiles",
                              "TreeDepth", "SkipRate"}};
  return s;
}

const TableSchema& assignments_schema() {
  static const TableSchema s{{"DocId", "Cluster"}};
  return s;
}

std::vector<Row> table1_rows(const std::vector<CategoryRow>& means) {
  std::vector<Row> rows;
  for (const auto& m : means) {
    const auto& s = m.summary;
    rows.push_back({text(to_string(m.category)), count(s.count),
                    real_or_na(s.field(StyleField::WordCount).mean),
                    real_or_na(s.field(StyleField::TypeTokenRatio).mean),
                    real_or_na(s.field(StyleField::AvgWordLength).mean),
                    real_or_na(s.field(StyleField::WordsPerSentence).mean)});
  }
  return rows;
}

std::vector<Row> table2_rows(const std::vector<TileRow>& tiles, std::size_t word_threshold) {
  std::vector<Row> rows;
  const std::string over = "over_" + std::to_string(word_threshold);
  for (const auto& t : tiles) {
    rows.push_back({text(t.over_threshold ? over : "all"), text(to_string(t.category)),
                    count(t.count), real_or_na(t.mean_tiles)});
  }
  return rows;
}

std::vector<Row> table3_rows(const std::vector<TreeRow>& trees) {
  std::vector<Row> rows;
  for (const auto& t : trees) {
    rows.push_back({text(to_string(t.category)), count(t.count), real_or_na(t.mean_depth),
                    real_or_na(t.mean_skip_rate)});
  }
  return rows;
}

std::vector<Row> table4_rows(const std::vector<ClusterRow>& clusters) {
  std::vector<Row> rows;
  for (const auto& c : clusters) {
    for (CategoryLabel label : kAllCategories) {
      const GroupSummary& s = c.by_category[static_cast<std::size_t>(label)];
      Row row{text(c.genre), count(c.count), c.relevant_percent, text(to_string(label)),
              count(s.count)};
      for (StyleField f : kGenreFeatures) row.push_back(real_or_na(s.field(f).mean));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<Row> tests_rows(const std::vector<TestOutcome>& tests) {
  std::vector<Row> rows;
  for (const auto& t : tests) {
    Row row{text(field_name(t.field)),
            text(std::string(to_string(t.first)) + "-" + std::string(to_string(t.second))),
            count(t.n1), count(t.n2)};
    if (t.result) {
      const RankSumResult& r = *t.result;
      const double p = r.sidedness == Sidedness::TwoSided ? r.p_two_sided : r.p_greater;
      row.push_back(ExactReal{r.u1});
      row.push_back(real_or_na(r.z));
      row.push_back(p);
      row.push_back(text(r.significant_95 ? "yes" : "no"));
    } else {
      row.insert(row.end(), {NotAvailable{}, NotAvailable{}, NotAvailable{}, NotAvailable{}});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Row> metrics_rows(const StyleTable& vectors, const LabelMap& labels) {
  std::vector<Row> rows;
  for (const auto& [id, v] : vectors) {
    auto it = labels.find(id);
    Row row{text(id.str()), it == labels.end() ? Cell{NotAvailable{}} : text(to_string(it->second)),
            count(v.word_count)};
    for (StyleField f : {StyleField::TypeTokenRatio, StyleField::AvgWordLength,
                         StyleField::WordsPerSentence, StyleField::DigitsPerKChar,
                         StyleField::LongWordRatio}) {
      row.push_back(real_or_na(field_value(v, f)));
    }
    row.push_back(v.tile_count ? count(*v.tile_count) : Cell{NotAvailable{}});
    row.push_back(real_or_na(v.tree_depth));
    row.push_back(real_or_na(v.skip_rate));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Row> assignments_rows(const std::map<DocumentId, std::string>& assignments) {
  std::vector<Row> rows;
  for (const auto& [id, genre] : assignments) rows.push_back({text(id.str()), text(genre)});
  return rows;
}

}  // namespace stylometer::report
