#pragma once

// End-to-end corpus analysis: ingestion, per-document metrics, tests and
// genre clustering, written as TSV reports plus a run manifest.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stylometer/corpus.hpp"
#include "stylometer/significance.hpp"
#include "stylometer/tiling.hpp"
#include "stylometer/tree_stats.hpp"

namespace stylometer {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class ReportKind { Table1, Table2, Table3, Table4, Tests, Metrics };

std::string_view to_string(ReportKind kind);
ReportKind parse_report_kind(std::string_view name);

struct PipelineConfig {
  std::vector<std::filesystem::path> docs;
  std::optional<std::filesystem::path> qrels;
  std::optional<std::filesystem::path> trees;
  std::optional<std::filesystem::path> seeds;
  std::optional<std::filesystem::path> abbreviations;
  std::filesystem::path output_dir = ".";

  TilingParams tiling;
  std::string skip_marker{kDefaultSkipMarker};
  Sidedness sidedness = Sidedness::TwoSided;
  ParseMode parse_mode = ParseMode::Strict;
  // 0: STYLOMETER_THREADS if set, else hardware concurrency.
  std::size_t threads = 0;
  double ridge_scale = 1e-6;
  std::size_t long_document_words = 1000;

  std::set<ReportKind> reports;
  std::vector<std::pair<CategoryLabel, CategoryLabel>> test_pairs = {
      {CategoryLabel::Relevant, CategoryLabel::NonRelevant}};
};

// Throws MissingDependency when a requested report lacks its inputs.
void validate(const PipelineConfig& config);

struct RunResult {
  int exit_code = 0;  // 0 success, 2 input error, 1 internal error
  std::vector<std::filesystem::path> written;
  std::vector<std::string> warnings;
  std::string error;
};

// Writes one TSV per requested report plus manifest.json into the output
// directory. Nothing is left behind when the run fails. table4 also writes
// genre_model.txt and assignments.tsv.
RunResult run(const PipelineConfig& config, std::ostream& log);

// Parses the corpus and qrels and prints per-category counts. Writes nothing.
RunResult ingest_check(const PipelineConfig& config, std::ostream& out);

std::size_t resolve_thread_count(std::size_t requested);

}  // namespace stylometer
