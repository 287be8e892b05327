// stylometer: style-marker analysis of a TREC collection split by relevance
// judgments.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stylometer/pipeline.hpp"
#include "stylometer/table.hpp"

namespace {

using stylometer::PipelineConfig;
using stylometer::ReportKind;

struct Options {
  std::vector<std::string> docs;
  std::string qrels;
  std::string trees;
  std::string seeds;
  std::string abbrev;
  std::string out = ".";
  std::vector<std::string> reports;
  std::vector<std::string> pairs;
  bool lenient = false;
  bool one_sided = false;
  bool pretty = false;
};

void add_inputs(CLI::App* cmd, Options& o, PipelineConfig& c, bool outputs) {
  cmd->add_option("--docs", o.docs, "TREC SGML document file (repeatable)")->required();
  cmd->add_option("--qrels", o.qrels, "relevance judgments, 'qid 0 docno rel'")->required();
  cmd->add_option("--abbrev", o.abbrev, "abbreviation list, one per line");
  cmd->add_flag("--lenient", o.lenient, "skip malformed records instead of failing");
  cmd->add_option("--threads", c.threads, "worker threads (default: $STYLOMETER_THREADS or all cores)");
  if (!outputs) return;
  cmd->add_option("--trees", o.trees, "bracketed parse trees grouped by '#DOC <id>'");
  cmd->add_option("--seeds", o.seeds, "seed genre labels, 'docid<TAB>genre'");
  cmd->add_option("--out", o.out, "output directory")->capture_default_str();
  cmd->add_option("--tiling-w", c.tiling.pseudo_sentence_size, "tokens per pseudo-sentence")
      ->capture_default_str();
  cmd->add_option("--tiling-k", c.tiling.block_size, "pseudo-sentences per block")->capture_default_str();
  cmd->add_option("--tiling-smooth", c.tiling.smoothing_width, "moving-average width")
      ->capture_default_str();
  cmd->add_option("--tiling-smooth-rounds", c.tiling.smoothing_rounds, "smoothing passes")
      ->capture_default_str();
  cmd->add_option("--skip-marker", c.skip_marker, "leaf label marking skipped parses")
      ->capture_default_str();
  cmd->add_flag("--one-sided", o.one_sided, "test whether the first category is larger");
  cmd->add_option("--pair", o.pairs, "category pair to test, e.g. Relevant:NotJudged (repeatable)");
  cmd->add_option("--ridge", c.ridge_scale, "covariance ridge as a fraction of mean variance")
      ->capture_default_str();
  cmd->add_option("--long-words", c.long_document_words, "word threshold for long documents")
      ->capture_default_str();
  cmd->add_flag("--pretty", o.pretty, "also print the tables aligned on stdout");
}

void finish_config(const Options& o, PipelineConfig& c) {
  for (const auto& d : o.docs) c.docs.emplace_back(d);
  if (!o.qrels.empty()) c.qrels = o.qrels;
  if (!o.trees.empty()) c.trees = o.trees;
  if (!o.seeds.empty()) c.seeds = o.seeds;
  if (!o.abbrev.empty()) c.abbreviations = o.abbrev;
  c.output_dir = o.out;
  c.parse_mode = o.lenient ? stylometer::ParseMode::Lenient : stylometer::ParseMode::Strict;
  c.sidedness = o.one_sided ? stylometer::Sidedness::Greater : stylometer::Sidedness::TwoSided;
  if (!o.pairs.empty()) {
    c.test_pairs.clear();
    for (const auto& p : o.pairs) {
      auto colon = p.find(':');
      if (colon == std::string::npos) {
        throw stylometer::Error(stylometer::ErrorKind::InvalidArgument,
                                "--pair expects FIRST:SECOND, got '" + p + "'");
      }
      c.test_pairs.emplace_back(stylometer::parse_category(p.substr(0, colon)),
                                stylometer::parse_category(p.substr(colon + 1)));
    }
  }
}

void print_pretty(const stylometer::RunResult& result) {
  for (const auto& path : result.written) {
    if (path.extension() != ".tsv") continue;
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    std::cout << path.filename().string() << "\n" << stylometer::pretty_table(ss.str()) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Style-marker statistics for a relevance-judged document collection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(stylometer::kToolVersion));

  Options o;
  PipelineConfig config;

  struct Sub {
    CLI::App* cmd;
    std::vector<ReportKind> reports;
  };
  auto* check = app.add_subcommand("ingest-check", "parse the corpus and qrels, print category counts");
  add_inputs(check, o, config, false);

  std::vector<Sub> subs = {
      {app.add_subcommand("metrics", "per-document style vectors (metrics.tsv)"), {ReportKind::Metrics}},
      {app.add_subcommand("tile", "tile counts by category (table2.tsv)"), {ReportKind::Table2}},
      {app.add_subcommand("trees", "tree depth and skip rates (table3.tsv)"), {ReportKind::Table3}},
      {app.add_subcommand("test", "Mann-Whitney tests between categories (tests.tsv)"), {ReportKind::Tests}},
      {app.add_subcommand("genre", "discriminant genre clusters (table4.tsv)"), {ReportKind::Table4}},
      {app.add_subcommand("report", "any set of reports (--reports)"), {}},
  };
  for (auto& s : subs) add_inputs(s.cmd, o, config, true);
  CLI::App* report_cmd = subs.back().cmd;
  report_cmd->add_option("--reports", o.reports,
                         "comma-separated subset of table1,table2,table3,table4,tests,metrics "
                         "(default: table1,table2,tests plus table3/table4 when --trees/--seeds given)")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    finish_config(o, config);
    if (check->parsed()) {
      return stylometer::ingest_check(config, std::cout).exit_code;
    }
    for (const auto& s : subs) {
      if (!s.cmd->parsed()) continue;
      config.reports.insert(s.reports.begin(), s.reports.end());
    }
    if (report_cmd->parsed()) {
      if (o.reports.empty()) {
        config.reports = {ReportKind::Table1, ReportKind::Table2, ReportKind::Tests};
        if (config.trees) config.reports.insert(ReportKind::Table3);
        if (config.seeds) config.reports.insert(ReportKind::Table4);
      }
      for (const auto& r : o.reports) config.reports.insert(stylometer::parse_report_kind(r));
    }
  } catch (const stylometer::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  stylometer::RunResult result = stylometer::run(config, std::cerr);
  if (result.exit_code == 0 && o.pretty) print_pretty(result);
  return result.exit_code;
}
