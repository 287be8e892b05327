#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "stylometer/genre.hpp"
#include "stylometer/pipeline.hpp"
#include "stylometer/significance.hpp"
#include "synthetic.hpp"
#include "test_helpers.hpp"

using namespace stylometer;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("stylometer-test-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

PipelineConfig fixture_config(const fs::path& out) {
  PipelineConfig c;
  c.docs = {testing::data_path("style_fixture.sgml")};
  c.qrels = testing::data_path("style_fixture_qrels.txt");
  c.output_dir = out;
  c.threads = 2;
  c.reports = {ReportKind::Table1, ReportKind::Table2, ReportKind::Tests, ReportKind::Metrics};
  return c;
}

}  // namespace

TEST_CASE("table1 over the style fixture matches the golden file") {
  TempDir dir;
  std::ostringstream log;
  auto r = run(fixture_config(dir.path), log);
  REQUIRE_MESSAGE(r.exit_code == 0, r.error);
  CHECK(slurp(dir.path / "table1.tsv") == testing::read_data("golden_table1.tsv"));
  CHECK(fs::exists(dir.path / "manifest.json"));
  CHECK(fs::exists(dir.path / "metrics.tsv"));
  CHECK(fs::exists(dir.path / "table2.tsv"));
}

TEST_CASE("rank-sum tests over the style fixture match the reference") {
  TempDir dir;
  std::ostringstream log;
  auto r = run(fixture_config(dir.path), log);
  REQUIRE(r.exit_code == 0);
  auto golden = testing::read_tsv("golden_tests.tsv");
  std::istringstream tests(slurp(dir.path / "tests.tsv"));
  std::map<std::string, std::vector<std::string>> rows;
  for (std::string line; std::getline(tests, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, '\t');) cells.push_back(cell);
    rows[cells[0]] = cells;
  }
  for (std::size_t i = 1; i < golden.size(); ++i) {
    const auto& g = golden[i];
    CAPTURE(g[0]);
    REQUIRE(rows.count(g[0]));
    const auto& row = rows[g[0]];
    CHECK(row[1] == "Relevant-NonRelevant");
    CHECK(row[2] == g[1]);
    CHECK(row[3] == g[2]);
    CHECK(std::stod(row[4]) == std::stod(g[3]));
    CHECK(std::stod(row[6]) == doctest::Approx(std::stod(g[4])).epsilon(1e-3));
    CHECK(row[7] == "no");
  }
  CHECK(rows.count("tile_count"));
  CHECK_FALSE(rows.count("tree_depth"));
}

TEST_CASE("missing dependencies exit 2 and write nothing") {
  TempDir dir;
  auto c = fixture_config(dir.path);
  c.reports.insert(ReportKind::Table3);
  std::ostringstream log;
  auto r = run(c, log);
  CHECK(r.exit_code == 2);
  CHECK(r.error.find("trees") != std::string::npos);
  CHECK(fs::is_empty(dir.path));
  c.reports = {ReportKind::Table4};
  CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("a malformed input leaves no partial outputs") {
  TempDir dir;
  spit(dir.path / "bad.sgml", "<DOC><DOCNO>A</DOCNO><TEXT>x</TEXT></DOC>\n<DOC><TEXT>no id</TEXT></DOC>\n");
  spit(dir.path / "q.txt", "1 0 A 1\n");
  fs::path out = dir.path / "out";
  PipelineConfig c;
  c.docs = {dir.path / "bad.sgml"};
  c.qrels = dir.path / "q.txt";
  c.output_dir = out;
  c.reports = {ReportKind::Table1};
  std::ostringstream log;
  auto r = run(c, log);
  CHECK(r.exit_code == 2);
  CHECK(r.error.find("bad.sgml") != std::string::npos);
  CHECK((!fs::exists(out) || fs::is_empty(out)));

  c.parse_mode = ParseMode::Lenient;
  auto lenient = run(c, log);
  REQUIRE(lenient.exit_code == 0);
  CHECK_FALSE(lenient.warnings.empty());
  CHECK(slurp(out / "manifest.json").find("\"skipped_records\": 1") != std::string::npos);
}

TEST_CASE("runs are deterministic across thread counts") {
  testing::CorpusSpec spec;
  spec.counts[0] = 30;
  spec.counts[1] = 40;
  spec.counts[2] = 50;
  auto corpus = testing::make_corpus(spec);
  TempDir dir;
  spit(dir.path / "docs.sgml", corpus.sgml);
  spit(dir.path / "qrels.txt", corpus.qrels);
  std::string previous;
  for (std::size_t threads : {1, 3, 1}) {
    PipelineConfig c;
    c.docs = {dir.path / "docs.sgml"};
    c.qrels = dir.path / "qrels.txt";
    c.output_dir = dir.path / ("out" + std::to_string(threads));
    c.threads = threads;
    c.reports = {ReportKind::Table1, ReportKind::Table2, ReportKind::Tests, ReportKind::Metrics};
    std::ostringstream log;
    REQUIRE(run(c, log).exit_code == 0);
    std::string all;
    for (const char* f : {"table1.tsv", "table2.tsv", "tests.tsv", "metrics.tsv", "manifest.json"}) {
      all += slurp(c.output_dir / f);
    }
    if (!previous.empty()) CHECK(all == previous);
    previous = all;
  }
}

TEST_CASE("manifest lists inputs with digests") {
  TempDir dir;
  std::ostringstream log;
  REQUIRE(run(fixture_config(dir.path), log).exit_code == 0);
  auto manifest = slurp(dir.path / "manifest.json");
  CHECK(manifest.find("\"role\": \"docs[0]\"") != std::string::npos);
  CHECK(manifest.find("\"role\": \"qrels\"") != std::string::npos);
  CHECK(manifest.find("\"sha256\"") != std::string::npos);
  CHECK(manifest.find("\"documents\": 50") != std::string::npos);
  CHECK(manifest.find("threads") == std::string::npos);
}

TEST_CASE("trees and genre reports") {
  TempDir dir;
  std::string sgml, qrels, trees, seeds;
  std::mt19937_64 rng(90);
  auto vocab = testing::random_vocabulary(rng, 200);
  for (int i = 0; i < 40; ++i) {
    std::string id = "G" + std::to_string(i);
    sgml += "<DOC><DOCNO>" + id + "</DOCNO><TEXT>" +
            testing::random_prose(rng, vocab, 50 + static_cast<std::size_t>(i) * 7, i % 2 ? 0.2 : 0.0) +
            "</TEXT></DOC>\n";
    qrels += "1 0 " + id + (i % 3 == 0 ? " 1\n" : " 0\n");
    if (i != 39) {
      trees += "#DOC " + id + "\n";
      for (int t = 0; t < 3; ++t) trees += serialize(testing::random_tree(rng, 6, 3, 0.1)) + "\n";
    }
    if (i < 20) seeds += id + "\t" + (i % 2 ? "A" : "B") + "\n";
  }
  spit(dir.path / "d.sgml", sgml);
  spit(dir.path / "q.txt", qrels);
  spit(dir.path / "t.txt", trees);
  spit(dir.path / "s.txt", seeds);
  PipelineConfig c;
  c.docs = {dir.path / "d.sgml"};
  c.qrels = dir.path / "q.txt";
  c.trees = dir.path / "t.txt";
  c.seeds = dir.path / "s.txt";
  c.output_dir = dir.path / "out";
  c.reports = {ReportKind::Table3, ReportKind::Table4, ReportKind::Tests};
  std::ostringstream log;
  auto r = run(c, log);
  REQUIRE_MESSAGE(r.exit_code == 0, r.error);
  auto t3 = slurp(c.output_dir / "table3.tsv");
  CHECK(t3.rfind("Category\tNumber\tDepth\tSkips\n", 0) == 0);
  auto t4 = slurp(c.output_dir / "table4.tsv");
  CHECK(t4.rfind("Cluster\tN\tRelevantPercent\t", 0) == 0);
  auto assignments = slurp(c.output_dir / "assignments.tsv");
  CHECK(assignments.find("G39\tU\n") != std::string::npos);
  auto model = DiscriminantModel::deserialize(slurp(c.output_dir / "genre_model.txt"));
  CHECK(model.genres() == std::vector<std::string>{"A", "B"});
  CHECK(slurp(c.output_dir / "tests.tsv").find("tree_depth") != std::string::npos);
}

TEST_CASE("report kinds parse") {
  for (ReportKind k : {ReportKind::Table1, ReportKind::Table2, ReportKind::Table3, ReportKind::Table4,
                       ReportKind::Tests, ReportKind::Metrics}) {
    CHECK(parse_report_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_report_kind("table5"), Error);
}

TEST_CASE("thread count resolution") {
  CHECK(resolve_thread_count(3) == 3);
  CHECK(resolve_thread_count(0) >= 1);
}

TEST_CASE("an empty category yields an NA test row and a warning") {
  TempDir dir;
  spit(dir.path / "d.sgml",
       "<DOC><DOCNO>A</DOCNO><TEXT>One short text.</TEXT></DOC>\n"
       "<DOC><DOCNO>B</DOCNO><TEXT>Another short text here.</TEXT></DOC>\n");
  spit(dir.path / "q.txt", "1 0 A 1\n1 0 B 1\n");
  PipelineConfig c;
  c.docs = {dir.path / "d.sgml"};
  c.qrels = dir.path / "q.txt";
  c.output_dir = dir.path / "out";
  c.reports = {ReportKind::Tests};
  std::ostringstream log;
  auto r = run(c, log);
  REQUIRE(r.exit_code == 0);
  CHECK(slurp(c.output_dir / "tests.tsv").find("word_count\tRelevant-NonRelevant\t2\t0\tNA\tNA\tNA\tNA\n") !=
        std::string::npos);
  CHECK(log.str().find("no values for NonRelevant") != std::string::npos);
}
