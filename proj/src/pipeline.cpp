#include "stylometer/pipeline.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <deque>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "parallel.hpp"
#include "stylometer/genre.hpp"
#include "stylometer/report.hpp"
#include "stylometer/text_prep.hpp"

namespace stylometer {

namespace fs = std::filesystem;

std::string_view to_string(ReportKind kind) {
  switch (kind) {
    case ReportKind::Table1: return "table1";
    case ReportKind::Table2: return "table2";
    case ReportKind::Table3: return "table3";
    case ReportKind::Table4: return "table4";
    case ReportKind::Tests: return "tests";
    case ReportKind::Metrics: return "metrics";
  }
  return "?";
}

ReportKind parse_report_kind(std::string_view name) {
  for (ReportKind k : {ReportKind::Table1, ReportKind::Table2, ReportKind::Table3,
                       ReportKind::Table4, ReportKind::Tests, ReportKind::Metrics}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown report '" + std::string(name) + "'");
}

std::size_t resolve_thread_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("STYLOMETER_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void validate(const PipelineConfig& config) {
  if (config.docs.empty()) {
    throw Error(ErrorKind::MissingDependency, "no document files given (--docs)");
  }
  if (!config.qrels) throw Error(ErrorKind::MissingDependency, "no qrels file given (--qrels)");
  if (config.reports.contains(ReportKind::Table3) && !config.trees) {
    throw Error(ErrorKind::MissingDependency, "table3 requires a trees file (--trees)");
  }
  if (config.reports.contains(ReportKind::Table4) && !config.seeds) {
    throw Error(ErrorKind::MissingDependency, "table4 requires a seed labels file (--seeds)");
  }
  config.tiling.validate();
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::Io, "cannot read '" + path.string() + "'");
  return ss.str();
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::Io, "SHA-256 computation failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

// Re-raises a module error with the file it came from.
template <typename Fn>
auto with_file_context(const fs::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.detail(), e.where());
  }
}

struct Input {
  std::string role;
  fs::path path;
  std::string contents;
  std::string digest;
};

struct Corpus {
  std::deque<Input> inputs;  // stable references
  std::vector<Document> documents;
  LabelMap labels;
  std::vector<std::string> warnings;
  std::size_t skipped_records = 0;
};

const Input& load_input(Corpus& corpus, std::string role, const fs::path& path) {
  std::string contents = read_file(path);
  std::string digest = sha256_hex(contents);
  corpus.inputs.push_back(Input{std::move(role), path, std::move(contents), std::move(digest)});
  return corpus.inputs.back();
}

void note_skipped(Corpus& corpus, const fs::path& path, const std::vector<Diagnostic>& skipped) {
  for (const auto& d : skipped) {
    std::string where = d.where ? " (at " + d.where->describe() + ")" : "";
    corpus.warnings.push_back(path.string() + ": skipped " + std::string(to_string(d.kind)) +
                              ": " + d.message + where);
  }
  corpus.skipped_records += skipped.size();
}

Corpus load_corpus(const PipelineConfig& config) {
  Corpus corpus;
  std::set<DocumentId> seen;
  for (std::size_t i = 0; i < config.docs.size(); ++i) {
    const fs::path& path = config.docs[i];
    const Input& input = load_input(corpus, "docs[" + std::to_string(i) + "]", path);
    auto parsed = with_file_context(path, [&] { return parse_trec_sgml(input.contents, config.parse_mode); });
    note_skipped(corpus, path, parsed.skipped);
    for (auto& doc : parsed.items) {
      if (!seen.insert(doc.id).second) {
        if (config.parse_mode == ParseMode::Strict) {
          throw Error(ErrorKind::DuplicateDocument,
                      path.string() + ": DOCNO '" + doc.id.str() + "' already seen in an earlier file",
                      SourceLocation::at_byte(doc.source_offset));
        }
        corpus.warnings.push_back(path.string() + ": skipped duplicate DOCNO '" + doc.id.str() + "'");
        ++corpus.skipped_records;
        continue;
      }
      corpus.documents.push_back(std::move(doc));
    }
  }
  const Input& qrels = load_input(corpus, "qrels", *config.qrels);
  auto judgments =
      with_file_context(qrels.path, [&] { return parse_qrels(qrels.contents, config.parse_mode); });
  note_skipped(corpus, qrels.path, judgments.skipped);

  std::vector<DocumentId> ids;
  ids.reserve(corpus.documents.size());
  for (const auto& d : corpus.documents) ids.push_back(d.id);
  CategoryAssignment assignment = assign_categories(ids, judgments.items);
  corpus.labels = std::move(assignment.labels);
  if (!assignment.orphans.empty()) {
    corpus.warnings.push_back(std::to_string(assignment.orphans.size()) +
                              " judged document(s) are not in the corpus, e.g. '" +
                              assignment.orphans.front().str() + "'");
  }
  return corpus;
}

std::vector<StyleField> tested_fields(bool with_trees) {
  std::vector<StyleField> fields = {StyleField::WordCount, StyleField::TypeTokenRatio,
                                    StyleField::AvgWordLength, StyleField::WordsPerSentence,
                                    StyleField::TileCount};
  if (with_trees) {
    fields.push_back(StyleField::TreeDepth);
    fields.push_back(StyleField::SkipRate);
  }
  return fields;
}

std::vector<StyleField> genre_features(bool with_trees) {
  std::vector<StyleField> out;
  for (StyleField f : kGenreFeatures) {
    if (with_trees || (f != StyleField::TreeDepth && f != StyleField::SkipRate)) out.push_back(f);
  }
  return out;
}

report::TestOutcome run_test(const StyleTable& vectors, const LabelMap& labels, StyleField field,
                             std::pair<CategoryLabel, CategoryLabel> pair, Sidedness sidedness) {
  report::TestOutcome outcome{field, pair.first, pair.second, 0, 0, std::nullopt};
  try {
    CategoryTest t = category_tests(vectors, labels, field, pair, TestMode::Auto, sidedness);
    outcome.n1 = t.result.n1;
    outcome.n2 = t.result.n2;
    outcome.result = t.result;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::EmptyCategory) throw;
    for (const auto& [id, v] : vectors) {
      if (!field_value(v, field)) continue;
      CategoryLabel label = labels.at(id);
      if (label == pair.first) ++outcome.n1;
      if (label == pair.second) ++outcome.n2;
    }
  }
  return outcome;
}

struct Output {
  std::string file;
  std::string contents;
  std::vector<std::string> inputs;  // roles
};

nlohmann::json parameters_json(const PipelineConfig& config, const std::vector<StyleField>& features) {
  nlohmann::json p;
  p["tiling"] = {{"pseudo_sentence_size", config.tiling.pseudo_sentence_size},
                 {"block_size", config.tiling.block_size},
                 {"smoothing_rounds", config.tiling.smoothing_rounds},
                 {"smoothing_width", config.tiling.smoothing_width},
                 {"cutoff", "mean_minus_half_sigma"}};
  p["skip_marker"] = config.skip_marker;
  p["sidedness"] = config.sidedness == Sidedness::TwoSided ? "two_sided" : "greater";
  p["parse_mode"] = config.parse_mode == ParseMode::Strict ? "strict" : "lenient";
  p["ridge_scale"] = config.ridge_scale;
  p["long_document_words"] = config.long_document_words;
  nlohmann::json reports = nlohmann::json::array();
  for (ReportKind k : config.reports) reports.push_back(std::string(to_string(k)));
  p["reports"] = reports;
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [a, b] : config.test_pairs) {
    pairs.push_back(std::string(to_string(a)) + "-" + std::string(to_string(b)));
  }
  p["test_pairs"] = pairs;
  if (!features.empty()) {
    nlohmann::json f = nlohmann::json::array();
    for (StyleField field : features) f.push_back(std::string(field_name(field)));
    p["genre_features"] = f;
  }
  return p;
}

void commit(const fs::path& dir, const std::vector<Output>& outputs, RunResult& result) {
  fs::create_directories(dir);
  try {
    for (const auto& out : outputs) {
      const fs::path path = dir / out.file;
      std::ofstream file(path, std::ios::binary | std::ios::trunc);
      if (!file) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
      result.written.push_back(path);
      file << out.contents;
      file.close();
      if (!file) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
    }
  } catch (...) {
    std::error_code ignored;
    for (const auto& path : result.written) fs::remove(path, ignored);
    result.written.clear();
    throw;
  }
}

}  // namespace

RunResult run(const PipelineConfig& config, std::ostream& log) {
  RunResult result;
  try {
    validate(config);
    const std::size_t threads = resolve_thread_count(config.threads);
    Corpus corpus = load_corpus(config);

    AbbreviationList abbreviations;
    if (config.abbreviations) {
      const Input& in = load_input(corpus, "abbreviations", *config.abbreviations);
      abbreviations = AbbreviationList::parse(in.contents);
    }

    const auto& docs = corpus.documents;
    std::vector<StyleVector> computed(docs.size());
    detail::parallel_for(docs.size(), threads, [&](std::size_t i) {
      TokenizedText text = prepare_text(docs[i].text, abbreviations);
      StyleVector v = compute_style_vector(text);
      v.tile_count = segment(text, config.tiling).tile_count;
      computed[i] = std::move(v);
    });
    StyleTable vectors;
    for (std::size_t i = 0; i < docs.size(); ++i) vectors.emplace(docs[i].id, std::move(computed[i]));

    const bool with_trees = config.trees.has_value();
    std::map<DocumentId, TreeStats> tree_stats;
    if (with_trees) {
      const Input& in = load_input(corpus, "trees", *config.trees);
      auto parsed = with_file_context(in.path, [&] {
        return parse_bracketed(in.contents, config.skip_marker, config.parse_mode);
      });
      note_skipped(corpus, in.path, parsed.skipped);
      std::map<DocumentId, std::vector<ParseTree>> by_doc;
      for (auto& block : parsed.items) {
        auto& trees = by_doc[block.id];
        for (auto& t : block.trees) trees.push_back(std::move(t));
      }
      std::size_t unknown = 0;
      for (const auto& [id, trees] : by_doc) {
        auto v = vectors.find(id);
        if (v == vectors.end()) {
          ++unknown;
          continue;
        }
        TreeStats s = compute_tree_stats(trees, config.skip_marker);
        v->second.tree_depth = s.avg_depth;
        v->second.skip_rate = s.skip_rate;
        tree_stats.emplace(id, s);
      }
      if (unknown > 0) {
        corpus.warnings.push_back(std::to_string(unknown) +
                                  " document(s) in the trees file are not in the corpus");
      }
    }

    std::vector<std::string> base_roles;
    for (const auto& in : corpus.inputs) {
      if (in.role.starts_with("docs[") || in.role == "qrels" || in.role == "abbreviations") {
        base_roles.push_back(in.role);
      }
    }
    auto roles_with = [&](std::initializer_list<std::string> extra) {
      std::vector<std::string> roles = base_roles;
      for (const auto& r : extra) {
        for (const auto& in : corpus.inputs) {
          if (in.role == r) roles.push_back(r);
        }
      }
      return roles;
    };

    std::vector<Output> outputs;
    std::vector<StyleField> features;
    const auto& reports = config.reports;
    if (reports.contains(ReportKind::Metrics)) {
      outputs.push_back({"metrics.tsv",
                         emit_table(report::metrics_rows(vectors, corpus.labels), report::metrics_schema()),
                         roles_with({"trees"})});
    }
    if (reports.contains(ReportKind::Table1)) {
      outputs.push_back({"table1.tsv",
                         emit_table(report::table1_rows(category_means(vectors, corpus.labels)),
                                    report::table1_schema()),
                         base_roles});
    }
    if (reports.contains(ReportKind::Table2)) {
      auto rows = tile_count_table(vectors, corpus.labels, config.long_document_words);
      outputs.push_back({"table2.tsv",
                         emit_table(report::table2_rows(rows, config.long_document_words),
                                    report::table2_schema()),
                         base_roles});
    }
    if (reports.contains(ReportKind::Table3)) {
      outputs.push_back({"table3.tsv",
                         emit_table(report::table3_rows(tree_stats_table(tree_stats, corpus.labels)),
                                    report::table3_schema()),
                         roles_with({"trees"})});
    }
    if (reports.contains(ReportKind::Tests)) {
      std::vector<report::TestOutcome> tests;
      for (const auto& pair : config.test_pairs) {
        for (StyleField f : tested_fields(with_trees)) {
          tests.push_back(run_test(vectors, corpus.labels, f, pair, config.sidedness));
          if (!tests.back().result) {
            corpus.warnings.push_back(std::string(field_name(f)) + ": no values for " +
                                      std::string(to_string(tests.back().n1 == 0 ? pair.first : pair.second)) +
                                      ", test reported as NA");
          }
        }
      }
      outputs.push_back({"tests.tsv", emit_table(report::tests_rows(tests), report::tests_schema()),
                         roles_with({"trees"})});
    }
    if (reports.contains(ReportKind::Table4)) {
      const Input& in = load_input(corpus, "seeds", *config.seeds);
      auto seeds = with_file_context(in.path, [&] { return parse_seed_labels(in.contents, config.parse_mode); });
      note_skipped(corpus, in.path, seeds.skipped);
      features = genre_features(with_trees);
      LdaFit fit = fit_lda(vectors, seeds.items, features, config.ridge_scale);
      if (!fit.missing.empty()) {
        corpus.warnings.push_back(std::to_string(fit.missing.size()) +
                                  " seed document(s) are not in the corpus");
      }
      if (!fit.incomplete.empty()) {
        corpus.warnings.push_back(std::to_string(fit.incomplete.size()) +
                                  " seed document(s) lack a genre feature and were not used");
      }
      std::vector<const StyleVector*> ordered;
      std::vector<DocumentId> ids;
      for (const auto& [id, v] : vectors) {
        ids.push_back(id);
        ordered.push_back(&v);
      }
      std::vector<std::string> genres(ordered.size());
      detail::parallel_for(ordered.size(), threads,
                           [&](std::size_t i) { genres[i] = classify(fit.model, *ordered[i]).genre; });
      std::map<DocumentId, std::string> assignments;
      std::size_t unclassified = 0;
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (genres[i] == kUnclassifiedGenre) ++unclassified;
        assignments.emplace(ids[i], std::move(genres[i]));
      }
      if (unclassified > 0) {
        corpus.warnings.push_back(std::to_string(unclassified) +
                                  " document(s) lack a genre feature and are in cluster U");
      }
      auto roles = roles_with({"trees", "seeds"});
      outputs.push_back({"table4.tsv",
                         emit_table(report::table4_rows(cluster_report(assignments, vectors, corpus.labels)),
                                    report::table4_schema()),
                         roles});
      outputs.push_back({"assignments.tsv",
                         emit_table(report::assignments_rows(assignments), report::assignments_schema()),
                         roles});
      outputs.push_back({"genre_model.txt", fit.model.serialize(), roles});
    }

    nlohmann::json manifest;
    manifest["tool"] = "stylometer";
    manifest["version"] = std::string(kToolVersion);
    manifest["parameters"] = parameters_json(config, features);
    manifest["inputs"] = nlohmann::json::array();
    for (const auto& in : corpus.inputs) {
      manifest["inputs"].push_back({{"role", in.role}, {"path", in.path.string()}, {"sha256", in.digest}});
    }
    manifest["documents"] = corpus.documents.size();
    manifest["skipped_records"] = corpus.skipped_records;
    manifest["reports"] = nlohmann::json::array();
    for (const auto& out : outputs) {
      manifest["reports"].push_back(
          {{"file", out.file}, {"sha256", sha256_hex(out.contents)}, {"inputs", out.inputs}});
    }
    outputs.push_back({"manifest.json", manifest.dump(2) + "\n", {}});

    commit(config.output_dir, outputs, result);
    result.warnings = std::move(corpus.warnings);
    for (const auto& w : result.warnings) log << "warning: " << w << '\n';
    for (const auto& p : result.written) log << "wrote " << p.string() << '\n';
    result.exit_code = 0;
  } catch (const Error& e) {
    result.exit_code = 2;
    result.error = e.what();
    log << "error: " << e.what() << '\n';
  } catch (const fs::filesystem_error& e) {
    result.exit_code = 2;
    result.error = e.what();
    log << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    result.exit_code = 1;
    result.error = e.what();
    log << "internal error: " << e.what() << '\n';
  }
  return result;
}

RunResult ingest_check(const PipelineConfig& config, std::ostream& out) {
  RunResult result;
  try {
    if (config.docs.empty()) {
      throw Error(ErrorKind::MissingDependency, "no document files given (--docs)");
    }
    PipelineConfig checked = config;
    if (!checked.qrels) {
      throw Error(ErrorKind::MissingDependency, "no qrels file given (--qrels)");
    }
    Corpus corpus = load_corpus(checked);
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& [id, label] : corpus.labels) ++counts[static_cast<std::size_t>(label)];
    out << "documents\t" << corpus.documents.size() << '\n';
    for (CategoryLabel label : kAllCategories) {
      out << to_string(label) << '\t' << counts[static_cast<std::size_t>(label)] << '\n';
    }
    out << "skipped\t" << corpus.skipped_records << '\n';
    for (const auto& w : corpus.warnings) out << "warning: " << w << '\n';
    result.warnings = std::move(corpus.warnings);
  } catch (const Error& e) {
    result.exit_code = 2;
    result.error = e.what();
    out << "error: " << e.what() << '\n';
  }
  return result;
}

}  // namespace stylometer
