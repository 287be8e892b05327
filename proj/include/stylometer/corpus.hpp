#pragma once

// TREC collection ingestion: SGML document files, qrels, and the
// relevant / non-relevant / not-judged partition of a corpus.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stylometer/error.hpp"

namespace stylometer {

// Document identifier as it appears in <DOCNO> or a qrels line. Always
// whitespace-trimmed and non-empty.
class DocumentId {
 public:
  explicit DocumentId(std::string_view raw);

  const std::string& str() const noexcept { return value_; }

  friend bool operator==(const DocumentId&, const DocumentId&) = default;
  friend auto operator<=>(const DocumentId&, const DocumentId&) = default;

 private:
  std::string value_;
};

struct Document {
  DocumentId id;
  std::string text;
  // Span of the whole <DOC>...</DOC> record in the source file.
  std::size_t source_offset = 0;
  std::size_t source_length = 0;
};

struct JudgmentRecord {
  std::int64_t query_id = 0;
  DocumentId doc_id;
  bool relevant = false;
};

enum class CategoryLabel { Relevant, NonRelevant, NotJudged };

inline constexpr CategoryLabel kAllCategories[] = {
    CategoryLabel::Relevant, CategoryLabel::NonRelevant, CategoryLabel::NotJudged};

std::string_view to_string(CategoryLabel label);
// Accepts the names produced by to_string().
CategoryLabel parse_category(std::string_view name);

template <typename T>
struct Parsed {
  std::vector<T> items;
  // Records skipped in lenient mode.
  std::vector<Diagnostic> skipped;
};

// Splits a concatenation of <DOC> records. Only <TEXT> regions contribute to
// Document::text; multiple regions are joined with '\n'. Markup inside the
// regions is stripped and the five XML core entities are decoded.
Parsed<Document> parse_trec_sgml(std::string_view input, ParseMode mode = ParseMode::Strict);

// Parses "qid 0 docno rel" lines. Duplicate (qid, docno) pairs collapse into
// one record, relevant if any duplicate was relevant.
Parsed<JudgmentRecord> parse_qrels(std::string_view input, ParseMode mode = ParseMode::Strict);

struct CategoryAssignment {
  std::map<DocumentId, CategoryLabel> labels;
  // Judged documents that are not in the corpus, in sorted order.
  std::vector<DocumentId> orphans;
};

CategoryAssignment assign_categories(const std::vector<DocumentId>& docs,
                                     const std::vector<JudgmentRecord>& judgments);

}  // namespace stylometer
