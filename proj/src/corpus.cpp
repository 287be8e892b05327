#include "stylometer/corpus.hpp"

#include <charconv>
#include <optional>
#include <set>
#include <utility>
#include <variant>

#include "text_util.hpp"

namespace stylometer {

DocumentId::DocumentId(std::string_view raw) : value_(detail::trim(raw)) {
  if (value_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "document id is empty");
  }
}

std::string_view to_string(CategoryLabel label) {
  switch (label) {
    case CategoryLabel::Relevant: return "Relevant";
    case CategoryLabel::NonRelevant: return "NonRelevant";
    case CategoryLabel::NotJudged: return "NotJudged";
  }
  return "?";
}

CategoryLabel parse_category(std::string_view name) {
  for (CategoryLabel label : kAllCategories) {
    if (to_string(label) == name) return label;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown category '" + std::string(name) + "'");
}

namespace {

struct Tag {
  std::size_t begin = 0;  // position of '<'
  std::size_t end = 0;    // one past '>'
  std::string_view name;
  bool closing = false;
};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Next well-formed tag at or after `from`. A '<' with no matching '>' ends
// the scan.
std::optional<Tag> next_tag(std::string_view s, std::size_t from) {
  while (true) {
    std::size_t lt = s.find('<', from);
    if (lt == std::string_view::npos) return std::nullopt;
    std::size_t gt = s.find('>', lt + 1);
    if (gt == std::string_view::npos) return std::nullopt;
    Tag tag;
    tag.begin = lt;
    tag.end = gt + 1;
    std::size_t p = lt + 1;
    if (p < gt && s[p] == '/') {
      tag.closing = true;
      ++p;
    }
    std::size_t q = p;
    while (q < gt && !is_space(s[q])) ++q;
    tag.name = s.substr(p, q - p);
    if (!tag.name.empty()) return tag;
    from = lt + 1;
  }
}

std::optional<Tag> find_tag(std::string_view s, std::size_t from, std::string_view name,
                            bool closing) {
  for (auto tag = next_tag(s, from); tag; tag = next_tag(s, tag->begin + 1)) {
    if (tag->closing == closing && tag->name == name) return tag;
  }
  return std::nullopt;
}

std::string strip_markup(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t lt = s.find('<', pos);
    if (lt == std::string_view::npos) break;
    std::size_t gt = s.find('>', lt + 1);
    if (gt == std::string_view::npos) break;
    out.append(s.substr(pos, lt - pos));
    pos = gt + 1;
  }
  out.append(s.substr(pos));
  return out;
}

std::string decode_entities(std::string_view s) {
  static constexpr std::pair<std::string_view, char> kEntities[] = {
      {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&apos;", '\''}};
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    if (s[i] == '&') {
      bool matched = false;
      for (const auto& [entity, ch] : kEntities) {
        if (s.substr(i, entity.size()) == entity) {
          out.push_back(ch);
          i += entity.size();
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    out.push_back(s[i++]);
  }
  return out;
}

struct RecordFailure {
  std::string message;
  std::size_t offset;
};

// Parses the body between <DOC> and </DOC>. `base` is the body's offset in
// the file, used for error positions.
std::variant<Document, RecordFailure> parse_record(std::string_view body, std::size_t base) {
  std::optional<std::string_view> docno;
  std::string text;
  bool have_text = false;
  std::size_t pos = 0;
  while (auto tag = next_tag(body, pos)) {
    if (tag->closing) {
      pos = tag->end;
      continue;
    }
    if (tag->name == "DOCNO" || tag->name == "TEXT") {
      auto close = find_tag(body, tag->end, tag->name, true);
      if (!close) {
        return RecordFailure{"unclosed <" + std::string(tag->name) + ">", base + tag->begin};
      }
      std::string_view content = body.substr(tag->end, close->begin - tag->end);
      if (tag->name == "DOCNO") {
        if (docno) return RecordFailure{"more than one <DOCNO>", base + tag->begin};
        docno = content;
      } else {
        if (have_text) text.push_back('\n');
        text += detail::trim(decode_entities(strip_markup(content)));
        have_text = true;
      }
      pos = close->end;
    } else {
      pos = tag->end;
    }
  }
  if (!docno) return RecordFailure{"missing <DOCNO>", base};
  std::string id = detail::trim(*docno);
  if (id.empty()) return RecordFailure{"empty <DOCNO>", base};
  return Document{DocumentId(id), std::move(text), 0, 0};
}

void fail_or_skip(ParseMode mode, std::vector<Diagnostic>& skipped, ErrorKind kind,
                  std::string message, SourceLocation where) {
  if (mode == ParseMode::Strict) throw Error(kind, message, where);
  skipped.push_back(Diagnostic{kind, std::move(message), where});
}

bool parse_int(std::string_view s, std::int64_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

Parsed<Document> parse_trec_sgml(std::string_view input, ParseMode mode) {
  Parsed<Document> result;
  std::set<DocumentId> seen;
  std::size_t pos = 0;
  auto open = find_tag(input, pos, "DOC", false);
  while (open) {
    auto close = find_tag(input, open->end, "DOC", true);
    auto next_open = find_tag(input, open->end, "DOC", false);
    if (!close || (next_open && next_open->begin < close->begin)) {
      fail_or_skip(mode, result.skipped, ErrorKind::MalformedRecord, "unclosed <DOC>",
                   SourceLocation::at_byte(open->begin));
      open = next_open;
      continue;
    }
    std::string_view body = input.substr(open->end, close->begin - open->end);
    auto parsed = parse_record(body, open->end);
    if (auto* failure = std::get_if<RecordFailure>(&parsed)) {
      fail_or_skip(mode, result.skipped, ErrorKind::MalformedRecord, failure->message,
                   SourceLocation::at_byte(failure->offset));
    } else {
      Document doc = std::move(std::get<Document>(parsed));
      doc.source_offset = open->begin;
      doc.source_length = close->end - open->begin;
      if (!seen.insert(doc.id).second) {
        fail_or_skip(mode, result.skipped, ErrorKind::DuplicateDocument,
                     "duplicate DOCNO '" + doc.id.str() + "'",
                     SourceLocation::at_byte(open->begin));
      } else {
        result.items.push_back(std::move(doc));
      }
    }
    open = find_tag(input, close->end, "DOC", false);
  }
  return result;
}

Parsed<JudgmentRecord> parse_qrels(std::string_view input, ParseMode mode) {
  Parsed<JudgmentRecord> result;
  std::map<std::pair<std::int64_t, DocumentId>, std::size_t> index;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= input.size()) {
    std::size_t nl = input.find('\n', pos);
    if (nl == std::string_view::npos) nl = input.size();
    std::string_view line = input.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;

    std::vector<std::string_view> fields = detail::split_whitespace(line);
    if (fields.empty()) continue;
    auto where = SourceLocation::at_line(line_no);
    if (fields.size() != 4) {
      fail_or_skip(mode, result.skipped, ErrorKind::MalformedLine,
                   "expected 4 fields, found " + std::to_string(fields.size()), where);
      continue;
    }
    std::int64_t qid = 0;
    std::int64_t rel = 0;
    if (!parse_int(fields[0], qid)) {
      fail_or_skip(mode, result.skipped, ErrorKind::MalformedLine,
                   "query id '" + std::string(fields[0]) + "' is not an integer", where);
      continue;
    }
    if (!parse_int(fields[3], rel) || (rel != 0 && rel != 1)) {
      fail_or_skip(mode, result.skipped, ErrorKind::MalformedLine,
                   "relevance '" + std::string(fields[3]) + "' is not 0 or 1", where);
      continue;
    }
    DocumentId doc(fields[2]);
    auto key = std::make_pair(qid, doc);
    if (auto it = index.find(key); it != index.end()) {
      result.items[it->second].relevant = result.items[it->second].relevant || rel == 1;
      continue;
    }
    index.emplace(std::move(key), result.items.size());
    result.items.push_back(JudgmentRecord{qid, std::move(doc), rel == 1});
  }
  return result;
}

CategoryAssignment assign_categories(const std::vector<DocumentId>& docs,
                                     const std::vector<JudgmentRecord>& judgments) {
  std::map<DocumentId, bool> judged;  // value: relevant for some query
  for (const auto& j : judgments) {
    auto [it, inserted] = judged.emplace(j.doc_id, j.relevant);
    if (!inserted) it->second = it->second || j.relevant;
  }
  CategoryAssignment out;
  for (const auto& id : docs) {
    auto it = judged.find(id);
    CategoryLabel label = CategoryLabel::NotJudged;
    if (it != judged.end()) {
      label = it->second ? CategoryLabel::Relevant : CategoryLabel::NonRelevant;
    }
    out.labels.emplace(id, label);
  }
  for (const auto& [id, relevant] : judged) {
    if (!out.labels.contains(id)) out.orphans.push_back(id);
  }
  return out;
}

}  // namespace stylometer
