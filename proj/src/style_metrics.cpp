#include "stylometer/style_metrics.hpp"

#include <string>
#include <unordered_set>

namespace stylometer {

std::string_view field_name(StyleField field) {
  switch (field) {
    case StyleField::WordCount: return "word_count";
    case StyleField::TypeTokenRatio: return "type_token_ratio";
    case StyleField::AvgWordLength: return "avg_word_length";
    case StyleField::WordsPerSentence: return "words_per_sentence";
    case StyleField::DigitsPerKChar: return "digits_per_kchar";
    case StyleField::LongWordRatio: return "long_word_ratio";
    case StyleField::TileCount: return "tile_count";
    case StyleField::TreeDepth: return "tree_depth";
    case StyleField::SkipRate: return "skip_rate";
  }
  return "?";
}

StyleField parse_field(std::string_view name) {
  for (StyleField f : kAllStyleFields) {
    if (field_name(f) == name) return f;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown style field '" + std::string(name) + "'");
}

std::optional<double> field_value(const StyleVector& v, StyleField field) {
  switch (field) {
    case StyleField::WordCount: return static_cast<double>(v.word_count);
    case StyleField::TypeTokenRatio: return v.type_token_ratio;
    case StyleField::AvgWordLength: return v.avg_word_length;
    case StyleField::WordsPerSentence: return v.words_per_sentence;
    case StyleField::DigitsPerKChar: return v.digits_per_kchar;
    case StyleField::LongWordRatio: return v.long_word_ratio;
    case StyleField::TileCount:
      if (v.tile_count) return static_cast<double>(*v.tile_count);
      return std::nullopt;
    case StyleField::TreeDepth: return v.tree_depth;
    case StyleField::SkipRate: return v.skip_rate;
  }
  return std::nullopt;
}

StyleVector compute_style_vector(const TokenizedText& text) {
  StyleVector v;
  const std::size_t n = text.tokens.size();
  v.word_count = n;
  if (n > 0) {
    std::unordered_set<std::string> types;
    std::size_t letters = 0;
    std::size_t long_words = 0;
    for (const auto& token : text.tokens) {
      types.insert(normalize_type(token));
      letters += token.size();
      if (token.size() > kLongWordThreshold) ++long_words;
    }
    const auto count = static_cast<double>(n);
    v.type_token_ratio = static_cast<double>(types.size()) / count;
    v.avg_word_length = static_cast<double>(letters) / count;
    v.long_word_ratio = static_cast<double>(long_words) / count;
  }
  if (!text.sentences.empty()) {
    v.words_per_sentence = static_cast<double>(n) / static_cast<double>(text.sentences.size());
  }
  if (text.char_count > 0) {
    v.digits_per_kchar = 1000.0 * static_cast<double>(text.digit_count) /
                         static_cast<double>(text.char_count);
  }
  return v;
}

GroupSummary summarize(const std::vector<const StyleVector*>& members) {
  GroupSummary out;
  out.count = members.size();
  for (StyleField f : kAllStyleFields) {
    double sum = 0.0;
    std::size_t defined = 0;
    for (const StyleVector* v : members) {
      if (auto value = field_value(*v, f)) {
        sum += *value;
        ++defined;
      }
    }
    FieldSummary& s = out.fields[static_cast<std::size_t>(f)];
    s.excluded = members.size() - defined;
    if (defined > 0) s.mean = sum / static_cast<double>(defined);
  }
  return out;
}

std::vector<CategoryRow> category_means(const StyleTable& vectors, const LabelMap& labels) {
  std::array<std::vector<const StyleVector*>, 3> groups;
  for (const auto& [id, vector] : vectors) {
    auto it = labels.find(id);
    if (it == labels.end()) {
      throw Error(ErrorKind::MissingLabel, "document '" + id.str() + "' has no category label");
    }
    groups[static_cast<std::size_t>(it->second)].push_back(&vector);
  }
  std::vector<CategoryRow> rows;
  for (CategoryLabel label : kAllCategories) {
    rows.push_back({label, summarize(groups[static_cast<std::size_t>(label)])});
  }
  return rows;
}

}  // namespace stylometer
