#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "stylometer/corpus.hpp"
#include "stylometer/text_prep.hpp"

namespace stylometer {

// Per-document style markers. A field that is undefined for the document
// (no tokens, no sentences, no characters, no tiling or trees computed) is
// empty rather than zero.
struct StyleVector {
  std::size_t word_count = 0;
  std::optional<double> type_token_ratio;
  std::optional<double> avg_word_length;
  std::optional<double> words_per_sentence;
  std::optional<double> digits_per_kchar;
  std::optional<double> long_word_ratio;
  std::optional<std::size_t> tile_count;
  std::optional<double> tree_depth;
  std::optional<double> skip_rate;

  friend bool operator==(const StyleVector&, const StyleVector&) = default;
};

enum class StyleField {
  WordCount,
  TypeTokenRatio,
  AvgWordLength,
  WordsPerSentence,
  DigitsPerKChar,
  LongWordRatio,
  TileCount,
  TreeDepth,
  SkipRate,
};

inline constexpr std::size_t kStyleFieldCount = 9;
inline constexpr std::array<StyleField, kStyleFieldCount> kAllStyleFields = {
    StyleField::WordCount,      StyleField::TypeTokenRatio, StyleField::AvgWordLength,
    StyleField::WordsPerSentence, StyleField::DigitsPerKChar, StyleField::LongWordRatio,
    StyleField::TileCount,      StyleField::TreeDepth,      StyleField::SkipRate};

// Tokens longer than this many characters count as long words.
inline constexpr std::size_t kLongWordThreshold = 6;

// snake_case names, e.g. "word_count", "type_token_ratio".
std::string_view field_name(StyleField field);
StyleField parse_field(std::string_view name);
std::optional<double> field_value(const StyleVector& v, StyleField field);

StyleVector compute_style_vector(const TokenizedText& text);

using StyleTable = std::map<DocumentId, StyleVector>;
using LabelMap = std::map<DocumentId, CategoryLabel>;

struct FieldSummary {
  std::optional<double> mean;
  std::size_t excluded = 0;  // documents where the field was undefined
};

struct GroupSummary {
  std::size_t count = 0;
  std::array<FieldSummary, kStyleFieldCount> fields{};

  const FieldSummary& field(StyleField f) const { return fields[static_cast<std::size_t>(f)]; }
};

// Unweighted mean over documents of each defined field; summation follows the
// order of `members`.
GroupSummary summarize(const std::vector<const StyleVector*>& members);

struct CategoryRow {
  CategoryLabel category;
  GroupSummary summary;
};

// One row per category in kAllCategories order, empty categories included.
// Throws MissingLabel when a vector's document has no label.
std::vector<CategoryRow> category_means(const StyleTable& vectors, const LabelMap& labels);

}  // namespace stylometer
