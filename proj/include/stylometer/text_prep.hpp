#pragma once

// Tokenization and sentence segmentation shared by every metric. The rules are
// ASCII-centric and fixed so that counts are reproducible across runs.

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace stylometer {

struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive
  std::size_t size() const { return end - begin; }
  friend bool operator==(const TokenRange&, const TokenRange&) = default;
};

struct TokenizedText {
  std::vector<std::string> tokens;
  // Ordered, non-overlapping and covering [0, tokens.size()).
  std::vector<TokenRange> sentences;
  // Non-whitespace characters of the raw text, not only token characters.
  std::size_t char_count = 0;
  std::size_t digit_count = 0;

  friend bool operator==(const TokenizedText&, const TokenizedText&) = default;
};

// Words before a '.' that do not end a sentence. Compared case-sensitively
// against the word immediately preceding the period, internal periods
// included ("U.S.").
class AbbreviationList {
 public:
  AbbreviationList();  // Mr Mrs Ms Dr Inc Corp Co St Jr Sr U.S vs etc
  explicit AbbreviationList(std::set<std::string> words);

  // One abbreviation per line; blank lines and lines starting with '#' are
  // ignored. A trailing period on an entry is dropped.
  static AbbreviationList parse(std::string_view file_contents);

  bool contains(std::string_view word) const;
  const std::set<std::string, std::less<>>& words() const { return words_; }

 private:
  std::set<std::string, std::less<>> words_;
};

// Maximal runs of ASCII letters and digits, joined across single internal
// '-' or '\'' characters.
std::vector<std::string> tokenize(std::string_view text);

// A boundary follows '.', '!' or '?' when the next characters are whitespace
// and then an uppercase letter, a digit, or the end of the text (or the
// terminator is the last character). A '.' after a listed abbreviation is not
// a boundary.
std::vector<TokenRange> split_sentences(std::string_view text,
                                        const AbbreviationList& abbreviations = {});

// Type identity: ASCII case folding, no stemming.
std::string normalize_type(std::string_view token);

TokenizedText prepare_text(std::string_view text, const AbbreviationList& abbreviations = {});

}  // namespace stylometer
