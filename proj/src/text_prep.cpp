#include "stylometer/text_prep.hpp"

#include <utility>

#include "text_util.hpp"

namespace stylometer {

namespace {

bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_joiner(char c) { return c == '-' || c == '\''; }
bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

struct Span {
  std::size_t begin;
  std::size_t end;
};

std::vector<Span> token_spans(std::string_view text) {
  std::vector<Span> spans;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    if (!is_alnum(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < n) {
      if (is_alnum(text[j])) {
        ++j;
      } else if (is_joiner(text[j]) && j + 1 < n && is_alnum(text[j + 1])) {
        j += 2;
      } else {
        break;
      }
    }
    spans.push_back({i, j});
    i = j;
  }
  return spans;
}

// The word glued to the left of position `dot`, e.g. "U.S" for "U.S." or
// "Mr" for "(Mr.".
std::string_view word_before(std::string_view text, std::size_t dot) {
  std::size_t b = dot;
  while (b > 0) {
    char c = text[b - 1];
    if (is_alnum(c) || c == '.' || is_joiner(c)) {
      --b;
    } else {
      break;
    }
  }
  while (b < dot && !is_alnum(text[b])) ++b;
  return text.substr(b, dot - b);
}

std::vector<std::size_t> boundary_positions(std::string_view text,
                                            const AbbreviationList& abbreviations) {
  std::vector<std::size_t> out;
  const std::size_t n = text.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_terminator(text[i])) continue;
    bool boundary = false;
    if (i + 1 == n) {
      boundary = true;
    } else if (detail::is_ascii_space(text[i + 1])) {
      std::size_t k = i + 1;
      while (k < n && detail::is_ascii_space(text[k])) ++k;
      boundary = k == n || is_upper(text[k]) || is_digit(text[k]);
    }
    if (boundary && text[i] == '.' && abbreviations.contains(word_before(text, i))) {
      boundary = false;
    }
    if (boundary) out.push_back(i);
  }
  return out;
}

std::vector<TokenRange> group_sentences(const std::vector<Span>& spans,
                                        const std::vector<std::size_t>& boundaries) {
  std::vector<TokenRange> sentences;
  std::size_t start = 0;
  std::size_t t = 0;
  for (std::size_t b : boundaries) {
    while (t < spans.size() && spans[t].begin < b) ++t;
    if (t > start) {
      sentences.push_back({start, t});
      start = t;
    }
  }
  if (start < spans.size()) sentences.push_back({start, spans.size()});
  return sentences;
}

}  // namespace

AbbreviationList::AbbreviationList()
    : words_{"Mr", "Mrs", "Ms", "Dr", "Inc", "Corp", "Co", "St", "Jr", "Sr", "U.S", "vs", "etc"} {}

AbbreviationList::AbbreviationList(std::set<std::string> words)
    : words_(words.begin(), words.end()) {}

AbbreviationList AbbreviationList::parse(std::string_view file_contents) {
  std::set<std::string> words;
  std::size_t pos = 0;
  while (pos < file_contents.size()) {
    std::size_t nl = file_contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = file_contents.size();
    std::string entry = detail::trim(file_contents.substr(pos, nl - pos));
    pos = nl + 1;
    if (entry.empty() || entry.front() == '#') continue;
    if (entry.back() == '.') entry.pop_back();
    if (!entry.empty()) words.insert(std::move(entry));
  }
  return AbbreviationList(std::move(words));
}

bool AbbreviationList::contains(std::string_view word) const {
  return !word.empty() && words_.find(word) != words_.end();
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  for (const Span& s : token_spans(text)) {
    tokens.emplace_back(text.substr(s.begin, s.end - s.begin));
  }
  return tokens;
}

std::vector<TokenRange> split_sentences(std::string_view text,
                                        const AbbreviationList& abbreviations) {
  return group_sentences(token_spans(text), boundary_positions(text, abbreviations));
}

std::string normalize_type(std::string_view token) {
  std::string out(token);
  for (char& c : out) {
    if (is_upper(c)) c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

TokenizedText prepare_text(std::string_view text, const AbbreviationList& abbreviations) {
  TokenizedText out;
  std::vector<Span> spans = token_spans(text);
  out.tokens.reserve(spans.size());
  for (const Span& s : spans) out.tokens.emplace_back(text.substr(s.begin, s.end - s.begin));
  out.sentences = group_sentences(spans, boundary_positions(text, abbreviations));
  for (char c : text) {
    auto byte = static_cast<unsigned char>(c);
    if (detail::is_ascii_space(c) || (byte & 0xC0) == 0x80) continue;  // UTF-8 continuation
    ++out.char_count;
    if (is_digit(c)) ++out.digit_count;
  }
  return out;
}

}  // namespace stylometer
