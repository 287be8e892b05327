#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

#include "doctest.h"
#include "stylometer/text_prep.hpp"
#include "synthetic.hpp"
#include "test_helpers.hpp"

using namespace stylometer;

namespace {

std::vector<std::size_t> sentence_sizes(std::string_view text) {
  std::vector<std::size_t> sizes;
  for (const auto& r : split_sentences(text)) sizes.push_back(r.size());
  return sizes;
}

}  // namespace

TEST_CASE("tokenize") {
  CHECK(tokenize("Hello, world.") == std::vector<std::string>{"Hello", "world"});
  CHECK(tokenize("type-token ratio") == std::vector<std::string>{"type-token", "ratio"});
  CHECK(tokenize("don't -- stop - now '90s") ==
        std::vector<std::string>{"don't", "stop", "now", "90s"});
  CHECK(tokenize("3.5% of $1,200") == std::vector<std::string>{"3", "5", "of", "1", "200"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("... !!! --").empty());
  CHECK(tokenize("end-") == std::vector<std::string>{"end"});
}

TEST_CASE("200-word paragraph matches the regex tokenizer") {
  auto tokens = tokenize(testing::read_data("tokenizer_paragraph.txt"));
  std::istringstream expected(testing::read_data("tokenizer_paragraph.tokens"));
  std::vector<std::string> want;
  for (std::string line; std::getline(expected, line);) want.push_back(line);
  CHECK(want.size() > 180);
  CHECK(tokens == want);
}

TEST_CASE("sentence splitting") {
  CHECK(sentence_sizes("A cat. A dog.") == std::vector<std::size_t>{2, 2});
  CHECK(sentence_sizes("Mr. Smith left.") == std::vector<std::size_t>{3});
  CHECK(sentence_sizes("no terminator here") == std::vector<std::size_t>{3});
  CHECK(sentence_sizes("").empty());
  CHECK(sentence_sizes(" . ! ?").empty());
  CHECK(sentence_sizes("it fell. then rose") == std::vector<std::size_t>{4});  // lowercase start
  CHECK(sentence_sizes("Up 5.5 points. 1991 was worse!") == std::vector<std::size_t>{4, 3});
  CHECK(sentence_sizes("Really?!  Yes.") == std::vector<std::size_t>{1, 1});
  CHECK(sentence_sizes("The U.S. Senate voted.") == std::vector<std::size_t>{5});
}

TEST_CASE("hand-annotated WSJ-style paragraph has 12 sentences") {
  const char* text =
      "Stock prices rose sharply on Tuesday. Mr. Smith, the chief executive of Acme Inc., "
      "said profits doubled. Analysts were surprised! Did the U.S. market react? Yes. About "
      "1,200 workers at the St. Louis plant will be affected. The company's shares closed at "
      "$45.50, up 12%. Dr. Jones disagreed with the forecast. She noted that sales in 1990 fell "
      "3 percent vs. the prior year. Trading volume was heavy. 1991 could be worse, she warned. "
      "The report was released late Friday";
  CHECK(sentence_sizes(text) == std::vector<std::size_t>{6, 11, 3, 6, 1, 12, 9, 6, 13, 4, 6, 6});
}

TEST_CASE("custom abbreviation list") {
  auto list = AbbreviationList::parse("# corporate\nLtd.\n\n  Bros \n");
  CHECK(list.contains("Ltd"));
  CHECK(list.contains("Bros"));
  CHECK_FALSE(list.contains("Mr"));
  CHECK(split_sentences("Acme Ltd. Said so.", list).size() == 1);
  CHECK(split_sentences("Acme Ltd. Said so.").size() == 2);
  CHECK(split_sentences("Mr. Smith.", list).size() == 2);
}

TEST_CASE("normalize_type") {
  CHECK(normalize_type("The") == "the");
  CHECK(normalize_type("don't") == "don't");
  CHECK(normalize_type("U.S") == "u.s");
}

TEST_CASE("prepare_text counts characters and digits") {
  auto t = prepare_text("a1b2");
  CHECK(t.char_count == 4);
  CHECK(t.digit_count == 2);
  CHECK(t.tokens == std::vector<std::string>{"a1b2"});
  CHECK(t.sentences.size() == 1);
  auto table = prepare_text("12.5  |  3,400\n--");
  CHECK(table.char_count == 12);
  CHECK(table.digit_count == 7);
}

TEST_CASE("tokenized text invariants on random prose") {
  std::mt19937_64 rng(5);
  auto vocab = testing::random_vocabulary(rng, 300);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<std::size_t> words(0, 300);
    std::string a = testing::random_prose(rng, vocab, words(rng), 0.1);
    std::string b = testing::random_prose(rng, vocab, words(rng), 0.1);
    TokenizedText ta = prepare_text(a);
    CHECK(ta == prepare_text(a));
    CHECK(ta.digit_count <= ta.char_count);

    std::size_t next = 0;
    for (const auto& r : ta.sentences) {
      CHECK(r.begin == next);
      CHECK(r.end > r.begin);
      next = r.end;
    }
    CHECK(next == ta.tokens.size());
    for (const auto& tok : ta.tokens) {
      CHECK(tok.find_first_of(" \t\n\r") == std::string::npos);
      CHECK(std::any_of(tok.begin(), tok.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)); }));
    }

    // Concatenation across a terminator and whitespace.
    std::string joined = a.empty() ? b : a + ". " + b;
    auto tj = tokenize(joined);
    auto expected = tokenize(a);
    auto tb = tokenize(b);
    expected.insert(expected.end(), tb.begin(), tb.end());
    CHECK(tj == expected);
  }
}
