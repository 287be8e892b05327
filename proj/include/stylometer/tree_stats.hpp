#pragma once

// Reader for bracketed parser output and per-document tree depth / skip-mark
// statistics.
//
// File format:
//   #DOC <docid>
//   (S (NP (N dog)) (VP barks))
//   ...
// One tree per line, grouped under the most recent "#DOC" header. Blank
// lines are ignored. "(X)" is a childless node and is equivalent to the atom
// X.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stylometer/corpus.hpp"
#include "stylometer/error.hpp"

namespace stylometer {

inline constexpr std::string_view kDefaultSkipMarker = "SKIP";

struct ParseTree {
  std::string label;
  std::vector<ParseTree> children;
  // Leaf whose label equals the skip marker the tree was read with.
  bool is_skip = false;

  bool is_leaf() const { return children.empty(); }
  friend bool operator==(const ParseTree&, const ParseTree&) = default;
};

// Leaves have depth 1.
std::size_t tree_depth(const ParseTree& tree);

// Inverse of the reader for trees whose labels contain no whitespace or
// parentheses; throws InvalidArgument otherwise.
std::string serialize(const ParseTree& tree);

struct DocumentTrees {
  DocumentId id;
  std::vector<ParseTree> trees;
};

// Errors carry the byte offset of the problem. In lenient mode a bad tree
// line is skipped; a tree before any header is always skipped in lenient mode.
Parsed<DocumentTrees> parse_bracketed(std::string_view input,
                                      std::string_view skip_marker = kDefaultSkipMarker,
                                      ParseMode mode = ParseMode::Strict);

struct TreeStats {
  std::size_t tree_count = 0;
  std::optional<double> avg_depth;  // empty without trees
  std::size_t skip_count = 0;
  std::optional<double> skip_rate;  // skip marks per tree (sentence)
};

// Counts leaves labelled `skip_marker`; the is_skip flags are not consulted.
TreeStats compute_tree_stats(const std::vector<ParseTree>& trees,
                             std::string_view skip_marker = kDefaultSkipMarker);

struct TreeRow {
  CategoryLabel category = CategoryLabel::Relevant;
  std::size_t count = 0;  // documents with at least one tree
  std::optional<double> mean_depth;
  std::optional<double> mean_skip_rate;
};

// Unweighted per-category means, kAllCategories order. Throws MissingLabel.
std::vector<TreeRow> tree_stats_table(const std::map<DocumentId, TreeStats>& stats,
                                      const std::map<DocumentId, CategoryLabel>& labels);

}  // namespace stylometer
