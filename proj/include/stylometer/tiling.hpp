#pragma once

// Block-comparison TextTiling. Only the number of tiles is used by the
// reports; boundaries and scores are kept for inspection and tests.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylometer/style_metrics.hpp"
#include "stylometer/text_prep.hpp"

namespace stylometer {

enum class CutoffPolicy { MeanMinusHalfSigma };

struct TilingParams {
  std::size_t pseudo_sentence_size = 20;  // tokens per pseudo-sentence
  std::size_t block_size = 6;             // pseudo-sentences per comparison block
  std::size_t smoothing_rounds = 1;
  // Total number of neighbours in the moving average, split evenly between
  // the two sides; 2 averages each gap with one neighbour on each side.
  std::size_t smoothing_width = 2;
  CutoffPolicy cutoff = CutoffPolicy::MeanMinusHalfSigma;

  // Throws InvalidArgument unless both sizes are at least 1.
  void validate() const;
};

struct Tiling {
  // Gap i separates pseudo-sentences i and i+1. Strictly increasing.
  std::vector<std::size_t> boundaries;
  std::size_t tile_count = 1;
  std::size_t pseudo_sentence_count = 0;
  // Smoothed similarity per gap, in [0, 1].
  std::vector<double> gap_scores;
  // Depth per gap, in [0, 2].
  std::vector<double> depth_scores;
};

Tiling segment(std::span<const std::string> tokens, const TilingParams& params = {});
inline Tiling segment(const TokenizedText& text, const TilingParams& params = {}) {
  return segment(std::span<const std::string>(text.tokens), params);
}

struct TileRow {
  bool over_threshold = false;  // false: documents of all lengths
  CategoryLabel category = CategoryLabel::Relevant;
  std::size_t count = 0;
  std::optional<double> mean_tiles;
};

// Mean tile count per category, once over all documents with a tile count and
// once over those with more than `word_threshold` words. Rows are ordered
// all-lengths first, categories in kAllCategories order.
std::vector<TileRow> tile_count_table(const StyleTable& vectors, const LabelMap& labels,
                                      std::size_t word_threshold = 1000);

}  // namespace stylometer
