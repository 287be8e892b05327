#include "stylometer/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace stylometer {

void TilingParams::validate() const {
  if (pseudo_sentence_size < 1 || block_size < 1) {
    throw Error(ErrorKind::InvalidArgument,
                "tiling pseudo-sentence size and block size must be at least 1");
  }
}

namespace {

// Term-frequency cosine between pseudo-sentence ranges [a0,a1) and [b0,b1).
class BlockComparator {
 public:
  BlockComparator(std::vector<std::uint32_t> type_ids, std::size_t vocabulary,
                  std::size_t pseudo_sentence_size)
      : ids_(std::move(type_ids)),
        w_(pseudo_sentence_size),
        left_(vocabulary, 0),
        right_(vocabulary, 0) {}

  double cosine(std::size_t a0, std::size_t a1, std::size_t b0, std::size_t b1) {
    touched_.clear();
    accumulate(left_, a0, a1);
    accumulate(right_, b0, b1);
    std::int64_t dot = 0;
    std::int64_t left_sq = 0;
    std::int64_t right_sq = 0;
    for (std::uint32_t id : touched_) {
      std::int64_t l = left_[id];
      std::int64_t r = right_[id];
      dot += l * r;
      left_sq += l * l;
      right_sq += r * r;
      left_[id] = 0;
      right_[id] = 0;
    }
    if (left_sq == 0 || right_sq == 0) return 0.0;
    return static_cast<double>(dot) /
           std::sqrt(static_cast<double>(left_sq) * static_cast<double>(right_sq));
  }

 private:
  void accumulate(std::vector<std::int32_t>& counts, std::size_t p0, std::size_t p1) {
    const std::size_t t0 = p0 * w_;
    const std::size_t t1 = std::min(p1 * w_, ids_.size());
    for (std::size_t t = t0; t < t1; ++t) {
      std::uint32_t id = ids_[t];
      if (left_[id] == 0 && right_[id] == 0) touched_.push_back(id);
      ++counts[id];
    }
  }

  std::vector<std::uint32_t> ids_;
  std::size_t w_;
  std::vector<std::int32_t> left_;
  std::vector<std::int32_t> right_;
  std::vector<std::uint32_t> touched_;
};

std::vector<double> smooth(std::vector<double> scores, std::size_t width, std::size_t rounds) {
  const std::size_t half = width / 2;
  if (half == 0 || scores.empty()) return scores;
  const std::size_t n = scores.size();
  for (std::size_t r = 0; r < rounds; ++r) {
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t lo = i >= half ? i - half : 0;
      const std::size_t hi = std::min(n - 1, i + half);
      double sum = 0.0;
      for (std::size_t j = lo; j <= hi; ++j) sum += scores[j];
      next[i] = sum / static_cast<double>(hi - lo + 1);
    }
    scores = std::move(next);
  }
  return scores;
}

std::vector<double> depths(const std::vector<double>& s) {
  std::vector<double> out(s.size(), 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::size_t l = i;
    while (l > 0 && s[l - 1] >= s[l]) --l;
    std::size_t r = i;
    while (r + 1 < s.size() && s[r + 1] >= s[r]) ++r;
    out[i] = (s[l] - s[i]) + (s[r] - s[i]);
  }
  return out;
}

}  // namespace

Tiling segment(std::span<const std::string> tokens, const TilingParams& params) {
  params.validate();
  Tiling out;
  const std::size_t w = params.pseudo_sentence_size;
  const std::size_t k = params.block_size;
  const std::size_t m = (tokens.size() + w - 1) / w;
  out.pseudo_sentence_count = m;
  if (m < 2 * k) return out;

  // Dense ids in order of first appearance keep every computation independent
  // of the type strings themselves.
  std::unordered_map<std::string, std::uint32_t> vocabulary;
  std::vector<std::uint32_t> ids;
  ids.reserve(tokens.size());
  for (const auto& token : tokens) {
    auto [it, inserted] =
        vocabulary.try_emplace(normalize_type(token), static_cast<std::uint32_t>(vocabulary.size()));
    ids.push_back(it->second);
  }
  BlockComparator compare(std::move(ids), vocabulary.size(), w);

  const std::size_t gaps = m - 1;
  std::vector<double> raw(gaps);
  for (std::size_t i = 0; i < gaps; ++i) {
    const std::size_t split = i + 1;
    raw[i] = compare.cosine(split >= k ? split - k : 0, split, split, std::min(m, split + k));
  }
  out.gap_scores = smooth(std::move(raw), params.smoothing_width, params.smoothing_rounds);
  out.depth_scores = depths(out.gap_scores);

  // Valleys are interior gaps no higher than either neighbour. The edge gaps
  // are left out: their truncated blocks score low regardless of topic.
  const auto& d = out.depth_scores;
  const auto& s = out.gap_scores;
  std::vector<std::size_t> valleys;
  for (std::size_t i = 1; i + 1 < gaps; ++i) {
    if (s[i] <= s[i - 1] && s[i] <= s[i + 1] && d[i] > 0.0) valleys.push_back(i);
  }

  // Cutoff over the valley depths; a lone valley needs only a positive depth.
  double cutoff = 0.0;
  if (valleys.size() >= 2) {
    double mean = 0.0;
    for (std::size_t i : valleys) mean += d[i];
    mean /= static_cast<double>(valleys.size());
    double var = 0.0;
    for (std::size_t i : valleys) var += (d[i] - mean) * (d[i] - mean);
    cutoff = mean - std::sqrt(var / static_cast<double>(valleys.size())) / 2.0;
  }
  std::vector<std::size_t> candidates;
  for (std::size_t i : valleys) {
    if (d[i] > cutoff) candidates.push_back(i);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });
  std::vector<bool> taken(gaps, false);
  for (std::size_t i : candidates) {
    if ((i > 0 && taken[i - 1]) || (i + 1 < gaps && taken[i + 1])) continue;
    taken[i] = true;
  }
  for (std::size_t i = 0; i < gaps; ++i) {
    if (taken[i]) out.boundaries.push_back(i);
  }
  out.tile_count = out.boundaries.size() + 1;
  return out;
}

std::vector<TileRow> tile_count_table(const StyleTable& vectors, const LabelMap& labels,
                                      std::size_t word_threshold) {
  struct Acc {
    std::size_t count = 0;
    double sum = 0.0;
  };
  Acc acc[2][3];
  for (const auto& [id, v] : vectors) {
    auto it = labels.find(id);
    if (it == labels.end()) {
      throw Error(ErrorKind::MissingLabel, "document '" + id.str() + "' has no category label");
    }
    if (!v.tile_count) continue;
    const auto c = static_cast<std::size_t>(it->second);
    const auto tiles = static_cast<double>(*v.tile_count);
    acc[0][c].count += 1;
    acc[0][c].sum += tiles;
    if (v.word_count > word_threshold) {
      acc[1][c].count += 1;
      acc[1][c].sum += tiles;
    }
  }
  std::vector<TileRow> rows;
  for (int subset = 0; subset < 2; ++subset) {
    for (CategoryLabel label : kAllCategories) {
      const Acc& a = acc[subset][static_cast<std::size_t>(label)];
      TileRow row;
      row.over_threshold = subset == 1;
      row.category = label;
      row.count = a.count;
      if (a.count > 0) row.mean_tiles = a.sum / static_cast<double>(a.count);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace stylometer
