#pragma once

// Genre clustering: linear discriminant functions fitted on a hand-labelled
// seed set, then used to assign every document to a genre cluster.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "stylometer/style_metrics.hpp"

namespace stylometer {

// Cluster for documents missing a required feature.
inline constexpr std::string_view kUnclassifiedGenre = "U";

inline constexpr double kDefaultRidgeScale = 1e-6;

// Feature columns of the genre table, in order.
inline constexpr std::array<StyleField, 7> kGenreFeatures = {
    StyleField::TreeDepth,      StyleField::SkipRate,       StyleField::WordCount,
    StyleField::TypeTokenRatio, StyleField::AvgWordLength,  StyleField::DigitsPerKChar,
    StyleField::WordsPerSentence};

struct SeedLabel {
  DocumentId doc_id;
  std::string genre;  // one letter, A-J
};

// "docid<TAB>genre" per line. Repeated identical lines collapse; a document
// given two different genres is a MalformedLine.
Parsed<SeedLabel> parse_seed_labels(std::string_view input, ParseMode mode = ParseMode::Strict);

struct Classification {
  std::string genre;
  std::vector<double> scores;  // parallel to DiscriminantModel::genres(); empty for "U"
};

// Pooled-covariance discriminant over standardized features. Features are
// centred and scaled with the seed mean and standard deviation; the class
// means, covariance and its inverse live in that standardized space.
class DiscriminantModel {
 public:
  // rows: one seed per row. Genres are ordered lexicographically; every genre
  // needs at least two rows and there must be at least two genres
  // (TooFewSeeds). A ridge of ridge_scale * trace / dim is added to the
  // pooled covariance; SingularCovariance if the result is not positive
  // definite.
  static DiscriminantModel fit(const Eigen::MatrixXd& rows, std::span<const std::string> genres,
                               std::vector<std::string> feature_names,
                               double ridge_scale = kDefaultRidgeScale);

  // g_c(x) = m_c' S^-1 z - m_c' S^-1 m_c / 2 + ln prior_c with z the
  // standardized x. Exact score ties go to the earlier genre.
  Classification classify(const Eigen::VectorXd& x) const;

  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::vector<std::string>& genres() const { return genres_; }
  const std::vector<std::size_t>& class_counts() const { return counts_; }
  std::vector<double> priors() const;
  // Class means in the original feature units.
  const std::vector<Eigen::VectorXd>& class_means() const { return means_; }
  const Eigen::VectorXd& center() const { return center_; }
  const Eigen::VectorXd& scale() const { return scale_; }
  double ridge() const { return ridge_; }
  const Eigen::MatrixXd& pooled_covariance() const { return covariance_; }
  const Eigen::MatrixXd& covariance_inverse() const { return inverse_; }

  // Plain-text form; doubles are written in shortest round-trip notation so
  // a reloaded model classifies bit-identically.
  std::string serialize() const;
  static DiscriminantModel deserialize(std::string_view text);

 private:
  DiscriminantModel() = default;
  void prepare_scores();

  std::vector<std::string> feature_names_;
  std::vector<std::string> genres_;
  std::vector<std::size_t> counts_;
  std::vector<Eigen::VectorXd> means_;
  Eigen::VectorXd center_;
  Eigen::VectorXd scale_;
  double ridge_ = 0.0;
  Eigen::MatrixXd covariance_;
  Eigen::MatrixXd inverse_;
  // Derived: linear weights and offsets of each discriminant function.
  Eigen::MatrixXd weights_;
  Eigen::VectorXd offsets_;
};

// Feature row for a style vector, empty if any feature is undefined.
std::optional<Eigen::VectorXd> feature_row(const StyleVector& v, std::span<const StyleField> features);

struct LdaFit {
  DiscriminantModel model;
  std::vector<StyleField> features;
  std::vector<DocumentId> incomplete;  // seeds excluded for an undefined feature
  std::vector<DocumentId> missing;     // seeds with no style vector
};

LdaFit fit_lda(const StyleTable& vectors, const std::vector<SeedLabel>& seeds,
               std::span<const StyleField> features = kGenreFeatures,
               double ridge_scale = kDefaultRidgeScale);

// Requires the model's feature names to be style field names. Documents with
// an undefined feature get kUnclassifiedGenre.
Classification classify(const DiscriminantModel& model, const StyleVector& v);

struct ClusterRow {
  std::string genre;
  std::size_t count = 0;
  std::size_t relevant = 0;
  double relevant_percent = 0.0;
  std::array<GroupSummary, 3> by_category{};  // indexed by CategoryLabel
};

// Rows ordered by descending share of relevant documents, ties by genre id,
// with the unclassified cluster last.
std::vector<ClusterRow> cluster_report(const std::map<DocumentId, std::string>& assignments,
                                       const StyleTable& vectors, const LabelMap& labels);

}  // namespace stylometer
