#include "stylometer/genre.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "num_format.hpp"
#include "text_util.hpp"

namespace stylometer {

namespace {

bool valid_genre(std::string_view g) { return g.size() == 1 && g[0] >= 'A' && g[0] <= 'J'; }

}  // namespace

Parsed<SeedLabel> parse_seed_labels(std::string_view input, ParseMode mode) {
  Parsed<SeedLabel> result;
  std::map<DocumentId, std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < input.size()) {
    std::size_t nl = input.find('\n', pos);
    if (nl == std::string_view::npos) nl = input.size();
    std::string_view line = input.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (detail::trim(line).empty()) continue;

    auto fail = [&](const std::string& message) {
      auto where = SourceLocation::at_line(line_no);
      if (mode == ParseMode::Strict) throw Error(ErrorKind::MalformedLine, message, where);
      result.skipped.push_back(Diagnostic{ErrorKind::MalformedLine, message, where});
    };
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos) {
      fail("expected 'docid<TAB>genre'");
      continue;
    }
    std::string id = detail::trim(line.substr(0, tab));
    std::string genre = detail::trim(line.substr(tab + 1));
    if (id.empty()) {
      fail("empty document id");
      continue;
    }
    if (!valid_genre(genre)) {
      fail("genre '" + genre + "' is not a letter A-J");
      continue;
    }
    DocumentId doc(id);
    auto [it, inserted] = seen.emplace(doc, genre);
    if (!inserted) {
      if (it->second != genre) fail("document '" + id + "' has two genres");
      continue;
    }
    result.items.push_back(SeedLabel{std::move(doc), std::move(genre)});
  }
  return result;
}

DiscriminantModel DiscriminantModel::fit(const Eigen::MatrixXd& rows,
                                         std::span<const std::string> genres,
                                         std::vector<std::string> feature_names,
                                         double ridge_scale) {
  const auto n = static_cast<std::size_t>(rows.rows());
  const Eigen::Index d = rows.cols();
  if (genres.size() != n || static_cast<std::size_t>(d) != feature_names.size() || d == 0) {
    throw Error(ErrorKind::InvalidArgument, "seed rows, genres and feature names disagree in size");
  }
  if (!(ridge_scale >= 0.0)) throw Error(ErrorKind::InvalidArgument, "ridge must be >= 0");

  std::map<std::string, std::vector<Eigen::Index>> members;
  for (std::size_t i = 0; i < n; ++i) members[genres[i]].push_back(static_cast<Eigen::Index>(i));
  if (members.size() < 2) {
    throw Error(ErrorKind::TooFewSeeds, "discriminant analysis needs at least two genres");
  }
  for (const auto& [genre, idx] : members) {
    if (idx.size() < 2) {
      throw Error(ErrorKind::TooFewSeeds, "genre '" + genre + "' has " +
                                              std::to_string(idx.size()) +
                                              " usable seed(s); at least 2 are required");
    }
  }

  DiscriminantModel m;
  m.feature_names_ = std::move(feature_names);
  m.center_ = rows.colwise().mean().transpose();
  m.scale_.resize(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double var = (rows.col(j).array() - m.center_(j)).square().mean();
    m.scale_(j) = var > 0.0 ? std::sqrt(var) : 1.0;
  }
  for (const auto& [genre, idx] : members) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
    for (Eigen::Index i : idx) sum += rows.row(i).transpose();
    m.genres_.push_back(genre);
    m.counts_.push_back(idx.size());
    m.means_.push_back(sum / static_cast<double>(idx.size()));
  }

  Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(d, d);
  std::size_t c = 0;
  for (const auto& [genre, idx] : members) {
    const Eigen::VectorXd mu = (m.means_[c] - m.center_).cwiseQuotient(m.scale_);
    for (Eigen::Index i : idx) {
      const Eigen::VectorXd z =
          (rows.row(i).transpose() - m.center_).cwiseQuotient(m.scale_) - mu;
      scatter.noalias() += z * z.transpose();
    }
    ++c;
  }
  Eigen::MatrixXd cov = scatter / static_cast<double>(n - members.size());
  cov = 0.5 * (cov + cov.transpose());
  m.ridge_ = ridge_scale * cov.trace() / static_cast<double>(d);
  cov.diagonal().array() += m.ridge_;

  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  const double floor = 1e-12 * std::max(cov.diagonal().maxCoeff(), 0.0);
  bool pd = llt.info() == Eigen::Success && floor > 0.0;
  if (pd) {
    const Eigen::MatrixXd l = llt.matrixL();
    pd = (l.diagonal().array().square() > floor).all();
  }
  if (!pd) {
    throw Error(ErrorKind::SingularCovariance,
                "pooled covariance is not positive definite with ridge " +
                    detail::round_trip(m.ridge_));
  }
  m.covariance_ = cov;
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(d, d));
  m.inverse_ = 0.5 * (inv + inv.transpose());
  m.prepare_scores();
  return m;
}

void DiscriminantModel::prepare_scores() {
  const auto classes = static_cast<Eigen::Index>(genres_.size());
  const Eigen::Index d = center_.size();
  std::size_t total = 0;
  for (std::size_t k : counts_) total += k;
  weights_.resize(classes, d);
  offsets_.resize(classes);
  for (Eigen::Index c = 0; c < classes; ++c) {
    const auto cu = static_cast<std::size_t>(c);
    const Eigen::VectorXd mu = (means_[cu] - center_).cwiseQuotient(scale_);
    const Eigen::VectorXd w = inverse_ * mu;
    weights_.row(c) = w.transpose();
    offsets_(c) = -0.5 * mu.dot(w) +
                  std::log(static_cast<double>(counts_[cu]) / static_cast<double>(total));
  }
}

std::vector<double> DiscriminantModel::priors() const {
  std::size_t total = 0;
  for (std::size_t k : counts_) total += k;
  std::vector<double> out;
  for (std::size_t k : counts_) out.push_back(static_cast<double>(k) / static_cast<double>(total));
  return out;
}

Classification DiscriminantModel::classify(const Eigen::VectorXd& x) const {
  if (x.size() != center_.size()) {
    throw Error(ErrorKind::InvalidArgument, "feature vector has the wrong dimension");
  }
  const Eigen::VectorXd z = (x - center_).cwiseQuotient(scale_);
  const Eigen::VectorXd s = weights_ * z + offsets_;
  Classification out;
  out.scores.assign(s.data(), s.data() + s.size());
  std::size_t best = 0;
  for (std::size_t c = 1; c < out.scores.size(); ++c) {
    if (out.scores[c] > out.scores[best]) best = c;
  }
  out.genre = genres_[best];
  return out;
}

namespace {

constexpr std::string_view kModelMagic = "stylometer-discriminant-model";

void write_vector(std::ostream& os, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? " " : "") << detail::round_trip(v(i));
  os << '\n';
}

void write_matrix(std::ostream& os, const Eigen::MatrixXd& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) write_vector(os, a.row(i).transpose());
}

class TokenReader {
 public:
  explicit TokenReader(std::string_view text) : tokens_(detail::split_whitespace(text)) {}

  std::string_view next() {
    if (pos_ >= tokens_.size()) throw Error(ErrorKind::ModelFormat, "model file is truncated");
    return tokens_[pos_++];
  }
  void expect(std::string_view word) {
    if (next() != word) {
      throw Error(ErrorKind::ModelFormat, "expected '" + std::string(word) + "' in model file");
    }
  }
  double number() { return detail::parse_double(next()); }
  std::size_t count() {
    std::string_view s = next();
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw Error(ErrorKind::ModelFormat, "'" + std::string(s) + "' is not a count");
    }
    return v;
  }
  Eigen::VectorXd vector(Eigen::Index d) {
    Eigen::VectorXd v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = number();
    return v;
  }
  Eigen::MatrixXd matrix(Eigen::Index d) {
    Eigen::MatrixXd a(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) a(i, j) = number();
    }
    return a;
  }
  bool done() const { return pos_ == tokens_.size(); }

 private:
  std::vector<std::string_view> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string DiscriminantModel::serialize() const {
  std::ostringstream os;
  os << kModelMagic << " 1\n";
  os << "features " << feature_names_.size();
  for (const auto& f : feature_names_) os << ' ' << f;
  os << "\ncenter ";
  write_vector(os, center_);
  os << "scale ";
  write_vector(os, scale_);
  os << "ridge " << detail::round_trip(ridge_) << '\n';
  os << "classes " << genres_.size() << '\n';
  for (std::size_t c = 0; c < genres_.size(); ++c) {
    os << "class " << genres_[c] << ' ' << counts_[c] << ' ';
    write_vector(os, means_[c]);
  }
  os << "covariance\n";
  write_matrix(os, covariance_);
  os << "inverse\n";
  write_matrix(os, inverse_);
  os << "end\n";
  return os.str();
}

DiscriminantModel DiscriminantModel::deserialize(std::string_view text) {
  TokenReader in(text);
  in.expect(kModelMagic);
  in.expect("1");
  DiscriminantModel m;
  in.expect("features");
  const std::size_t d = in.count();
  if (d == 0) throw Error(ErrorKind::ModelFormat, "model has no features");
  for (std::size_t i = 0; i < d; ++i) m.feature_names_.emplace_back(in.next());
  const auto dim = static_cast<Eigen::Index>(d);
  in.expect("center");
  m.center_ = in.vector(dim);
  in.expect("scale");
  m.scale_ = in.vector(dim);
  in.expect("ridge");
  m.ridge_ = in.number();
  in.expect("classes");
  const std::size_t classes = in.count();
  for (std::size_t c = 0; c < classes; ++c) {
    in.expect("class");
    m.genres_.emplace_back(in.next());
    m.counts_.push_back(in.count());
    m.means_.push_back(in.vector(dim));
  }
  in.expect("covariance");
  m.covariance_ = in.matrix(dim);
  in.expect("inverse");
  m.inverse_ = in.matrix(dim);
  in.expect("end");
  if (!in.done()) throw Error(ErrorKind::ModelFormat, "trailing content after 'end'");
  if (classes < 2 || !std::is_sorted(m.genres_.begin(), m.genres_.end())) {
    throw Error(ErrorKind::ModelFormat, "model needs at least two genres in sorted order");
  }
  m.prepare_scores();
  return m;
}

std::optional<Eigen::VectorXd> feature_row(const StyleVector& v,
                                           std::span<const StyleField> features) {
  Eigen::VectorXd row(static_cast<Eigen::Index>(features.size()));
  for (std::size_t j = 0; j < features.size(); ++j) {
    auto value = field_value(v, features[j]);
    if (!value) return std::nullopt;
    row(static_cast<Eigen::Index>(j)) = *value;
  }
  return row;
}

LdaFit fit_lda(const StyleTable& vectors, const std::vector<SeedLabel>& seeds,
               std::span<const StyleField> features, double ridge_scale) {
  std::vector<Eigen::VectorXd> rows;
  std::vector<std::string> genres;
  std::vector<DocumentId> incomplete;
  std::vector<DocumentId> missing;
  for (const auto& seed : seeds) {
    auto it = vectors.find(seed.doc_id);
    if (it == vectors.end()) {
      missing.push_back(seed.doc_id);
      continue;
    }
    auto row = feature_row(it->second, features);
    if (!row) {
      incomplete.push_back(seed.doc_id);
      continue;
    }
    rows.push_back(std::move(*row));
    genres.push_back(seed.genre);
  }
  Eigen::MatrixXd matrix(static_cast<Eigen::Index>(rows.size()),
                         static_cast<Eigen::Index>(features.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    matrix.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  std::vector<std::string> names;
  for (StyleField f : features) names.emplace_back(field_name(f));
  return LdaFit{DiscriminantModel::fit(matrix, genres, std::move(names), ridge_scale),
                std::vector<StyleField>(features.begin(), features.end()), std::move(incomplete),
                std::move(missing)};
}

Classification classify(const DiscriminantModel& model, const StyleVector& v) {
  std::vector<StyleField> features;
  for (const auto& name : model.feature_names()) features.push_back(parse_field(name));
  auto row = feature_row(v, features);
  if (!row) return Classification{std::string(kUnclassifiedGenre), {}};
  return model.classify(*row);
}

std::vector<ClusterRow> cluster_report(const std::map<DocumentId, std::string>& assignments,
                                       const StyleTable& vectors, const LabelMap& labels) {
  std::map<std::string, std::array<std::vector<const StyleVector*>, 3>> groups;
  for (const auto& [id, genre] : assignments) {
    auto v = vectors.find(id);
    if (v == vectors.end()) {
      throw Error(ErrorKind::InvalidArgument, "assigned document '" + id.str() + "' has no style vector");
    }
    auto l = labels.find(id);
    if (l == labels.end()) {
      throw Error(ErrorKind::MissingLabel, "document '" + id.str() + "' has no category label");
    }
    groups[genre][static_cast<std::size_t>(l->second)].push_back(&v->second);
  }
  std::vector<ClusterRow> rows;
  for (const auto& [genre, by_category] : groups) {
    ClusterRow row;
    row.genre = genre;
    for (CategoryLabel label : kAllCategories) {
      const auto c = static_cast<std::size_t>(label);
      row.by_category[c] = summarize(by_category[c]);
      row.count += by_category[c].size();
    }
    row.relevant = by_category[static_cast<std::size_t>(CategoryLabel::Relevant)].size();
    row.relevant_percent =
        100.0 * static_cast<double>(row.relevant) / static_cast<double>(row.count);
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ClusterRow& a, const ClusterRow& b) {
    const bool a_u = a.genre == kUnclassifiedGenre;
    const bool b_u = b.genre == kUnclassifiedGenre;
    if (a_u != b_u) return b_u;
    // Exact comparison of relevant/count fractions.
    const auto lhs = static_cast<unsigned long long>(a.relevant) * b.count;
    const auto rhs = static_cast<unsigned long long>(b.relevant) * a.count;
    if (lhs != rhs) return lhs > rhs;
    return a.genre < b.genre;
  });
  return rows;
}

}  // namespace stylometer
