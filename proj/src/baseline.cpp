#include "qnlp/baseline.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "qnlp/error.hpp"
#include "qnlp/trainer.hpp"

namespace qnlp {
namespace {

Eigen::VectorXd unit(const Eigen::VectorXd& x) {
  const double n = x.norm();
  return n > 0 ? Eigen::VectorXd(x / n) : x;
}

} // namespace

TfidfModel TfidfModel::fit(const std::vector<std::vector<std::string>>& documents) {
  if (documents.empty()) throw Error(ErrorKind::EmptyCorpus, "no training documents");
  TfidfModel m;
  m.documents_ = static_cast<int>(documents.size());
  std::map<std::string, int> df;
  for (const auto& doc : documents) {
    for (const auto& t : std::set<std::string>(doc.begin(), doc.end())) ++df[t];
  }
  m.idf_.resize(static_cast<Eigen::Index>(df.size()));
  int index = 0;
  for (const auto& [token, count] : df) {
    m.vocabulary_[token] = index;
    m.idf_[index] = std::log((1.0 + m.documents_) / (1.0 + count)) + 1.0;
    ++index;
  }
  return m;
}

double TfidfModel::idf(const std::string& token) const {
  auto it = vocabulary_.find(token);
  if (it == vocabulary_.end()) throw Error(ErrorKind::UnknownToken, "'" + token + "' not in vocabulary");
  return idf_[it->second];
}

Eigen::VectorXd TfidfModel::transform(const std::vector<std::string>& tokens) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(idf_.size());
  for (const auto& t : tokens) {
    auto it = vocabulary_.find(t);
    if (it != vocabulary_.end()) x[it->second] += 1.0;
  }
  return unit(x.cwiseProduct(idf_));
}

Eigen::MatrixXd TfidfModel::transform_all(const std::vector<std::vector<std::string>>& documents) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(documents.size()), idf_.size());
  for (std::size_t i = 0; i < documents.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = transform(documents[i]).transpose();
  return out;
}

NaiveBayesModel NaiveBayesModel::fit(const Eigen::MatrixXd& features, const std::vector<Emotion>& labels,
                                     double alpha) {
  if (features.rows() != static_cast<Eigen::Index>(labels.size()))
    throw Error(ErrorKind::LengthMismatch, "features and labels differ in length");
  if (labels.empty()) throw Error(ErrorKind::EmptyCorpus, "no training examples");
  if (!(alpha > 0)) throw Error(ErrorKind::Config, "smoothing alpha must be positive");

  NaiveBayesModel m;
  m.alpha_ = alpha;
  const Eigen::Index dim = features.cols();
  Eigen::Matrix<double, kNumClasses, Eigen::Dynamic> sums =
      Eigen::Matrix<double, kNumClasses, Eigen::Dynamic>::Zero(kNumClasses, dim);
  Eigen::Vector4d counts = Eigen::Vector4d::Zero();
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    const int k = class_index(labels[static_cast<std::size_t>(i)]);
    sums.row(k) += unit(features.row(i).transpose()).transpose();
    counts[k] += 1;
  }
  m.priors_ = counts / counts.sum();
  m.log_likelihood_.resize(kNumClasses, dim);
  for (int k = 0; k < kNumClasses; ++k) {
    if (counts[k] == 0) m.missing_.push_back(emotion_from_index(k));
    const double denom = sums.row(k).sum() + alpha * static_cast<double>(dim);
    for (Eigen::Index j = 0; j < dim; ++j) m.log_likelihood_(k, j) = std::log((sums(k, j) + alpha) / denom);
  }
  return m;
}

Eigen::Vector4d NaiveBayesModel::log_scores(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd u = unit(x);
  Eigen::Vector4d s;
  for (int k = 0; k < kNumClasses; ++k) {
    s[k] = priors_[k] > 0 ? std::log(priors_[k]) + log_likelihood_.row(k).dot(u)
                          : -std::numeric_limits<double>::infinity();
  }
  return s;
}

Emotion NaiveBayesModel::predict(const Eigen::VectorXd& x) const {
  const Eigen::Vector4d s = log_scores(x);
  return argmax_class({s.data(), 4});
}

BaselineResult evaluate_baseline(const std::vector<LabeledSentence>& train,
                                 const std::vector<LabeledSentence>& test, double alpha) {
  if (test.empty()) throw Error(ErrorKind::EmptyTestSet, "no test sentences");
  std::vector<std::vector<std::string>> docs;
  std::vector<Emotion> labels;
  for (const auto& s : train) {
    docs.push_back(s.tokens);
    labels.push_back(s.label);
  }
  const auto tfidf = TfidfModel::fit(docs);
  const auto nb = NaiveBayesModel::fit(tfidf.transform_all(docs), labels, alpha);

  BaselineResult out;
  out.missing_labels = nb.missing_labels();
  std::vector<Emotion> truth;
  for (const auto& s : test) {
    out.predictions.push_back(nb.predict(tfidf.transform(s.tokens)));
    truth.push_back(s.label);
  }
  out.metrics = compute_metrics(truth, out.predictions);
  return out;
}

} // namespace qnlp
