#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qnlp/grammar.hpp"
#include "qnlp/metrics.hpp"

namespace qnlp {

/// Raw term counts weighted by smoothed idf(t) = ln((1+N)/(1+df(t))) + 1,
/// then L2-normalized. Features are indexed in lexicographic token order.
class TfidfModel {
public:
  /// Throws EmptyCorpus.
  static TfidfModel fit(const std::vector<std::vector<std::string>>& documents);

  /// Out-of-vocabulary tokens are dropped.
  Eigen::VectorXd transform(const std::vector<std::string>& tokens) const;
  Eigen::MatrixXd transform_all(const std::vector<std::vector<std::string>>& documents) const;

  const std::map<std::string, int>& vocabulary() const { return vocabulary_; }
  const Eigen::VectorXd& idf() const { return idf_; }
  int document_count() const { return documents_; }
  double idf(const std::string& token) const;

private:
  std::map<std::string, int> vocabulary_;
  Eigen::VectorXd idf_;
  int documents_ = 0;
};

/// Multinomial naive Bayes over non-negative feature weights with additive
/// smoothing, scored in log space. Inputs are L2-normalized before use, so a
/// common positive rescaling of the features never changes a prediction.
class NaiveBayesModel {
public:
  static NaiveBayesModel fit(const Eigen::MatrixXd& features, const std::vector<Emotion>& labels,
                             double alpha = 1.0);

  Eigen::Vector4d log_scores(const Eigen::VectorXd& x) const;
  Emotion predict(const Eigen::VectorXd& x) const;

  const Eigen::Vector4d& priors() const { return priors_; }
  /// Classes with no training example; their prior is 0 and they are never predicted.
  const std::vector<Emotion>& missing_labels() const { return missing_; }
  double alpha() const { return alpha_; }

private:
  Eigen::Vector4d priors_ = Eigen::Vector4d::Zero();
  Eigen::Matrix<double, kNumClasses, Eigen::Dynamic> log_likelihood_;
  double alpha_ = 1.0;
  std::vector<Emotion> missing_;
};

struct BaselineResult {
  Metrics metrics;
  std::vector<Emotion> predictions;
  std::vector<Emotion> missing_labels;
};

/// Fits on train, predicts test. Throws EmptyCorpus / EmptyTestSet.
BaselineResult evaluate_baseline(const std::vector<LabeledSentence>& train,
                                 const std::vector<LabeledSentence>& test, double alpha = 1.0);

} // namespace qnlp
