#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>

#include <Eigen/Core>

#include "qnlp/grammar.hpp"

namespace qnlp {

using ConfusionMatrix = Eigen::Matrix<std::int64_t, kNumClasses, kNumClasses>;

struct Metrics {
  ConfusionMatrix confusion = ConfusionMatrix::Zero(); // rows: truth, columns: prediction
  Eigen::Matrix4d normalized = Eigen::Matrix4d::Zero(); // rows sum to 1 (or 0 when empty)
  std::array<double, kNumClasses> f1{};
  double macro_f1 = 0;
  double accuracy = 0;
  std::int64_t count = 0;
};

/// Per-class F1 = 2PR/(P+R), 0 when P+R = 0; macro-F1 averages all four
/// classes, including ones absent from both lists. Throws LengthMismatch.
Metrics compute_metrics(std::span<const Emotion> truth, std::span<const Emotion> prediction);

/// `key: value` lines plus the count matrix.
void write_metrics_report(std::ostream& out, const Metrics& m);
/// Row-normalized confusion matrix with a header of class names.
void write_confusion_csv(std::ostream& out, const Metrics& m);

} // namespace qnlp
