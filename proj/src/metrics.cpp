#include "qnlp/metrics.hpp"

#include <iomanip>
#include <ostream>

#include "qnlp/error.hpp"

namespace qnlp {

Metrics compute_metrics(std::span<const Emotion> truth, std::span<const Emotion> prediction) {
  if (truth.size() != prediction.size()) {
    throw Error(ErrorKind::LengthMismatch, std::to_string(truth.size()) + " labels vs " +
                                               std::to_string(prediction.size()) + " predictions");
  }
  Metrics m;
  for (std::size_t i = 0; i < truth.size(); ++i)
    ++m.confusion(class_index(truth[i]), class_index(prediction[i]));
  m.count = static_cast<std::int64_t>(truth.size());

  const auto total = m.confusion.cast<double>();
  const Eigen::Vector4d row_sums = total.rowwise().sum();
  const Eigen::RowVector4d col_sums = total.colwise().sum();
  for (int r = 0; r < kNumClasses; ++r) {
    if (row_sums[r] > 0) m.normalized.row(r) = total.row(r) / row_sums[r];
  }
  double f1_sum = 0;
  for (int k = 0; k < kNumClasses; ++k) {
    const double tp = total(k, k);
    const double precision = col_sums[k] > 0 ? tp / col_sums[k] : 0.0;
    const double recall = row_sums[k] > 0 ? tp / row_sums[k] : 0.0;
    m.f1[k] = precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
    f1_sum += m.f1[k];
  }
  m.macro_f1 = f1_sum / kNumClasses;
  m.accuracy = m.count > 0 ? total.trace() / static_cast<double>(m.count) : 0.0;
  return m;
}

void write_metrics_report(std::ostream& out, const Metrics& m) {
  out << std::setprecision(6) << std::fixed;
  out << "sentences: " << m.count << '\n';
  out << "accuracy: " << m.accuracy << '\n';
  out << "macro_f1: " << m.macro_f1 << '\n';
  for (auto e : kAllEmotions) out << "f1_" << to_string(e) << ": " << m.f1[class_index(e)] << '\n';
  out << "confusion (rows truth, columns prediction: happiness fear anger sadness)\n";
  for (int r = 0; r < kNumClasses; ++r) {
    out << std::setw(10) << to_string(kAllEmotions[r]);
    for (int c = 0; c < kNumClasses; ++c) out << ' ' << std::setw(5) << m.confusion(r, c);
    out << '\n';
  }
  out.unsetf(std::ios::fixed);
}

void write_confusion_csv(std::ostream& out, const Metrics& m) {
  out << "truth";
  for (auto e : kAllEmotions) out << ',' << to_string(e);
  out << '\n' << std::setprecision(6) << std::fixed;
  for (int r = 0; r < kNumClasses; ++r) {
    out << to_string(kAllEmotions[r]);
    for (int c = 0; c < kNumClasses; ++c) out << ',' << m.normalized(r, c);
    out << '\n';
  }
  out.unsetf(std::ios::fixed);
}

} // namespace qnlp
