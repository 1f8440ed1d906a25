#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qnlp/baseline.hpp"
#include "qnlp/config.hpp"
#include "qnlp/metrics.hpp"
#include "qnlp/trainer.hpp"

namespace qnlp {

// File names written under the output directory.
inline constexpr const char* kDatasetFile = "dataset.tsv";
inline constexpr const char* kLossFile = "loss.csv";
inline constexpr const char* kCheckpointFile = "params.ckpt";
inline constexpr const char* kMetricsFile = "metrics.txt";
inline constexpr const char* kConfusionFile = "confusion.csv";

/// Writes dataset.tsv and prints per-class and per-template counts.
std::vector<LabeledSentence> command_generate(const RunConfig& config,
                                              const std::filesystem::path& out_dir, std::ostream& log);

/// Train/test partition used by every command for a given config.
DatasetSplit partition(const RunConfig& config, const std::vector<LabeledSentence>& dataset);

/// Trains on the train partition; writes params.ckpt (every 25 iterations
/// and at the end) and loss.csv.
TrainResult command_train(const RunConfig& config, const std::filesystem::path& dataset_path,
                          const std::filesystem::path& out_dir, std::ostream& log);

/// Predicts the test partition; writes metrics.txt and confusion.csv.
/// Throws CheckpointMismatch when depth or qubits_per_n differ from the config.
Metrics command_evaluate(const RunConfig& config, const std::filesystem::path& checkpoint_path,
                         const std::filesystem::path& dataset_path,
                         const std::filesystem::path& out_dir, std::ostream& log);

/// TF-IDF + naive Bayes on the same partition; writes the same metrics files.
BaselineResult command_baseline(const RunConfig& config, const std::filesystem::path& dataset_path,
                                const std::filesystem::path& out_dir, std::ostream& log);

/// Diagram, qubit layout, gate listing and post-selection set of one sentence.
/// Accepts simple inflections ("attacks", "cries"). Throws UnknownToken with
/// spelling suggestions, or TemplateMismatch.
std::string command_inspect(const RunConfig& config, const std::vector<std::string>& words);

/// Citation form of a surface token if the lexicon knows one.
std::string lemmatize(const std::string& word, const Lexicon& lexicon);

} // namespace qnlp
