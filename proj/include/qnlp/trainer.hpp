#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "qnlp/circuit.hpp"
#include "qnlp/compiler.hpp"
#include "qnlp/grammar.hpp"
#include "qnlp/rng.hpp"

namespace qnlp {

/// Probability floor inside the log; also the loss charged for a sentence
/// whose post-selection annihilates the state.
inline constexpr double kProbabilityFloor = 1e-9;

enum class Algorithm : std::uint8_t { spsa, nelder_mead };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view text);

struct OptimizerConfig {
  Algorithm algorithm = Algorithm::spsa;
  int max_iterations = 2000;
  // SPSA gains: a_k = a / (k + 1 + A)^alpha, c_k = c / (k + 1)^gamma
  double a = 0.1;
  double c = 0.1;
  double A = 10.0;
  double alpha = 0.602;
  double gamma = 0.101;
  std::uint64_t seed = 0;
  /// Stop once the best loss gains less than this over `patience` iterations.
  double tolerance = 1e-6;
  int patience = 50;
  /// Nelder-Mead initial simplex edge, radians.
  double simplex_step = 0.5;

  /// Throws Config when a gain is out of range.
  void validate() const;
  double a_k(int k) const;
  double c_k(int k) const;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

/// One simultaneous-perturbation step from `params` at iteration k (0-based).
/// Draws a Rademacher direction from `rng`, estimates the gradient from two
/// objective evaluations, and moves against it.
Eigen::VectorXd spsa_step(const Eigen::VectorXd& params, const Objective& objective, int k,
                          const OptimizerConfig& config, Rng& rng);

/// Nelder-Mead with the standard coefficients (reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2), advanced one iteration at a time.
class NelderMead {
public:
  NelderMead(const Eigen::VectorXd& start, Objective objective, double step);

  void iterate();
  const Eigen::VectorXd& best() const { return vertices_[order_.front()]; }
  double best_value() const { return values_[order_.front()]; }
  std::int64_t evaluations() const { return evaluations_; }

private:
  double eval(const Eigen::VectorXd& x);
  void sort();

  Objective objective_;
  std::vector<Eigen::VectorXd> vertices_;
  std::vector<double> values_;
  std::vector<std::size_t> order_;
  std::int64_t evaluations_ = 0;
};

// ---------------------------------------------------------------------------
// Loss
// ---------------------------------------------------------------------------

/// Sentences compiled once against a store layout; the circuits refer to
/// parameter slots, so the same set is evaluated at any parameter vector.
class CompiledSet {
public:
  CompiledSet(const std::vector<LabeledSentence>& sentences, const ParameterStore& store);

  std::size_t size() const { return circuits_.size(); }
  const std::vector<Circuit>& circuits() const { return circuits_; }
  const std::vector<Emotion>& labels() const { return labels_; }

  /// Probability of each sentence's true class; 0 when post-selection fails.
  std::vector<double> true_class_probabilities(std::span<const double> params) const;
  /// Mean of -ln max(p, floor), summed in dataset order.
  double cross_entropy(std::span<const double> params) const;

private:
  std::vector<Circuit> circuits_;
  std::vector<Emotion> labels_;
};

double cross_entropy_from_probabilities(std::span<const double> true_class_probabilities);

/// Throws MissingParameters when a token has no angles.
double cross_entropy(const ParameterStore& store, const std::vector<LabeledSentence>& dataset);

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

struct LossReport {
  int iteration = 0;
  /// Best loss seen up to this iteration (the loss of the parameters train returns).
  double loss = 0;
  /// Loss at the optimizer's current iterate.
  double current_loss = 0;
  double wall_time = 0;
};

struct TrainHooks {
  /// Called every `checkpoint_every` iterations and at the end, with the best parameters.
  std::function<void(int iteration, const ParameterStore& best)> on_checkpoint;
  std::function<void(const LossReport&)> on_report;
  int checkpoint_every = 25;
  bool record_wall_time = true;
};

struct TrainResult {
  ParameterStore store;
  std::vector<LossReport> curve;
};

/// Iteration 0 is the loss before any update. Stops at max_iterations or
/// when the best loss improves by less than tolerance over `patience`
/// consecutive iterations. Returns the best parameters seen.
TrainResult train(const ParameterStore& store, const std::vector<LabeledSentence>& train_set,
                  const OptimizerConfig& config, const TrainHooks& hooks = {});

void write_loss_csv(std::ostream& out, const std::vector<LossReport>& curve);

// ---------------------------------------------------------------------------
// Prediction
// ---------------------------------------------------------------------------

/// Argmax with ties to the lowest class index.
Emotion argmax_class(std::span<const double> scores);

/// Exact outcome distribution per sentence; a sentence whose post-selection
/// fails gets the uniform distribution.
std::vector<Eigen::Vector4d> predict_distributions(const ParameterStore& store,
                                                   const std::vector<LabeledSentence>& sentences);

/// shots == 0: exact argmax. Otherwise argmax of sampled counts, sentence i
/// drawing with seed derived from (seed, i).
std::vector<Emotion> predict(const ParameterStore& store, const std::vector<LabeledSentence>& sentences,
                             std::int64_t shots = 0, std::uint64_t seed = 0);

} // namespace qnlp
