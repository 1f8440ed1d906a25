#include "qnlp/trainer.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <memory>
#include <ostream>

#include "qnlp/diagram.hpp"
#include "qnlp/error.hpp"
#include "qnlp/simulator.hpp"

namespace qnlp {
namespace {

Circuit compile_sentence(const LabeledSentence& s, const ParameterStore& store) {
  const auto tmpl = Template::parse(s.template_id);
  return compile(build_diagram(s, tmpl), store);
}

} // namespace

CompiledSet::CompiledSet(const std::vector<LabeledSentence>& sentences, const ParameterStore& store) {
  circuits_.reserve(sentences.size());
  labels_.reserve(sentences.size());
  for (const auto& s : sentences) {
    circuits_.push_back(compile_sentence(s, store));
    labels_.push_back(s.label);
  }
}

std::vector<double> CompiledSet::true_class_probabilities(std::span<const double> params) const {
  std::vector<double> p(circuits_.size());
  for (std::size_t i = 0; i < circuits_.size(); ++i) {
    try {
      p[i] = run_circuit(circuits_[i], params)[class_index(labels_[i])];
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ZeroNorm) throw;
      p[i] = 0.0;
    }
  }
  return p;
}

double CompiledSet::cross_entropy(std::span<const double> params) const {
  return cross_entropy_from_probabilities(true_class_probabilities(params));
}

double cross_entropy_from_probabilities(std::span<const double> probabilities) {
  if (probabilities.empty()) return 0.0;
  double sum = 0.0;
  for (double p : probabilities) sum -= std::log(std::max(p, kProbabilityFloor));
  return sum / static_cast<double>(probabilities.size());
}

double cross_entropy(const ParameterStore& store, const std::vector<LabeledSentence>& dataset) {
  CompiledSet set(dataset, store);
  const auto& v = store.values();
  return set.cross_entropy({v.data(), static_cast<std::size_t>(v.size())});
}

// ---------------------------------------------------------------------------

TrainResult train(const ParameterStore& store, const std::vector<LabeledSentence>& train_set,
                  const OptimizerConfig& config, const TrainHooks& hooks) {
  if (train_set.empty()) throw Error(ErrorKind::DatasetTooSmall, "empty training set");
  config.validate();
  const CompiledSet set(train_set, store);
  const Objective objective = [&set](const Eigen::VectorXd& x) {
    return set.cross_entropy({x.data(), static_cast<std::size_t>(x.size())});
  };

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    if (!hooks.record_wall_time) return 0.0;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  TrainResult result{store, {}};
  Eigen::VectorXd best = store.values();
  double best_loss = objective(best);
  auto report = [&](int iteration, double current) {
    LossReport r{iteration, best_loss, current, elapsed()};
    result.curve.push_back(r);
    if (hooks.on_report) hooks.on_report(r);
  };
  auto checkpoint = [&](int iteration) {
    if (!hooks.on_checkpoint) return;
    result.store.values() = best;
    hooks.on_checkpoint(iteration, result.store);
  };
  report(0, best_loss);

  auto stalled = [&] {
    const auto n = static_cast<int>(result.curve.size());
    if (n <= config.patience) return false;
    return result.curve[n - 1 - config.patience].loss - best_loss < config.tolerance;
  };

  Rng rng(config.seed);
  Eigen::VectorXd theta = store.values();
  std::unique_ptr<NelderMead> simplex;
  if (config.algorithm == Algorithm::nelder_mead && theta.size() > 0)
    simplex = std::make_unique<NelderMead>(theta, objective, config.simplex_step);

  int iteration = 0;
  for (int k = 0; k < config.max_iterations; ++k) {
    double current = 0;
    if (simplex) {
      simplex->iterate();
      theta = simplex->best();
      current = simplex->best_value();
    } else {
      theta = spsa_step(theta, objective, k, config, rng);
      current = objective(theta);
    }
    if (current < best_loss) {
      best_loss = current;
      best = theta;
    }
    iteration = k + 1;
    report(iteration, current);
    if (hooks.checkpoint_every > 0 && iteration % hooks.checkpoint_every == 0) checkpoint(iteration);
    if (stalled()) break;
  }
  result.store.values() = best;
  checkpoint(iteration);
  return result;
}

void write_loss_csv(std::ostream& out, const std::vector<LossReport>& curve) {
  out << "iteration,loss,wall_time_s\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  for (const auto& r : curve) {
    out << r.iteration << ',' << std::setprecision(17) << r.loss << ',' << std::setprecision(6)
        << std::fixed << r.wall_time << '\n';
    out.flags(flags);
  }
  out.precision(precision);
}

// ---------------------------------------------------------------------------

Emotion argmax_class(std::span<const double> scores) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(scores.size()) && k < kNumClasses; ++k) {
    if (scores[k] > scores[best]) best = k;
  }
  return emotion_from_index(best);
}

std::vector<Eigen::Vector4d> predict_distributions(const ParameterStore& store,
                                                   const std::vector<LabeledSentence>& sentences) {
  const CompiledSet set(sentences, store);
  const auto& v = store.values();
  const std::span<const double> params(v.data(), static_cast<std::size_t>(v.size()));
  std::vector<Eigen::Vector4d> out;
  out.reserve(set.size());
  for (const auto& c : set.circuits()) {
    try {
      out.push_back(run_circuit(c, params));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ZeroNorm) throw;
      out.push_back(Eigen::Vector4d::Constant(0.25));
    }
  }
  return out;
}

std::vector<Emotion> predict(const ParameterStore& store, const std::vector<LabeledSentence>& sentences,
                             std::int64_t shots, std::uint64_t seed) {
  std::vector<Emotion> out;
  const auto dists = predict_distributions(store, sentences);
  for (std::size_t i = 0; i < dists.size(); ++i) {
    if (shots <= 0) {
      out.push_back(argmax_class({dists[i].data(), 4}));
      continue;
    }
    const auto counts = sample<double>(dists[i], shots, stream_seed(seed + i, Stream::Shots));
    const std::array<double, 4> c = {double(counts[0]), double(counts[1]), double(counts[2]),
                                     double(counts[3])};
    out.push_back(argmax_class(c));
  }
  return out;
}

} // namespace qnlp
