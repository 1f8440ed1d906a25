#include <algorithm>
#include <cmath>
#include <numeric>

#include "qnlp/error.hpp"
#include "qnlp/trainer.hpp"

namespace qnlp {

std::string_view to_string(Algorithm a) {
  return a == Algorithm::spsa ? "spsa" : "nelder_mead";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
  if (text == "spsa") return Algorithm::spsa;
  if (text == "nelder_mead") return Algorithm::nelder_mead;
  return std::nullopt;
}

void OptimizerConfig::validate() const {
  if (!(a > 0) || !(c > 0)) throw Error(ErrorKind::Config, "SPSA gains a and c must be positive");
  if (!(alpha > 0 && alpha <= 1) || !(gamma > 0 && gamma <= 1))
    throw Error(ErrorKind::Config, "SPSA exponents alpha and gamma must lie in (0, 1]");
  if (A < 0) throw Error(ErrorKind::Config, "SPSA stability constant A must be non-negative");
  if (max_iterations < 0) throw Error(ErrorKind::Config, "max_iterations must be non-negative");
  if (patience < 1) throw Error(ErrorKind::Config, "patience must be positive");
  if (!(simplex_step > 0)) throw Error(ErrorKind::Config, "simplex_step must be positive");
}

double OptimizerConfig::a_k(int k) const { return a / std::pow(k + 1 + A, alpha); }
double OptimizerConfig::c_k(int k) const { return c / std::pow(k + 1, gamma); }

Eigen::VectorXd spsa_step(const Eigen::VectorXd& params, const Objective& objective, int k,
                          const OptimizerConfig& config, Rng& rng) {
  const Eigen::Index dim = params.size();
  Eigen::VectorXd delta(dim);
  for (Eigen::Index i = 0; i < dim; ++i) delta[i] = rng.rademacher();
  const double ck = config.c_k(k);
  const double plus = objective(params + ck * delta);
  const double minus = objective(params - ck * delta);
  // delta_i = +-1, so dividing by it is multiplying by it
  const Eigen::VectorXd grad = ((plus - minus) / (2.0 * ck)) * delta;
  return params - config.a_k(k) * grad;
}

// ---------------------------------------------------------------------------

NelderMead::NelderMead(const Eigen::VectorXd& start, Objective objective, double step)
    : objective_(std::move(objective)) {
  const Eigen::Index dim = start.size();
  vertices_.push_back(start);
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::VectorXd v = start;
    v[i] += step;
    vertices_.push_back(std::move(v));
  }
  for (const auto& v : vertices_) values_.push_back(eval(v));
  order_.resize(vertices_.size());
  sort();
}

double NelderMead::eval(const Eigen::VectorXd& x) {
  ++evaluations_;
  return objective_(x);
}

void NelderMead::sort() {
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::size_t a, std::size_t b) { return values_[a] < values_[b]; });
}

void NelderMead::iterate() {
  const std::size_t n = vertices_.size();
  if (n < 2) return;
  const std::size_t worst = order_.back();
  const std::size_t second = order_[n - 2];
  const std::size_t best_i = order_.front();

  Eigen::VectorXd centroid = Eigen::VectorXd::Zero(vertices_[0].size());
  for (std::size_t i = 0; i + 1 < n; ++i) centroid += vertices_[order_[i]];
  centroid /= static_cast<double>(n - 1);

  const Eigen::VectorXd reflected = centroid + (centroid - vertices_[worst]);
  const double fr = eval(reflected);
  if (fr < values_[best_i]) {
    const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - vertices_[worst]);
    const double fe = eval(expanded);
    if (fe < fr) {
      vertices_[worst] = expanded;
      values_[worst] = fe;
    } else {
      vertices_[worst] = reflected;
      values_[worst] = fr;
    }
  } else if (fr < values_[second]) {
    vertices_[worst] = reflected;
    values_[worst] = fr;
  } else {
    const bool outside = fr < values_[worst];
    const Eigen::VectorXd contracted = outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                                               : Eigen::VectorXd(centroid + 0.5 * (vertices_[worst] - centroid));
    const double fc = eval(contracted);
    if (fc < std::min(fr, values_[worst])) {
      vertices_[worst] = contracted;
      values_[worst] = fc;
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (i == best_i) continue;
        vertices_[i] = vertices_[best_i] + 0.5 * (vertices_[i] - vertices_[best_i]);
        values_[i] = eval(vertices_[i]);
      }
    }
  }
  sort();
}

} // namespace qnlp
