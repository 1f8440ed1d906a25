#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qnlp/circuit.hpp"
#include "qnlp/grammar.hpp"

namespace qnlp::test {

// The experiment vocabulary, written out independently of data/lexicon.tsv.
inline Lexicon paper_lexicon() {
  using P = PartOfSpeech;
  using E = Emotion;
  Lexicon lex;
  for (const char* n : {"neighbour", "child", "boy"}) lex.add({n, P::noun, std::nullopt});
  const std::vector<std::pair<const char*, std::optional<E>>> adjectives = {
      {"anxious", E::fear},        {"ecstatic", E::happiness}, {"irritated", E::anger},
      {"distressed", E::sadness},  {"blissful", E::happiness}, {"furious", E::anger},
      {"petrified", E::fear},      {"frightened", E::fear},    {"miserable", E::sadness},
      {"young", std::nullopt},     {"blind", std::nullopt},    {"cheerful", E::happiness}};
  for (const auto& [w, e] : adjectives) lex.add({w, P::adjective, e});
  const std::vector<std::pair<const char*, E>> tv = {{"attack", E::anger},
                                                     {"scare", E::fear},
                                                     {"anger", E::anger},
                                                     {"amuse", E::happiness},
                                                     {"demoralise", E::sadness}};
  for (const auto& [w, e] : tv) lex.add({w, P::transitive_verb, e});
  const std::vector<std::pair<const char*, E>> iv = {
      {"cry", E::sadness}, {"laugh", E::happiness}, {"dance", E::happiness}, {"scream", E::anger}};
  for (const auto& [w, e] : iv) lex.add({w, P::intransitive_verb, e});
  return lex;
}

// Reference operator of one gate on n qubits, assembled as a Kronecker
// product of 2x2 factors with qubit 0 as the least significant one.
inline Eigen::MatrixXcd kron_chain(const std::vector<Eigen::Matrix2cd>& factors) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Ones(1, 1);
  for (const auto& f : factors) {
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) next.block(r * m.rows(), c * m.cols(), m.rows(), m.cols()) = f(r, c) * m;
    m = std::move(next);
  }
  return m;
}

inline Eigen::Matrix2cd gate_matrix(GateKind kind, double t) {
  using C = std::complex<double>;
  const C i(0, 1);
  Eigen::Matrix2cd u;
  switch (kind) {
  case GateKind::H: u << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), -1 / std::sqrt(2.0); break;
  case GateKind::RX: u << std::cos(t / 2), -i * std::sin(t / 2), -i * std::sin(t / 2), std::cos(t / 2); break;
  case GateKind::RZ:
  case GateKind::CRZ: u << std::exp(-i * t / 2.0), 0, 0, std::exp(i * t / 2.0); break;
  case GateKind::CX: u << 0, 1, 1, 0; break;
  }
  return u;
}

inline Eigen::MatrixXcd reference_operator(const Gate& g, int n, double angle) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  std::vector<Eigen::Matrix2cd> f(n, id);
  if (!is_two_qubit(g.kind)) {
    f[g.target] = gate_matrix(g.kind, angle);
    return kron_chain(f);
  }
  Eigen::Matrix2cd p0 = Eigen::Matrix2cd::Zero(), p1 = Eigen::Matrix2cd::Zero();
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  f[g.control] = p0;
  Eigen::MatrixXcd m = kron_chain(f);
  f[g.control] = p1;
  f[g.target] = gate_matrix(g.kind, angle);
  return m + kron_chain(f);
}

inline Eigen::VectorXcd reference_state(const Circuit& c, std::span<const double> params) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << c.n_qubits);
  psi[0] = 1;
  for (const auto& g : c.gates) psi = reference_operator(g, c.n_qubits, g.resolve(params)) * psi;
  return psi;
}

// Random circuit over every gate kind with literal angles.
inline Circuit random_circuit(int n, int gates, std::mt19937_64& g) {
  std::uniform_int_distribution<int> kind(0, 4), qubit(0, n - 1);
  std::uniform_real_distribution<double> angle(-6.3, 6.3);
  Circuit c;
  c.n_qubits = n;
  for (int i = 0; i < gates; ++i) {
    Gate gate;
    gate.kind = static_cast<GateKind>(kind(g));
    gate.target = qubit(g);
    if (is_two_qubit(gate.kind)) {
      do gate.control = qubit(g);
      while (gate.control == gate.target);
    }
    if (is_parameterized(gate.kind)) gate.angle = angle(g);
    c.gates.push_back(gate);
  }
  return c;
}

inline std::span<const double> view(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

inline std::string data_path(const std::string& name) { return std::string(QNLP_DATA_DIR) + "/" + name; }

} // namespace qnlp::test
