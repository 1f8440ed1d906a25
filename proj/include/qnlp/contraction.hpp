#pragma once

#include <Eigen/Core>

#include "qnlp/compiler.hpp"
#include "qnlp/diagram.hpp"

namespace qnlp {

/// Sentence meaning by direct tensor contraction, independent of the cup
/// lowering and of the gate kernels used by the simulator.
///
/// Each word's state is obtained by multiplying full 2^k x 2^k gate matrices
/// of its ansatz onto |0...0>. The word states are tensored in wire order
/// and every cup contracts its qubit pairs (nested pairing, as in
/// lower_cup) with the unnormalized effect sum_x <xx|. The surviving two
/// qubits of the sentence wire are renormalized into outcome probabilities
/// indexed as 2 * q0 + q1.
///
/// Throws MissingParameters for a word without angles and ZeroNorm when the
/// contraction annihilates the state.
Eigen::Vector4d contract_oracle(const Diagram& diagram, const ParameterStore& store,
                                const QubitLayout& layout);

/// State of a k-qubit word ansatz, by dense matrix products.
Eigen::VectorXcd word_state(int k_qubits, int depth, std::span<const double> angles);

} // namespace qnlp
