#include "qnlp/contraction.hpp"

#include <complex>

#include <Eigen/Dense>

#include "qnlp/error.hpp"
#include "qnlp/simulator.hpp"

namespace qnlp {
namespace {

using Cd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

Mat2 one_qubit_matrix(GateKind kind, double angle) {
  const Cd i(0, 1);
  Mat2 m;
  switch (kind) {
  case GateKind::H:
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
  case GateKind::RX:
    m << std::cos(angle / 2), -i * std::sin(angle / 2), -i * std::sin(angle / 2), std::cos(angle / 2);
    return m;
  case GateKind::RZ:
    m << std::exp(-i * angle / 2.0), 0, 0, std::exp(i * angle / 2.0);
    return m;
  default:
    throw Error(ErrorKind::BadIndex, "not a single-qubit gate");
  }
}

// Full operator on k qubits, qubit q at index bit q. Built entry by entry from
// the definition so it shares nothing with the simulator kernels.
Eigen::MatrixXcd full_matrix(const Gate& g, int k, double angle) {
  const Eigen::Index dim = Eigen::Index{1} << k;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  if (!is_two_qubit(g.kind)) {
    const Mat2 u = one_qubit_matrix(g.kind, angle);
    for (Eigen::Index col = 0; col < dim; ++col) {
      const int in = (col >> g.target) & 1;
      for (int out = 0; out < 2; ++out) {
        const Eigen::Index row = (col & ~(Eigen::Index{1} << g.target)) | (Eigen::Index{out} << g.target);
        m(row, col) += u(out, in);
      }
    }
    return m;
  }
  // controlled-U: identity where control is 0, U on the target otherwise
  const Mat2 u = g.kind == GateKind::CX ? (Mat2() << 0, 1, 1, 0).finished()
                                        : one_qubit_matrix(GateKind::RZ, angle);
  for (Eigen::Index col = 0; col < dim; ++col) {
    if (!((col >> g.control) & 1)) {
      m(col, col) = 1;
      continue;
    }
    const int in = (col >> g.target) & 1;
    for (int out = 0; out < 2; ++out) {
      const Eigen::Index row = (col & ~(Eigen::Index{1} << g.target)) | (Eigen::Index{out} << g.target);
      m(row, col) += u(out, in);
    }
  }
  return m;
}

// Sums the diagonal x = y over two index positions, removing both.
Eigen::VectorXcd contract_pair(const Eigen::VectorXcd& t, int n, int bit_a, int bit_b) {
  const int lo = std::min(bit_a, bit_b), hi = std::max(bit_a, bit_b);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(Eigen::Index{1} << (n - 2));
  for (Eigen::Index r = 0; r < out.size(); ++r) {
    // re-insert zero bits at lo then hi
    Eigen::Index idx = r;
    idx = (idx & ((Eigen::Index{1} << lo) - 1)) | ((idx >> lo) << (lo + 1));
    idx = (idx & ((Eigen::Index{1} << hi) - 1)) | ((idx >> hi) << (hi + 1));
    const Eigen::Index both = (Eigen::Index{1} << lo) | (Eigen::Index{1} << hi);
    out[r] = t[idx] + t[idx | both];
  }
  return out;
}

} // namespace

Eigen::VectorXcd word_state(int k_qubits, int depth, std::span<const double> angles) {
  std::vector<int> slots(angles.size());
  for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = static_cast<int>(i);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << k_qubits);
  psi[0] = 1;
  for (const auto& g : word_ansatz(k_qubits, depth, slots)) {
    psi = full_matrix(g, k_qubits, g.resolve(angles)) * psi;
  }
  return psi;
}

Eigen::Vector4d contract_oracle(const Diagram& diagram, const ParameterStore& store,
                                const QubitLayout& layout) {
  // Tensor of all word states; global qubit q sits at index bit q because
  // boxes own contiguous qubit ranges in reading order.
  Eigen::VectorXcd t = Eigen::VectorXcd::Ones(1);
  int n = 0;
  for (int b = 0; b < static_cast<int>(diagram.boxes.size()); ++b) {
    const auto& box = diagram.boxes[b];
    const int k = static_cast<int>(layout.box_qubits(diagram, b).size());
    const Eigen::VectorXcd w = word_state(k, store.config().depth, store.angles(box.token, box.pos));
    Eigen::VectorXcd next(t.size() * w.size());
    for (Eigen::Index j = 0; j < w.size(); ++j) next.segment(j * t.size(), t.size()) = w[j] * t;
    t = std::move(next);
    n += k;
  }
  if (n != layout.n_qubits) throw Error(ErrorKind::WidthMismatch, "layout does not match diagram");

  // live[bit] = global qubit currently at that index position
  std::vector<int> live(n);
  for (int q = 0; q < n; ++q) live[q] = q;
  auto position = [&](int q) {
    return static_cast<int>(std::find(live.begin(), live.end(), q) - live.begin());
  };
  for (const auto& [wa, wb] : diagram.cups.pairs) {
    const auto& qa = layout.wire_qubits[wa];
    const auto& qb = layout.wire_qubits[wb];
    if (qa.size() != qb.size()) throw Error(ErrorKind::WidthMismatch, "cup over unequal wires");
    const std::size_t q = qa.size();
    for (std::size_t i = 0; i < q; ++i) {
      const int a = qa[i], b = qb[q - 1 - i];
      const int pa = position(a), pb = position(b);
      t = contract_pair(t, static_cast<int>(live.size()), pa, pb);
      live.erase(live.begin() + std::max(pa, pb));
      live.erase(live.begin() + std::min(pa, pb));
    }
  }

  const auto& s = layout.wire_qubits[diagram.sentence_wire];
  if (live.size() != 2 || live[0] != s[0] || live[1] != s[1])
    throw Error(ErrorKind::WidthMismatch, "contraction left the wrong open wires");
  const double norm2 = t.squaredNorm();
  if (!(norm2 >= kZeroNormThreshold)) throw Error(ErrorKind::ZeroNorm, "contraction is zero");
  Eigen::Vector4d p;
  p << std::norm(t[0]), std::norm(t[2]), std::norm(t[1]), std::norm(t[3]);
  return p / p.sum();
}

} // namespace qnlp
