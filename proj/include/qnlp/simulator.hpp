#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "qnlp/circuit.hpp"
#include "qnlp/error.hpp"
#include "qnlp/rng.hpp"

namespace qnlp {

template <class Scalar>
using Amplitudes = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <class Scalar>
using Distribution = Eigen::Matrix<Scalar, 4, 1>;

/// Post-selection success probabilities below this count as annihilation.
inline constexpr double kZeroNormThreshold = 1e-300;

/// Dense n-qubit state. Basis index bit i holds qubit i.
template <class Scalar = double>
class QuantumState {
public:
  QuantumState() = default;
  explicit QuantumState(int n_qubits)
      : n_qubits_(n_qubits), amplitudes_(Amplitudes<Scalar>::Zero(Eigen::Index{1} << n_qubits)) {
    amplitudes_[0] = 1;
  }
  QuantumState(int n_qubits, Amplitudes<Scalar> amplitudes)
      : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != (Eigen::Index{1} << n_qubits))
      throw Error(ErrorKind::BadIndex, "amplitude count does not match qubit count");
  }

  int n_qubits() const { return n_qubits_; }
  const Amplitudes<Scalar>& amplitudes() const { return amplitudes_; }
  Amplitudes<Scalar>& amplitudes() { return amplitudes_; }
  Scalar squared_norm() const { return amplitudes_.squaredNorm(); }

private:
  int n_qubits_ = 0;
  Amplitudes<Scalar> amplitudes_;
};

template <class Scalar = double>
struct PostselectResult {
  QuantumState<Scalar> residual_state;
  Scalar success_probability = 0;
};

// ---------------------------------------------------------------------------
// In-place gate kernels on a raw amplitude vector; `bit` is the position of
// the qubit inside the index, not its circuit label.
// ---------------------------------------------------------------------------

namespace kernel {

template <class Scalar>
void single(Amplitudes<Scalar>& a, int bit, GateKind kind, Scalar angle) {
  using C = std::complex<Scalar>;
  const Eigen::Index stride = Eigen::Index{1} << bit;
  const Eigen::Index size = a.size();
  switch (kind) {
  case GateKind::H: {
    const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
    for (Eigen::Index base = 0; base < size; base += 2 * stride) {
      for (Eigen::Index i = base; i < base + stride; ++i) {
        const C x = a[i], y = a[i + stride];
        a[i] = r * (x + y);
        a[i + stride] = r * (x - y);
      }
    }
    break;
  }
  case GateKind::RX: {
    const Scalar c = std::cos(angle / 2), s = std::sin(angle / 2);
    const C mis(0, -s);
    for (Eigen::Index base = 0; base < size; base += 2 * stride) {
      for (Eigen::Index i = base; i < base + stride; ++i) {
        const C x = a[i], y = a[i + stride];
        a[i] = c * x + mis * y;
        a[i + stride] = mis * x + c * y;
      }
    }
    break;
  }
  case GateKind::RZ: {
    const C p0 = std::polar(Scalar(1), -angle / 2), p1 = std::polar(Scalar(1), angle / 2);
    for (Eigen::Index base = 0; base < size; base += 2 * stride) {
      for (Eigen::Index i = base; i < base + stride; ++i) {
        a[i] *= p0;
        a[i + stride] *= p1;
      }
    }
    break;
  }
  default:
    throw Error(ErrorKind::BadIndex, "two-qubit gate applied as single-qubit");
  }
}

template <class Scalar>
void controlled(Amplitudes<Scalar>& a, int control_bit, int target_bit, GateKind kind, Scalar angle) {
  using C = std::complex<Scalar>;
  const Eigen::Index cmask = Eigen::Index{1} << control_bit;
  const Eigen::Index tmask = Eigen::Index{1} << target_bit;
  const Eigen::Index size = a.size();
  if (kind == GateKind::CX) {
    for (Eigen::Index i = 0; i < size; ++i) {
      if ((i & cmask) && !(i & tmask)) std::swap(a[i], a[i | tmask]);
    }
  } else if (kind == GateKind::CRZ) {
    const C p0 = std::polar(Scalar(1), -angle / 2), p1 = std::polar(Scalar(1), angle / 2);
    for (Eigen::Index i = 0; i < size; ++i) {
      if (i & cmask) a[i] *= (i & tmask) ? p1 : p0;
    }
  } else {
    throw Error(ErrorKind::BadIndex, "single-qubit gate applied as controlled");
  }
}

/// Drops `bit` from the index, keeping only the half where it is 0.
template <class Scalar>
Amplitudes<Scalar> project_zero(const Amplitudes<Scalar>& a, int bit) {
  const Eigen::Index half = a.size() / 2;
  const Eigen::Index low = (Eigen::Index{1} << bit) - 1;
  Amplitudes<Scalar> out(half);
  for (Eigen::Index j = 0; j < half; ++j) out[j] = a[(j & low) | ((j & ~low) << 1)];
  return out;
}

} // namespace kernel

// ---------------------------------------------------------------------------
// Dense operations
// ---------------------------------------------------------------------------

/// Applies one gate; rotation angles resolve against `params`. Throws
/// BadIndex for out-of-range or coinciding qubits and unresolved slots.
template <class Scalar>
QuantumState<Scalar>& apply(QuantumState<Scalar>& state, const Gate& gate,
                            std::span<const double> params = {}) {
  const int n = state.n_qubits();
  if (gate.target < 0 || gate.target >= n)
    throw Error(ErrorKind::BadIndex, "target qubit " + std::to_string(gate.target));
  if (gate.param >= static_cast<int>(params.size()))
    throw Error(ErrorKind::BadIndex, "parameter slot " + std::to_string(gate.param));
  const auto angle = static_cast<Scalar>(gate.resolve(params));
  if (is_two_qubit(gate.kind)) {
    if (gate.control < 0 || gate.control >= n || gate.control == gate.target)
      throw Error(ErrorKind::BadIndex, "control qubit " + std::to_string(gate.control));
    kernel::controlled(state.amplitudes(), gate.control, gate.target, gate.kind, angle);
  } else {
    kernel::single(state.amplitudes(), gate.target, gate.kind, angle);
  }
  return state;
}

/// |<x|psi>|^2 where character i of `bits` is the value of qubit i.
template <class Scalar>
Scalar born_probability(const QuantumState<Scalar>& state, std::string_view bits) {
  if (static_cast<int>(bits.size()) != state.n_qubits())
    throw Error(ErrorKind::BadIndex, "bitstring length " + std::to_string(bits.size()) +
                                         " for " + std::to_string(state.n_qubits()) + " qubits");
  Eigen::Index index = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') index |= Eigen::Index{1} << i;
    else if (bits[i] != '0') throw Error(ErrorKind::BadIndex, "bitstring must be 0/1");
  }
  return std::norm(state.amplitudes()[index]);
}

/// Projects `qubits` onto |0>, without renormalizing. The residual keeps the
/// surviving qubits in ascending order.
template <class Scalar>
PostselectResult<Scalar> postselect_zero(const QuantumState<Scalar>& state, std::vector<int> qubits) {
  std::sort(qubits.begin(), qubits.end());
  qubits.erase(std::unique(qubits.begin(), qubits.end()), qubits.end());
  for (int q : qubits) {
    if (q < 0 || q >= state.n_qubits()) throw Error(ErrorKind::BadIndex, "qubit " + std::to_string(q));
  }
  Amplitudes<Scalar> amps = state.amplitudes();
  // highest first so lower bit positions stay valid
  for (auto it = qubits.rbegin(); it != qubits.rend(); ++it) amps = kernel::project_zero(amps, *it);
  PostselectResult<Scalar> out;
  out.success_probability = amps.squaredNorm();
  out.residual_state = QuantumState<Scalar>(state.n_qubits() - static_cast<int>(qubits.size()),
                                            std::move(amps));
  return out;
}

/// Outcome probabilities of a 2-qubit residual, renormalized. Entry k is the
/// outcome whose bitstring reads (first result qubit, second result qubit),
/// i.e. k = 2 * q0 + q1. Throws ZeroNorm below kZeroNormThreshold.
template <class Scalar>
Distribution<Scalar> distribution(const PostselectResult<Scalar>& result) {
  if (result.residual_state.n_qubits() != 2)
    throw Error(ErrorKind::BadIndex, "distribution needs a 2-qubit residual, got " +
                                         std::to_string(result.residual_state.n_qubits()));
  if (!(result.success_probability >= Scalar(kZeroNormThreshold)))
    throw Error(ErrorKind::ZeroNorm, "post-selection success probability is zero");
  const auto& a = result.residual_state.amplitudes();
  Distribution<Scalar> p;
  p << std::norm(a[0]), std::norm(a[2]), std::norm(a[1]), std::norm(a[3]);
  return p / p.sum();
}

/// Multinomial draw of `shots` outcomes by inverse CDF on uniform deviates.
template <class Scalar>
std::array<std::int64_t, 4> sample(const Distribution<Scalar>& p, std::int64_t shots,
                                   std::uint64_t seed) {
  std::array<std::int64_t, 4> counts{};
  Rng rng(seed);
  const double total = static_cast<double>(p.sum());
  for (std::int64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * total;
    double acc = 0;
    int k = 0;
    for (; k < 3; ++k) {
      acc += static_cast<double>(p[k]);
      if (u < acc) break;
    }
    // never land on a zero-probability trailing outcome through rounding
    while (k > 0 && p[k] == Scalar(0)) --k;
    ++counts[k];
  }
  return counts;
}

/// Runs the whole circuit on |0...0> over the full 2^n space.
template <class Scalar = double>
QuantumState<Scalar> simulate(const Circuit& circuit, std::span<const double> params) {
  QuantumState<Scalar> state(circuit.n_qubits);
  for (const auto& g : circuit.gates) apply(state, g, params);
  return state;
}

/// Dense route: simulate, post-select, then read the result distribution.
template <class Scalar = double>
Distribution<Scalar> run_dense(const Circuit& circuit, std::span<const double> params) {
  return distribution(postselect_zero(simulate<Scalar>(circuit, params), circuit.postselect_zero));
}

// ---------------------------------------------------------------------------
// Factored execution
// ---------------------------------------------------------------------------

/// Same semantics as simulate + postselect_zero, but the state is held as a
/// product of dense blocks. Untouched qubits stay out of the state, blocks
/// merge only when a two-qubit gate spans them, and a post-selected qubit is
/// projected out right after its last gate. Result qubits end in ascending
/// order in the residual, like postselect_zero.
template <class Scalar = double>
PostselectResult<Scalar> run_postselected(const Circuit& circuit, std::span<const double> params) {
  using Amps = Amplitudes<Scalar>;
  struct Block {
    std::vector<int> qubits; // qubits[bit] = circuit qubit
    Amps amps;
  };
  const int n = circuit.n_qubits;
  std::vector<int> last_use(n, -1);
  for (int i = 0; i < static_cast<int>(circuit.gates.size()); ++i) {
    const auto& g = circuit.gates[i];
    if (g.target < 0 || g.target >= n) throw Error(ErrorKind::BadIndex, "target out of range");
    last_use[g.target] = i;
    if (is_two_qubit(g.kind)) {
      if (g.control < 0 || g.control >= n || g.control == g.target)
        throw Error(ErrorKind::BadIndex, "control out of range");
      last_use[g.control] = i;
    }
    if (g.param >= static_cast<int>(params.size()))
      throw Error(ErrorKind::BadIndex, "parameter slot " + std::to_string(g.param));
  }
  std::vector<char> selected(n, 0);
  for (int q : circuit.postselect_zero) selected[q] = 1;

  std::vector<Block> blocks;
  std::vector<int> owner(n, -1);
  std::complex<Scalar> scale(1);

  auto activate = [&](int q) {
    if (owner[q] >= 0) return;
    Block b;
    b.qubits = {q};
    b.amps = Amps::Zero(2);
    b.amps[0] = 1;
    owner[q] = static_cast<int>(blocks.size());
    blocks.push_back(std::move(b));
  };
  auto bit_of = [&](int q) {
    const auto& qs = blocks[owner[q]].qubits;
    return static_cast<int>(std::find(qs.begin(), qs.end(), q) - qs.begin());
  };
  auto merge = [&](int into, int from) {
    Block& a = blocks[into];
    Block& b = blocks[from];
    const Eigen::Index na = a.amps.size();
    Amps merged(na * b.amps.size());
    for (Eigen::Index j = 0; j < b.amps.size(); ++j) merged.segment(j * na, na) = b.amps[j] * a.amps;
    a.amps = std::move(merged);
    for (int q : b.qubits) {
      a.qubits.push_back(q);
      owner[q] = into;
    }
    b.qubits.clear();
    b.amps = Amps();
  };
  auto drop = [&](int q) {
    Block& b = blocks[owner[q]];
    const int bit = bit_of(q);
    b.amps = kernel::project_zero(b.amps, bit);
    b.qubits.erase(b.qubits.begin() + bit);
    owner[q] = -2;
    if (b.qubits.empty()) {
      scale *= b.amps[0];
      b.amps = Amps();
    }
  };

  for (int i = 0; i < static_cast<int>(circuit.gates.size()); ++i) {
    const auto& g = circuit.gates[i];
    const auto angle = static_cast<Scalar>(g.resolve(params));
    activate(g.target);
    if (is_two_qubit(g.kind)) {
      activate(g.control);
      if (owner[g.control] != owner[g.target]) merge(owner[g.control], owner[g.target]);
      kernel::controlled(blocks[owner[g.target]].amps, bit_of(g.control), bit_of(g.target), g.kind,
                         angle);
      if (selected[g.control] && last_use[g.control] == i) drop(g.control);
    } else {
      kernel::single(blocks[owner[g.target]].amps, bit_of(g.target), g.kind, angle);
    }
    if (selected[g.target] && last_use[g.target] == i) drop(g.target);
  }

  // Surviving qubits, ascending; untouched ones are still |0>.
  std::vector<int> survivors;
  for (int q = 0; q < n; ++q) {
    if (selected[q]) continue;
    activate(q);
    survivors.push_back(q);
  }
  // Qubits post-selected but never used were |0>: nothing to do.
  int root = -1;
  for (int q : survivors) {
    if (root < 0) root = owner[q];
    else if (owner[q] != root) merge(root, owner[q]);
  }

  PostselectResult<Scalar> out;
  const int m = static_cast<int>(survivors.size());
  Amps residual(Eigen::Index{1} << m);
  if (root < 0) {
    residual[0] = scale;
  } else {
    const Block& b = blocks[root];
    std::vector<int> src_bit(m);
    for (int k = 0; k < m; ++k)
      src_bit[k] = static_cast<int>(std::find(b.qubits.begin(), b.qubits.end(), survivors[k]) -
                                    b.qubits.begin());
    for (Eigen::Index r = 0; r < residual.size(); ++r) {
      Eigen::Index src = 0;
      for (int k = 0; k < m; ++k)
        if (r & (Eigen::Index{1} << k)) src |= Eigen::Index{1} << src_bit[k];
      residual[r] = scale * b.amps[src];
    }
  }
  out.success_probability = residual.squaredNorm();
  out.residual_state = QuantumState<Scalar>(m, std::move(residual));
  return out;
}

/// Factored route to the result distribution; what the trainer uses.
template <class Scalar = double>
Distribution<Scalar> run_circuit(const Circuit& circuit, std::span<const double> params) {
  return distribution(run_postselected<Scalar>(circuit, params));
}

} // namespace qnlp
