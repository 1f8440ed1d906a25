#include <chrono>
#include <functional>
#include <numbers>

#include "doctest.h"
#include "qnlp/compiler.hpp"
#include "qnlp/error.hpp"
#include "qnlp/simulator.hpp"
#include "support.hpp"

using namespace qnlp;
using C = std::complex<double>;

namespace {

constexpr double pi = std::numbers::pi;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

Gate lit(GateKind k, int target, double angle = 0, int control = -1) { return {k, target, control, -1, angle}; }

QuantumState<double> random_state(int n, std::mt19937_64& g) {
  std::normal_distribution<double> d;
  Amplitudes<double> a(Eigen::Index{1} << n);
  for (auto& x : a) x = C(d(g), d(g));
  return QuantumState<double>(n, a / a.norm());
}

} // namespace

TEST_CASE("single gates on basis states") {
  SUBCASE("H") {
    QuantumState<double> s(1);
    apply(s, lit(GateKind::H, 0));
    CHECK(std::abs(s.amplitudes()[0] - 1 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(s.amplitudes()[1] - 1 / std::sqrt(2.0)) < 1e-15);
  }
  SUBCASE("RX(pi) flips with a -i phase") {
    QuantumState<double> s(1);
    apply(s, lit(GateKind::RX, 0, pi));
    CHECK(std::abs(s.amplitudes()[1] - C(0, -1)) < 1e-15);
    CHECK(std::abs(s.amplitudes()[0]) < 1e-15);
  }
  SUBCASE("RZ phases") {
    QuantumState<double> s(1);
    apply(s, lit(GateKind::H, 0));
    apply(s, lit(GateKind::RZ, 0, 0.3));
    CHECK(std::abs(s.amplitudes()[0] - std::exp(C(0, -0.15)) / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(s.amplitudes()[1] - std::exp(C(0, 0.15)) / std::sqrt(2.0)) < 1e-15);
  }
  SUBCASE("CX flips the target when the control is set") {
    QuantumState<double> s(2);
    apply(s, lit(GateKind::RX, 0, pi)); // q0 = 1
    apply(s, lit(GateKind::CX, 1, 0, 0));
    CHECK(born_probability(s, "11") == doctest::Approx(1.0));
    QuantumState<double> t(2);
    apply(t, lit(GateKind::RX, 1, pi)); // q1 = 1, control q0 = 0
    apply(t, lit(GateKind::CX, 1, 0, 0));
    CHECK(born_probability(t, "01") == doctest::Approx(1.0));
  }
  SUBCASE("CRZ acts only under the control") {
    QuantumState<double> s(2);
    apply(s, lit(GateKind::H, 0));
    apply(s, lit(GateKind::CRZ, 1, 0.8, 0));
    CHECK(std::abs(s.amplitudes()[0] - 1 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(s.amplitudes()[1] - std::exp(C(0, -0.4)) / std::sqrt(2.0)) < 1e-15);
  }
}

TEST_CASE("Born probabilities read qubit i from character i") {
  QuantumState<double> s(3);
  apply(s, lit(GateKind::RX, 2, pi));
  CHECK(born_probability(s, "001") == doctest::Approx(1.0));
  CHECK(born_probability(s, "100") == 0.0);
  apply(s, lit(GateKind::H, 0));
  CHECK(born_probability(s, "101") == doctest::Approx(0.5));
  CHECK(kind_of([&] { born_probability(s, "10"); }) == ErrorKind::BadIndex);
  CHECK(kind_of([&] { born_probability(s, "1x1"); }) == ErrorKind::BadIndex);
}

TEST_CASE("post-selection and the result distribution") {
  SUBCASE("unnormalized projection") {
    QuantumState<double> s(3);
    apply(s, lit(GateKind::H, 0));
    const auto r = postselect_zero(s, {0});
    CHECK(r.success_probability == doctest::Approx(0.5));
    CHECK(r.residual_state.n_qubits() == 2);
    CHECK(std::abs(r.residual_state.amplitudes()[0] - 1 / std::sqrt(2.0)) < 1e-15);
  }
  SUBCASE("outcome ordering: q0 is the first bit") {
    for (int cls = 0; cls < 4; ++cls) {
      const std::string bits(bitstring(emotion_from_index(cls)));
      QuantumState<double> s(2);
      for (int q = 0; q < 2; ++q)
        if (bits[q] == '1') apply(s, lit(GateKind::RX, q, pi));
      const auto p = distribution(postselect_zero(s, {}));
      CHECK(p[cls] == doctest::Approx(1.0));
    }
  }
  SUBCASE("renormalized after post-selection") {
    QuantumState<double> s(3);
    apply(s, lit(GateKind::H, 0));
    apply(s, lit(GateKind::H, 2));
    apply(s, lit(GateKind::CX, 1, 0, 2)); // q1 copies q2
    const auto p = distribution(postselect_zero(s, {0}));
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[3] == doctest::Approx(0.5));
  }
  SUBCASE("annihilation") {
    Amplitudes<double> a = Amplitudes<double>::Zero(8);
    a[1] = 1; // q0 = 1
    const auto r = postselect_zero(QuantumState<double>(3, a), {0});
    CHECK(r.success_probability == 0.0);
    CHECK(kind_of([&] { distribution(r); }) == ErrorKind::ZeroNorm);
  }
  SUBCASE("only two survivors make a distribution") {
    QuantumState<double> s(3);
    CHECK(kind_of([&] { distribution(postselect_zero(s, {})); }) == ErrorKind::BadIndex);
  }
}

TEST_CASE("sampling") {
  Distribution<double> certain(1, 0, 0, 0);
  CHECK(sample(certain, 100, 1) == std::array<std::int64_t, 4>{100, 0, 0, 0});
  Distribution<double> last(0, 0, 0, 1);
  CHECK(sample(last, 50, 1) == std::array<std::int64_t, 4>{0, 0, 0, 50});
  Distribution<double> uniform(0.25, 0.25, 0.25, 0.25);
  const auto counts = sample(uniform, 4000, 7);
  const double sigma = std::sqrt(4000 * 0.25 * 0.75);
  for (auto c : counts) CHECK(std::abs(c - 1000.0) < 5 * sigma);
  CHECK(sample(uniform, 4000, 7) == counts);
}

TEST_CASE("gates are unitary and compose") {
  std::mt19937_64 g(1);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_state(4, g);
    for (const auto& gate : test::random_circuit(4, 30, g).gates) apply(s, gate);
    CHECK(s.squared_norm() == doctest::Approx(1.0).epsilon(1e-12));
  }

  auto same = [](const QuantumState<double>& a, const QuantumState<double>& b) {
    return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff() < 1e-12;
  };
  const auto psi = random_state(3, g);
  SUBCASE("H and CX are involutions") {
    auto s = psi;
    apply(s, lit(GateKind::H, 1));
    apply(s, lit(GateKind::H, 1));
    CHECK(same(s, psi));
    apply(s, lit(GateKind::CX, 2, 0, 0));
    apply(s, lit(GateKind::CX, 2, 0, 0));
    CHECK(same(s, psi));
  }
  SUBCASE("rotation angles add") {
    for (auto k : {GateKind::RX, GateKind::RZ, GateKind::CRZ}) {
      auto a = psi, b = psi;
      const int control = k == GateKind::CRZ ? 2 : -1;
      apply(a, lit(k, 1, 0.4, control));
      apply(a, lit(k, 1, 1.1, control));
      apply(b, lit(k, 1, 1.5, control));
      CHECK(same(a, b));
    }
  }
  SUBCASE("HZH = X up to phase") {
    auto a = psi, b = psi;
    apply(a, lit(GateKind::H, 0));
    apply(a, lit(GateKind::RZ, 0, pi));
    apply(a, lit(GateKind::H, 0));
    apply(b, lit(GateKind::RX, 0, pi));
    CHECK(same(a, b));
  }
}

TEST_CASE("post-selection is linear and flips select the ones") {
  std::mt19937_64 g(3);
  const auto a = random_state(4, g), b = random_state(4, g);
  const C alpha(0.3, -0.2), beta(-1.1, 0.5);
  const QuantumState<double> mix(4, alpha * a.amplitudes() + beta * b.amplitudes());
  const std::vector<int> sel{1, 3};
  const auto lhs = postselect_zero(mix, sel).residual_state.amplitudes();
  const auto rhs = (alpha * postselect_zero(a, sel).residual_state.amplitudes() +
                    beta * postselect_zero(b, sel).residual_state.amplitudes())
                       .eval();
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);

  // Flipping q1 and q3 with RX(pi) (each a -i X) then keeping zeros keeps the
  // amplitudes where q1 = q3 = 1, times (-i)^2.
  auto flipped = a;
  apply(flipped, lit(GateKind::RX, 1, pi));
  apply(flipped, lit(GateKind::RX, 3, pi));
  const auto r = postselect_zero(flipped, sel).residual_state.amplitudes();
  for (int idx = 0; idx < 4; ++idx) {
    const int q0 = idx & 1, q2 = idx >> 1;
    const int full = q0 | (1 << 1) | (q2 << 2) | (1 << 3);
    CHECK(std::abs(r[idx] - (-1.0) * a.amplitudes()[full]) < 1e-12);
  }
}

TEST_CASE("dense simulator matches the reference operator products") {
  std::mt19937_64 g(5);
  for (int trial = 0; trial < 25; ++trial) {
    const auto c = test::random_circuit(5, 40, g);
    const auto psi = simulate<double>(c, {});
    const auto ref = test::reference_state(c, {});
    CHECK((psi.amplitudes() - ref).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("factored execution matches the dense route") {
  std::mt19937_64 g(6);
  for (int trial = 0; trial < 50; ++trial) {
    auto c = test::random_circuit(6, 40, g);
    c.postselect_zero = {0, 2, 3, 5};
    const auto dense = postselect_zero(simulate<double>(c, {}), c.postselect_zero);
    const auto fact = run_postselected<double>(c, {});
    CHECK((dense.residual_state.amplitudes() - fact.residual_state.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(fact.success_probability == doctest::Approx(dense.success_probability).epsilon(1e-12));
  }
  SUBCASE("idle qubits and a never-touched post-selected qubit") {
    Circuit c;
    c.n_qubits = 4;
    c.gates = {lit(GateKind::H, 1)};
    c.postselect_zero = {0, 1};
    const auto fact = run_postselected<double>(c, {});
    CHECK(fact.success_probability == doctest::Approx(0.5));
    CHECK(distribution(fact)[0] == doctest::Approx(1.0));
  }
}

TEST_CASE("bad indices") {
  QuantumState<double> s(2);
  CHECK(kind_of([&] { apply(s, lit(GateKind::H, 2)); }) == ErrorKind::BadIndex);
  CHECK(kind_of([&] { apply(s, lit(GateKind::CX, 1, 0, 1)); }) == ErrorKind::BadIndex);
  CHECK(kind_of([&] { apply(s, lit(GateKind::CX, 1, 0, -1)); }) == ErrorKind::BadIndex);
  CHECK(kind_of([&] { apply(s, Gate{GateKind::RZ, 0, -1, 4}); }) == ErrorKind::BadIndex);
  CHECK(kind_of([&] { postselect_zero(s, {2}); }) == ErrorKind::BadIndex);
  Circuit c;
  c.n_qubits = 2;
  c.gates = {lit(GateKind::H, 3)};
  CHECK(kind_of([&] { run_postselected<double>(c, {}); }) == ErrorKind::BadIndex);
}

TEST_CASE("single precision instantiation") {
  std::mt19937_64 g(8);
  auto c = test::random_circuit(4, 30, g);
  c.postselect_zero = {1, 2};
  const auto ps = postselect_zero(simulate<double>(c, {}), c.postselect_zero);
  if (ps.success_probability > 1e-3) {
    const auto d = run_dense<double>(c, {});
    const auto f = run_dense<float>(c, {});
    CHECK((d.cast<float>() - f).cwiseAbs().maxCoeff() < 1e-4f);
  }
  const auto psi = simulate<float>(c, {});
  CHECK(psi.squared_norm() == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("a 14-qubit sentence circuit runs densely in under 100 ms") {
  const auto lex = test::paper_lexicon();
  const auto store = init_parameters(vocabulary(lex), AnsatzConfig{}, 2);
  const auto c = compile(build_diagram({"furious", "neighbour", "attack", "child"}, Template::parse("ADJ-N-TV-N")), store);
  REQUIRE(c.n_qubits == 14);
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = run_dense<double>(c, test::view(store.values()));
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("dense 14-qubit run: " << ms << " ms");
  CHECK(ms < 100.0);
  CHECK(p.sum() == doctest::Approx(1.0));
  CHECK((run_circuit<double>(c, test::view(store.values())) - p).cwiseAbs().maxCoeff() < 1e-12);
}
