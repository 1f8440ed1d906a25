#include <functional>
#include <numbers>

#include "doctest.h"
#include "qnlp/compiler.hpp"
#include "qnlp/contraction.hpp"
#include "qnlp/diagram.hpp"
#include "qnlp/error.hpp"
#include "qnlp/simulator.hpp"
#include "support.hpp"

using namespace qnlp;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

} // namespace

TEST_CASE("diagram of an adjective-noun-verb-noun sentence") {
  const auto d = build_diagram({"furious", "neighbour", "attack", "child"}, Template::parse("ADJ-N-TV-N"));
  CHECK(d.boxes.size() == 4);
  CHECK(d.cups.pairs.size() == 3);
  CHECK(d.wire_count() == 7);
  CHECK(d.sentence_wire == 4);
  CHECK(d.wire_types()[d.sentence_wire] == SimpleType{Base::s, 0});
  CHECK(d.wire_owner() == std::vector<int>{0, 0, 1, 2, 2, 2, 3});
  CHECK(d.first_wire(2) == 3);
  CHECK(d.boxes[2].pos == PartOfSpeech::transitive_verb);
}

TEST_CASE("diagram of a noun-verb sentence") {
  const auto d = build_diagram({"child", "cry"}, Template::parse("N-IV"));
  CHECK(d.boxes.size() == 2);
  CHECK(d.cups.pairs.size() == 1);
  CHECK(d.sentence_wire == 2);
}

TEST_CASE("diagram construction rejects misfits") {
  const auto t = Template::parse("N-TV-N");
  CHECK(kind_of([&] { build_diagram({"child", "attack"}, t); }) == ErrorKind::TemplateMismatch);
  CHECK(kind_of([&] { build_diagram(std::vector<std::string>{}, t); }) == ErrorKind::TemplateMismatch);
  const LabeledSentence wrong{{"child", "attack", "boy"}, "ADJ-N-IV", Emotion::anger};
  CHECK(kind_of([&] { build_diagram(wrong, t); }) == ErrorKind::TemplateMismatch);
}

TEST_CASE("render shows boxes, wire types and the open sentence wire") {
  const auto d = build_diagram({"furious", "neighbour", "attack", "child"}, Template::parse("ADJ-N-TV-N"));
  const auto pic = render(d);
  for (const char* s : {"[furious", "[neighbour", "[attack", "[child", "n^r", "n^l", "\\___"})
    CHECK(pic.find(s) != std::string::npos);
  // last non-empty line carries only the sentence wire
  auto end = pic.find_last_not_of(" \n");
  auto start = pic.rfind('\n', end);
  auto last = pic.substr(start + 1, end - start);
  CHECK(last.find_first_not_of(' ') == last.size() - 1);
  CHECK(last.back() == 's');
}

TEST_CASE("contraction oracle") {
  const auto lex = test::paper_lexicon();
  const AnsatzConfig cfg;

  SUBCASE("all-zero angles leave every word in |0..0> and the sentence in class 00") {
    // With theta = 0 each layer is H H = I, and sum_x <xx| on |00> gives 1.
    const ParameterStore store(vocabulary(lex), cfg);
    const auto d = build_diagram({"child", "cry"}, Template::parse("N-IV"));
    const auto layout = QubitLayout::allocate(d, cfg.qubits_per_n);
    const auto p = contract_oracle(d, store, layout);
    CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.tail<3>().norm() < 1e-12);
    const auto circuit = compile(d, store, layout);
    const auto q = run_dense<double>(circuit, test::view(store.values()));
    CHECK((p - q).cwiseAbs().maxCoeff() < 1e-9);
  }

  SUBCASE("random angles: a distribution matching the simulator") {
    const auto store = init_parameters(vocabulary(lex), cfg, 11);
    for (const auto& t : default_templates()) {
      const auto data = generate_dataset(lex, {t});
      const auto d = build_diagram(data[data.size() / 2], t);
      const auto layout = QubitLayout::allocate(d, cfg.qubits_per_n);
      const auto p = contract_oracle(d, store, layout);
      CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(p.minCoeff() >= 0.0);
      const auto q = run_dense<double>(compile(d, store, layout), test::view(store.values()));
      CHECK((p - q).cwiseAbs().maxCoeff() < 1e-9);
    }
  }

  SUBCASE("missing parameters") {
    const ParameterStore store({{"child", PartOfSpeech::noun}}, cfg);
    const auto d = build_diagram({"child", "cry"}, Template::parse("N-IV"));
    const auto layout = QubitLayout::allocate(d, cfg.qubits_per_n);
    CHECK(kind_of([&] { contract_oracle(d, store, layout); }) == ErrorKind::MissingParameters);
    CHECK(kind_of([&] { compile(d, store, layout); }) == ErrorKind::MissingParameters);
  }
}

TEST_CASE("word_state of a 2-qubit depth-1 ansatz by hand") {
  // H H |00> = |++>; CRZ(t) with control q0: phases e^{-it/2}, e^{+it/2} on |q0=1, q1=0/1>.
  const double t = 0.7;
  const auto psi = word_state(2, 1, std::vector<double>{t});
  const std::complex<double> i(0, 1);
  // index bit 0 = q0
  CHECK(std::abs(psi[0] - 0.5) < 1e-14);
  CHECK(std::abs(psi[2] - 0.5) < 1e-14);
  CHECK(std::abs(psi[1] - 0.5 * std::exp(-i * t / 2.0)) < 1e-14);
  CHECK(std::abs(psi[3] - 0.5 * std::exp(i * t / 2.0)) < 1e-14);
}
