#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qnlp/commands.hpp"
#include "qnlp/error.hpp"
#include "support.hpp"

using namespace qnlp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("qnlp_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig config_from(const std::string& text) {
  std::istringstream in(text);
  return RunConfig::parse(in, "test.conf", QNLP_DATA_DIR);
}

RunConfig quick_config(int iterations) {
  return config_from("lexicon = lexicon.tsv\nseed = 3\nspsa_a = 10\nmax_iterations = " +
                     std::to_string(iterations) + "\nrecord_wall_time = false\n");
}

} // namespace

TEST_CASE("shipped config loads") {
  const auto c = RunConfig::load(test::data_path("default.conf"));
  CHECK(c.templates.size() == 4);
  CHECK(c.label_scope == LabelScope::subject_verb);
  CHECK(c.ansatz == AnsatzConfig{2, 2});
  CHECK(c.optimizer.max_iterations == 2000);
  CHECK(c.test_size == 180);
  CHECK(c.shots == 0);
  CHECK(c.load_lexicon().size() == 24);
}

TEST_CASE("config errors name the file and line") {
  auto message = [](const std::string& text) {
    try {
      config_from(text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Config);
      return std::string(e.what());
    }
    FAIL("accepted: " << text);
    return std::string();
  };
  CHECK(message("lexicon = lexicon.tsv\ndepth = deep\n").find("test.conf:2") != std::string::npos);
  CHECK(message("lexicon = lexicon.tsv\n\nfoo = 1\n").find("test.conf:3") != std::string::npos);
  CHECK(message("lexicon = lexicon.tsv\noptimizer = cobyla\n").find("test.conf:2") != std::string::npos);
  CHECK(message("lexicon = lexicon.tsv\nmode = shots 0\n").find("test.conf:2") != std::string::npos);
  CHECK(message("lexicon = lexicon.tsv\nqubits_per_s = 3\n").find("test.conf:2") != std::string::npos);
  CHECK(message("lexicon = missing.tsv\n").find("missing.tsv") != std::string::npos);
  CHECK(message("depth = 2\n").find("lexicon") != std::string::npos);

  const auto shots = config_from("lexicon = lexicon.tsv\nmode = shots 1024\n");
  CHECK(shots.shots == 1024);
  CHECK_THROWS_AS(RunConfig::load("/nonexistent/qnlp.conf"), Error);
}

TEST_CASE("generate is byte-deterministic") {
  TempDir a("gen_a"), b("gen_b");
  const auto c = quick_config(1);
  std::ostringstream log;
  const auto data = command_generate(c, a.path, log);
  command_generate(c, b.path, log);
  CHECK(data.size() == 837);
  CHECK(slurp(a.path / kDatasetFile) == slurp(b.path / kDatasetFile));
  CHECK(log.str().find("candidates: 1269") != std::string::npos);
  CHECK(read_dataset_file((a.path / kDatasetFile).string()) == data);
}

TEST_CASE("train, then evaluate") {
  TempDir gen("pipe_gen"), one("pipe_one"), two("pipe_two");
  const auto c = quick_config(30);
  std::ostringstream log;
  command_generate(c, gen.path, log);
  const auto dataset = gen.path / kDatasetFile;

  const auto r1 = command_train(c, dataset, one.path, log);
  command_train(c, dataset, two.path, log);
  const auto csv = slurp(one.path / kLossFile);
  CHECK(csv == slurp(two.path / kLossFile));
  CHECK(csv.rfind("iteration,loss,wall_time_s\n0,", 0) == 0);
  CHECK(r1.curve.size() == 31);
  CHECK(slurp(one.path / kCheckpointFile) == slurp(two.path / kCheckpointFile));

  const auto m = command_evaluate(c, one.path / kCheckpointFile, dataset, one.path, log);
  CHECK(m.count == 180);
  CHECK(fs::exists(one.path / kMetricsFile));
  CHECK(slurp(one.path / kConfusionFile).rfind("truth,", 0) == 0);

  SUBCASE("a checkpoint from another ansatz is refused") {
    auto other = c;
    other.ansatz.depth = 1;
    try {
      command_evaluate(other, one.path / kCheckpointFile, dataset, one.path, log);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::CheckpointMismatch);
    }
  }
  SUBCASE("baseline on the same partition") {
    const auto b = command_baseline(c, dataset, gen.path, log);
    CHECK(b.metrics.count == 180);
    CHECK(b.metrics.accuracy >= 0.9);
  }
}

TEST_CASE("partition follows the config seed") {
  const auto data = generate_dataset(test::paper_lexicon(), default_templates());
  auto c = quick_config(1);
  const auto a = partition(c, data);
  CHECK(a.test.size() == 180);
  CHECK(partition(c, data).test == a.test);
  c.seed = 4;
  CHECK(partition(c, data).test != a.test);
}

TEST_CASE("inspect") {
  const auto c = quick_config(1);
  const auto text = command_inspect(c, {"furious", "neighbour", "attacks", "child"});
  CHECK(text.find("template: ADJ-N-TV-N") != std::string::npos);
  CHECK(text.find("label: anger") != std::string::npos);
  CHECK(text.find("qubits: 14") != std::string::npos);
  CHECK(text.find("postselect_zero (12)") != std::string::npos);
  CHECK(text.find("result qubits: q8 q9") != std::string::npos);

  const auto iv = command_inspect(c, {"child", "cries"});
  CHECK(iv.find("template: N-IV") != std::string::npos);
  CHECK(iv.find("qubits: 6") != std::string::npos);

  CHECK(command_inspect(c, {"cheerful", "child", "cry"}).find("label: none") != std::string::npos);

  try {
    command_inspect(c, {"furios", "neighbour", "attack", "child"});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownToken);
    CHECK(std::string(e.what()).find("furious") != std::string::npos);
  }
  CHECK_THROWS_AS(command_inspect(c, {"child"}), Error);
  CHECK_THROWS_AS(command_inspect(c, {"child", "boy"}), Error);
}

TEST_CASE("lemmatize") {
  const auto lex = test::paper_lexicon();
  CHECK(lemmatize("cries", lex) == "cry");
  CHECK(lemmatize("attacks", lex) == "attack");
  CHECK(lemmatize("Boy", lex) == "boy");
  CHECK(lemmatize("amuses", lex) == "amuse");
  CHECK(lemmatize("zebras", lex) == "zebras");
}

TEST_CASE("initial loss of an untrained store") {
  // Class-balanced data, parameters from the run's Init stream. Random
  // outcome distributions sit above ln 4 on average (Jensen); for
  // Porter-Thomas statistics E[-ln p] = 1 + 1/2 + 1/3.
  const auto lex = test::paper_lexicon();
  std::vector<LabeledSentence> balanced;
  std::array<int, kNumClasses> taken{};
  for (const auto& s : generate_dataset(lex, default_templates()))
    if (taken[class_index(s.label)]++ < 162) balanced.push_back(s);
  REQUIRE(balanced.size() == 4 * 162);

  double sum = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto store = init_parameters(vocabulary(lex), AnsatzConfig{}, stream_seed(seed, Stream::Init));
    const double loss = cross_entropy(store, balanced);
    CAPTURE(seed);
    CHECK(std::isfinite(loss));
    CHECK(loss > 1.0);
    CHECK(loss < 3.5);
    sum += loss;
  }
  const double mean = sum / 20;
  CHECK(mean == doctest::Approx(2.04336).epsilon(1e-5));
  CHECK(mean > std::log(4.0));
  CHECK(std::abs(mean - (1 + 1.0 / 2 + 1.0 / 3)) < 0.25);
}
