// Command-line driver: generate -> train -> evaluate, plus the classical
// baseline and a sentence inspector.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qnlp/commands.hpp"
#include "qnlp/error.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"Compositional quantum NLP: four-emotion sentence classification"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  std::string dataset;
  std::string checkpoint;
  std::optional<int> iterations;
  std::vector<std::string> words;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "run configuration file")->required();
    sub->add_option("--seed", seed, "override the configured seed");
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
  };

  auto* gen = app.add_subcommand("generate", "write the labeled dataset");
  common(gen);

  auto* tr = app.add_subcommand("train", "train circuit parameters");
  common(tr);
  tr->add_option("--dataset", dataset, "dataset file (default OUT/dataset.tsv)");
  tr->add_option("--iterations", iterations, "override max_iterations");

  auto* ev = app.add_subcommand("evaluate", "score a checkpoint on the test partition");
  common(ev);
  ev->add_option("--dataset", dataset, "dataset file (default OUT/dataset.tsv)");
  ev->add_option("--checkpoint", checkpoint, "parameter file (default OUT/params.ckpt)");

  auto* bl = app.add_subcommand("baseline", "TF-IDF + naive Bayes on the same partition");
  common(bl);
  bl->add_option("--dataset", dataset, "dataset file (default OUT/dataset.tsv)");

  auto* in = app.add_subcommand("inspect", "show diagram and circuit for a sentence");
  common(in);
  in->add_option("words", words, "sentence, e.g. furious neighbour attacks child")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    auto config = qnlp::RunConfig::load(config_path);
    if (seed) config.seed = *seed;
    if (iterations) config.optimizer.max_iterations = *iterations;
    const fs::path out(out_dir);
    const fs::path data = dataset.empty() ? out / qnlp::kDatasetFile : fs::path(dataset);

    if (gen->parsed()) {
      qnlp::command_generate(config, out, std::cout);
    } else if (tr->parsed()) {
      qnlp::command_train(config, data, out, std::cout);
    } else if (ev->parsed()) {
      const fs::path ckpt = checkpoint.empty() ? out / qnlp::kCheckpointFile : fs::path(checkpoint);
      qnlp::command_evaluate(config, ckpt, data, out, std::cout);
    } else if (bl->parsed()) {
      qnlp::command_baseline(config, data, out, std::cout);
    } else if (in->parsed()) {
      std::cout << qnlp::command_inspect(config, words);
    }
  } catch (const qnlp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
