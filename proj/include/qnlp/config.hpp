#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qnlp/compiler.hpp"
#include "qnlp/grammar.hpp"
#include "qnlp/trainer.hpp"

namespace qnlp {

/// Everything one pipeline run needs. Loaded from a flat `key = value` file
/// ('#' starts a comment); relative paths resolve against the file's directory.
struct RunConfig {
  std::filesystem::path lexicon;
  std::filesystem::path emotion_lexicon; // optional overrides
  std::vector<Template> templates = default_templates();
  LabelScope label_scope = LabelScope::subject_verb;
  std::uint64_t seed = 0;
  AnsatzConfig ansatz;
  OptimizerConfig optimizer;
  std::size_t test_size = 180;
  std::int64_t shots = 0; // 0: exact mode
  bool record_wall_time = true;
  double nb_alpha = 1.0;

  /// Throws Config with `source:line` context; checks that referenced files exist.
  static RunConfig parse(std::istream& in, const std::string& source,
                         const std::filesystem::path& base_dir);
  static RunConfig load(const std::filesystem::path& path);

  /// Lexicon with emotion overrides applied.
  Lexicon load_lexicon() const;
  /// Optimizer settings with the seed derived from the run seed.
  OptimizerConfig optimizer_for_run() const;
};

void write_config(std::ostream& out, const RunConfig& config);

} // namespace qnlp
