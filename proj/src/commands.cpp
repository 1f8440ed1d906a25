#include "qnlp/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "qnlp/compiler.hpp"
#include "qnlp/diagram.hpp"
#include "qnlp/error.hpp"

namespace qnlp {
namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  return out;
}

std::vector<LabeledSentence> load_dataset(const RunConfig& config, const fs::path& path) {
  auto data = read_dataset_file(path.string());
  const auto lexicon = config.load_lexicon();
  for (const auto& s : data) validate(s, Template::parse(s.template_id), lexicon);
  return data;
}

void print_histogram(std::ostream& log, const std::string& title,
                     const std::vector<LabeledSentence>& data) {
  const auto h = class_histogram(data);
  log << title << " (" << data.size() << "):";
  for (auto e : kAllEmotions) log << ' ' << to_string(e) << '=' << h[class_index(e)];
  log << '\n';
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1])});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::vector<std::string> suggestions(const std::string& word, const Lexicon& lexicon) {
  std::vector<std::pair<std::size_t, std::string>> ranked;
  for (const auto& e : lexicon.entries()) ranked.emplace_back(edit_distance(word, e.token), e.token);
  std::sort(ranked.begin(), ranked.end());
  ranked.erase(std::unique(ranked.begin(), ranked.end()), ranked.end());
  std::vector<std::string> out;
  for (const auto& [d, t] : ranked) {
    if (out.size() == 3 || d > 3) break;
    out.push_back(t);
  }
  return out;
}

} // namespace

std::vector<LabeledSentence> command_generate(const RunConfig& config, const fs::path& out_dir,
                                              std::ostream& log) {
  const auto lexicon = config.load_lexicon();
  const auto data = generate_dataset(lexicon, config.templates, config.label_scope);
  {
    auto out = open_out(out_dir / kDatasetFile);
    write_dataset(out, data);
  }
  log << "candidates: " << count_candidates(lexicon, config.templates) << '\n';
  print_histogram(log, "labeled sentences", data);
  for (const auto& t : config.templates) {
    std::vector<LabeledSentence> sub;
    std::copy_if(data.begin(), data.end(), std::back_inserter(sub),
                 [&](const LabeledSentence& s) { return s.template_id == t.id; });
    print_histogram(log, "  " + t.id, sub);
  }
  log << "wrote " << (out_dir / kDatasetFile).string() << '\n';
  return data;
}

DatasetSplit partition(const RunConfig& config, const std::vector<LabeledSentence>& dataset) {
  return split(dataset, stream_seed(config.seed, Stream::Split), config.test_size);
}

TrainResult command_train(const RunConfig& config, const fs::path& dataset_path, const fs::path& out_dir,
                          std::ostream& log) {
  const auto data = load_dataset(config, dataset_path);
  const auto parts = partition(config, data);
  print_histogram(log, "train", parts.train);
  print_histogram(log, "test", parts.test);

  const auto lexicon = config.load_lexicon();
  const auto store =
      init_parameters(vocabulary(lexicon), config.ansatz, stream_seed(config.seed, Stream::Init));
  if (config.ansatz.depth == 0)
    log << "warning: depth 0 leaves multi-qubit words without parameters\n";
  log << "parameters: " << store.total_count() << '\n';

  const fs::path ckpt = out_dir / kCheckpointFile;
  fs::create_directories(out_dir);
  TrainHooks hooks;
  hooks.record_wall_time = config.record_wall_time;
  hooks.on_checkpoint = [&](int, const ParameterStore& best) {
    write_checkpoint_file(ckpt.string(), best);
  };
  hooks.on_report = [&](const LossReport& r) {
    if (r.iteration % 100 == 0)
      log << "iteration " << r.iteration << " loss " << r.current_loss << " best " << r.loss << '\n';
  };
  auto result = train(store, parts.train, config.optimizer_for_run(), hooks);
  {
    auto out = open_out(out_dir / kLossFile);
    write_loss_csv(out, result.curve);
  }
  log << "initial loss " << result.curve.front().loss << ", final loss " << result.curve.back().loss
      << " after " << result.curve.back().iteration << " iterations\n";
  return result;
}

Metrics command_evaluate(const RunConfig& config, const fs::path& checkpoint_path,
                         const fs::path& dataset_path, const fs::path& out_dir, std::ostream& log) {
  const auto store = read_checkpoint_file(checkpoint_path.string());
  if (store.config() != config.ansatz) {
    throw Error(ErrorKind::CheckpointMismatch,
                "checkpoint has depth=" + std::to_string(store.config().depth) +
                    " qubits_per_n=" + std::to_string(store.config().qubits_per_n) +
                    ", config has depth=" + std::to_string(config.ansatz.depth) +
                    " qubits_per_n=" + std::to_string(config.ansatz.qubits_per_n));
  }
  const auto parts = partition(config, load_dataset(config, dataset_path));
  if (parts.test.empty()) throw Error(ErrorKind::EmptyTestSet, "no test sentences");
  const auto predictions = predict(store, parts.test, config.shots, stream_seed(config.seed, Stream::Shots));
  std::vector<Emotion> truth;
  for (const auto& s : parts.test) truth.push_back(s.label);
  const auto metrics = compute_metrics(truth, predictions);
  {
    auto out = open_out(out_dir / kMetricsFile);
    write_metrics_report(out, metrics);
  }
  {
    auto out = open_out(out_dir / kConfusionFile);
    write_confusion_csv(out, metrics);
  }
  write_metrics_report(log, metrics);
  return metrics;
}

BaselineResult command_baseline(const RunConfig& config, const fs::path& dataset_path,
                                const fs::path& out_dir, std::ostream& log) {
  const auto parts = partition(config, load_dataset(config, dataset_path));
  auto result = evaluate_baseline(parts.train, parts.test, config.nb_alpha);
  for (auto e : result.missing_labels)
    log << "warning: class " << to_string(e) << " has no training sentence\n";
  {
    auto out = open_out(out_dir / kMetricsFile);
    write_metrics_report(out, result.metrics);
  }
  {
    auto out = open_out(out_dir / kConfusionFile);
    write_confusion_csv(out, result.metrics);
  }
  write_metrics_report(log, result.metrics);
  return result;
}

std::string lemmatize(const std::string& word, const Lexicon& lexicon) {
  std::string lower = word;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  auto known = [&](const std::string& w) { return !lexicon.find_any(w).empty(); };
  if (known(lower)) return lower;
  auto ends = [&](const std::string& suffix) {
    return lower.size() > suffix.size() &&
           lower.compare(lower.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  const std::string stem = lower.substr(0, lower.size() - (lower.empty() ? 0 : 1));
  if (ends("ies") && known(lower.substr(0, lower.size() - 3) + "y"))
    return lower.substr(0, lower.size() - 3) + "y";
  if (ends("s") && known(stem)) return stem;
  if (ends("es") && known(lower.substr(0, lower.size() - 2))) return lower.substr(0, lower.size() - 2);
  return lower;
}

std::string command_inspect(const RunConfig& config, const std::vector<std::string>& words) {
  const auto lexicon = config.load_lexicon();
  std::vector<std::string> tokens;
  for (const auto& w : words) {
    const auto t = lemmatize(w, lexicon);
    if (lexicon.find_any(t).empty()) {
      std::string msg = "'" + w + "' is not in the lexicon";
      const auto near = suggestions(t, lexicon);
      if (!near.empty()) {
        msg += "; did you mean";
        for (std::size_t i = 0; i < near.size(); ++i) msg += (i ? ", " : " ") + near[i];
        msg += "?";
      }
      throw Error(ErrorKind::UnknownToken, msg);
    }
    tokens.push_back(t);
  }
  if (tokens.size() < 2 || tokens.size() > 4)
    throw Error(ErrorKind::TemplateMismatch, "sentences have 2 to 4 words");

  // Configured templates first, then any other reducing part-of-speech sequence.
  std::vector<std::vector<PartOfSpeech>> readings(1);
  for (const auto& t : tokens) {
    std::vector<std::vector<PartOfSpeech>> next;
    for (const auto& r : readings)
      for (const auto* e : lexicon.find_any(t)) {
        auto x = r;
        x.push_back(e->pos);
        next.push_back(std::move(x));
      }
    readings = std::move(next);
  }
  std::optional<Template> chosen;
  for (const auto& t : config.templates)
    for (const auto& r : readings)
      if (!chosen && t.pos_sequence == r) chosen = t;
  for (const auto& r : readings) {
    if (chosen) break;
    std::string id;
    for (auto pos : r) id += (id.empty() ? "" : "-") + std::string(template_code(pos));
    try {
      chosen = Template::parse(id);
    } catch (const Error&) {
    }
  }
  if (!chosen) throw Error(ErrorKind::TemplateMismatch, "no sentence template fits these words");

  const auto diagram = build_diagram(tokens, *chosen);
  const ParameterStore store(vocabulary(lexicon), config.ansatz);
  const auto layout = QubitLayout::allocate(diagram, config.ansatz.qubits_per_n);
  const auto circuit = compile(diagram, store, layout);

  std::ostringstream out;
  std::string sentence;
  for (const auto& t : tokens) sentence += (sentence.empty() ? "" : " ") + t;
  out << "sentence: " << sentence << '\n' << "template: " << chosen->id << '\n';
  if (auto e = label(tokens, *chosen, lexicon, config.label_scope))
    out << "label: " << to_string(*e) << '\n';
  else
    out << "label: none (excluded from the dataset)\n";
  out << '\n' << render(diagram) << '\n';
  out << "qubits: " << circuit.n_qubits << '\n';
  const auto types = diagram.wire_types();
  const auto owner = diagram.wire_owner();
  for (int w = 0; w < diagram.wire_count(); ++w) {
    out << "  wire " << w << " " << std::setw(4) << std::left << to_string(types[w]) << std::right
        << " (" << diagram.boxes[owner[w]].token << "):";
    for (int q : layout.wire_qubits[w]) out << " q" << q;
    out << '\n';
  }
  out << "gates: " << circuit.gates.size() << '\n' << circuit.listing();
  out << "postselect_zero (" << circuit.postselect_zero.size() << "):";
  for (int q : circuit.postselect_zero) out << " q" << q;
  out << "\nresult qubits: q" << circuit.result_qubits[0] << " q" << circuit.result_qubits[1] << '\n';
  return out.str();
}

} // namespace qnlp
