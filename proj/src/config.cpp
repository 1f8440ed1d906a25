#include "qnlp/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "qnlp/error.hpp"

namespace qnlp {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T number(const std::string& value, const std::string& where) {
  T x{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw Error(ErrorKind::Config, where + ": '" + value + "' is not a valid number");
  return x;
}

bool boolean(const std::string& value, const std::string& where) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error(ErrorKind::Config, where + ": expected true or false, got '" + value + "'");
}

} // namespace

RunConfig RunConfig::parse(std::istream& in, const std::string& source,
                           const std::filesystem::path& base_dir) {
  RunConfig c;
  std::string line;
  int line_no = 0;
  auto resolve = [&](const std::string& v) {
    std::filesystem::path p(v);
    return p.is_absolute() ? p : base_dir / p;
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Config, where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "lexicon") c.lexicon = resolve(value);
      else if (key == "emotion_lexicon") c.emotion_lexicon = value.empty() ? "" : resolve(value);
      else if (key == "templates") {
        c.templates.clear();
        std::istringstream ids(value);
        for (std::string id; std::getline(ids, id, ',');) {
          id = trim(id);
          if (!id.empty()) c.templates.push_back(Template::parse(id));
        }
        if (c.templates.empty()) throw Error(ErrorKind::Config, "no templates listed");
      } else if (key == "label_scope") {
        auto s = parse_label_scope(value);
        if (!s) throw Error(ErrorKind::Config, "label_scope must be subject_verb or all");
        c.label_scope = *s;
      } else if (key == "seed") c.seed = number<std::uint64_t>(value, where);
      else if (key == "qubits_per_n") c.ansatz.qubits_per_n = number<int>(value, where);
      else if (key == "qubits_per_s") {
        if (number<int>(value, where) != AnsatzConfig::qubits_per_s)
          throw Error(ErrorKind::Config, "qubits_per_s is fixed at 2 (four classes)");
      } else if (key == "depth") c.ansatz.depth = number<int>(value, where);
      else if (key == "optimizer") {
        auto a = parse_algorithm(value);
        if (!a) throw Error(ErrorKind::Config, "optimizer must be spsa or nelder_mead");
        c.optimizer.algorithm = *a;
      } else if (key == "max_iterations") c.optimizer.max_iterations = number<int>(value, where);
      else if (key == "spsa_a") c.optimizer.a = number<double>(value, where);
      else if (key == "spsa_c") c.optimizer.c = number<double>(value, where);
      else if (key == "spsa_A") c.optimizer.A = number<double>(value, where);
      else if (key == "spsa_alpha") c.optimizer.alpha = number<double>(value, where);
      else if (key == "spsa_gamma") c.optimizer.gamma = number<double>(value, where);
      else if (key == "tolerance") c.optimizer.tolerance = number<double>(value, where);
      else if (key == "patience") c.optimizer.patience = number<int>(value, where);
      else if (key == "simplex_step") c.optimizer.simplex_step = number<double>(value, where);
      else if (key == "test_size") c.test_size = number<std::size_t>(value, where);
      else if (key == "mode") {
        std::istringstream m(value);
        std::string kind;
        m >> kind;
        if (kind == "exact") c.shots = 0;
        else if (kind == "shots") {
          std::string n;
          m >> n;
          c.shots = number<std::int64_t>(n, where);
          if (c.shots <= 0) throw Error(ErrorKind::Config, "shot count must be positive");
        } else throw Error(ErrorKind::Config, "mode must be 'exact' or 'shots N'");
      } else if (key == "record_wall_time") c.record_wall_time = boolean(value, where);
      else if (key == "nb_alpha") c.nb_alpha = number<double>(value, where);
      else throw Error(ErrorKind::Config, "unknown key '" + key + "'");
    } catch (const Error& e) {
      const std::string msg = e.what();
      if (msg.find(where) != std::string::npos) throw;
      throw Error(ErrorKind::Config, where + ": " + msg);
    }
  }

  if (c.lexicon.empty()) throw Error(ErrorKind::Config, source + ": 'lexicon' is required");
  if (!std::filesystem::exists(c.lexicon))
    throw Error(ErrorKind::Config, source + ": lexicon '" + c.lexicon.string() + "' does not exist");
  if (!c.emotion_lexicon.empty() && !std::filesystem::exists(c.emotion_lexicon))
    throw Error(ErrorKind::Config,
                source + ": emotion_lexicon '" + c.emotion_lexicon.string() + "' does not exist");
  if (c.ansatz.qubits_per_n < 1) throw Error(ErrorKind::Config, source + ": qubits_per_n must be >= 1");
  if (c.ansatz.depth < 0) throw Error(ErrorKind::Config, source + ": depth must be >= 0");
  if (!(c.nb_alpha > 0)) throw Error(ErrorKind::Config, source + ": nb_alpha must be positive");
  try {
    c.optimizer.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, source + ": " + e.what());
  }
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open config '" + path.string() + "'");
  return parse(in, path.string(), path.parent_path());
}

Lexicon RunConfig::load_lexicon() const {
  Lexicon lex = read_lexicon_file(lexicon.string());
  if (!emotion_lexicon.empty()) {
    std::ifstream in(emotion_lexicon);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + emotion_lexicon.string() + "'");
    apply_emotion_overrides(lex, in, emotion_lexicon.string());
  }
  return lex;
}

OptimizerConfig RunConfig::optimizer_for_run() const {
  OptimizerConfig o = optimizer;
  o.seed = stream_seed(seed, Stream::Optimizer);
  return o;
}

void write_config(std::ostream& out, const RunConfig& c) {
  out << "lexicon = " << c.lexicon.string() << '\n';
  if (!c.emotion_lexicon.empty()) out << "emotion_lexicon = " << c.emotion_lexicon.string() << '\n';
  out << "templates = ";
  for (std::size_t i = 0; i < c.templates.size(); ++i) out << (i ? "," : "") << c.templates[i].id;
  out << "\nlabel_scope = " << to_string(c.label_scope) << '\n'
      << "seed = " << c.seed << '\n'
      << "qubits_per_n = " << c.ansatz.qubits_per_n << '\n'
      << "depth = " << c.ansatz.depth << '\n'
      << "optimizer = " << to_string(c.optimizer.algorithm) << '\n'
      << "max_iterations = " << c.optimizer.max_iterations << '\n'
      << "spsa_a = " << c.optimizer.a << '\n'
      << "spsa_c = " << c.optimizer.c << '\n'
      << "spsa_A = " << c.optimizer.A << '\n'
      << "spsa_alpha = " << c.optimizer.alpha << '\n'
      << "spsa_gamma = " << c.optimizer.gamma << '\n'
      << "tolerance = " << c.optimizer.tolerance << '\n'
      << "patience = " << c.optimizer.patience << '\n'
      << "test_size = " << c.test_size << '\n'
      << "mode = " << (c.shots > 0 ? "shots " + std::to_string(c.shots) : std::string("exact")) << '\n'
      << "record_wall_time = " << (c.record_wall_time ? "true" : "false") << '\n'
      << "nb_alpha = " << c.nb_alpha << '\n';
}

} // namespace qnlp
