#include <fstream>
#include <sstream>

#include "qnlp/error.hpp"
#include "qnlp/grammar.hpp"

namespace qnlp {
namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    auto end = line.find('\t', start);
    fields.push_back(line.substr(start, end == std::string::npos ? std::string::npos : end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return fields;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

bool skippable(const std::string& line) {
  return line.empty() || line.front() == '#';
}

[[noreturn]] void fail(const std::string& source, int line_no, const std::string& what) {
  throw Error(ErrorKind::Config, source + ":" + std::to_string(line_no) + ": " + what);
}

std::optional<Emotion> parse_emotion_field(const std::string& field, const std::string& source,
                                           int line_no) {
  if (field == "neutral") return std::nullopt;
  auto e = parse_emotion(field);
  if (!e) fail(source, line_no, "unknown emotion '" + field + "'");
  return e;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  return in;
}

} // namespace

Lexicon read_lexicon(std::istream& in, const std::string& source) {
  Lexicon lexicon;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (skippable(line)) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 3) fail(source, line_no, "expected token<TAB>pos<TAB>emotion");
    auto pos = parse_pos(fields[1]);
    if (!pos) fail(source, line_no, "unknown part of speech '" + fields[1] + "'");
    if (fields[0].empty()) fail(source, line_no, "empty token");
    try {
      lexicon.add({fields[0], *pos, parse_emotion_field(fields[2], source, line_no)});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Config) throw;
      fail(source, line_no, e.what());
    }
  }
  return lexicon;
}

Lexicon read_lexicon_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_lexicon(in, path);
}

void write_lexicon(std::ostream& out, const Lexicon& lexicon) {
  for (const auto& e : lexicon.entries()) {
    out << e.token << '\t' << to_string(e.pos) << '\t'
        << (e.emotion ? to_string(*e.emotion) : std::string_view("neutral")) << '\n';
  }
}

void apply_emotion_overrides(Lexicon& lexicon, std::istream& in, const std::string& source) {
  std::vector<LexiconEntry> entries = lexicon.entries();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (skippable(line)) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 2) fail(source, line_no, "expected token<TAB>emotion");
    auto emotion = parse_emotion_field(fields[1], source, line_no);
    bool hit = false;
    for (auto& e : entries) {
      if (e.token == fields[0]) {
        e.emotion = emotion;
        hit = true;
      }
    }
    if (!hit) fail(source, line_no, "token '" + fields[0] + "' is not in the lexicon");
  }
  lexicon = Lexicon(std::move(entries));
}

void write_dataset(std::ostream& out, const std::vector<LabeledSentence>& data) {
  out << "tokens\ttemplate_id\tlabel\n";
  for (const auto& s : data) {
    out << s.text() << '\t' << s.template_id << '\t' << to_string(s.label) << '\n';
  }
}

std::vector<LabeledSentence> read_dataset(std::istream& in, const std::string& source) {
  std::vector<LabeledSentence> data;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (skippable(line)) continue;
    if (line_no == 1 && line == "tokens\ttemplate_id\tlabel") continue;
    auto fields = split_tabs(line);
    if (fields.size() != 3) fail(source, line_no, "expected tokens<TAB>template_id<TAB>label");
    LabeledSentence s;
    std::istringstream words(fields[0]);
    for (std::string w; words >> w;) s.tokens.push_back(w);
    s.template_id = fields[1];
    auto e = parse_emotion(fields[2]);
    if (!e) fail(source, line_no, "unknown label '" + fields[2] + "'");
    s.label = *e;
    data.push_back(std::move(s));
  }
  return data;
}

std::vector<LabeledSentence> read_dataset_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_dataset(in, path);
}

} // namespace qnlp
