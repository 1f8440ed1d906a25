#include "qnlp/grammar.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qnlp/error.hpp"
#include "qnlp/rng.hpp"

namespace qnlp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::NoReduction: return "NoReduction";
  case ErrorKind::UnknownToken: return "UnknownToken";
  case ErrorKind::DatasetTooSmall: return "DatasetTooSmall";
  case ErrorKind::TemplateMismatch: return "TemplateMismatch";
  case ErrorKind::MissingParameters: return "MissingParameters";
  case ErrorKind::ZeroNorm: return "ZeroNorm";
  case ErrorKind::ArityMismatch: return "ArityMismatch";
  case ErrorKind::WidthMismatch: return "WidthMismatch";
  case ErrorKind::BadIndex: return "BadIndex";
  case ErrorKind::EmptyCorpus: return "EmptyCorpus";
  case ErrorKind::EmptyTestSet: return "EmptyTestSet";
  case ErrorKind::LengthMismatch: return "LengthMismatch";
  case ErrorKind::CheckpointMismatch: return "CheckpointMismatch";
  case ErrorKind::Config: return "ConfigError";
  case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

std::string to_string(const SimpleType& t) {
  std::string out = t.base == Base::n ? "n" : "s";
  if (t.adjoint == -1) out += "^l";
  else if (t.adjoint == 1) out += "^r";
  else if (t.adjoint != 0) out += "^(" + std::to_string(t.adjoint) + ")";
  return out;
}

std::string to_string(const PregroupType& t) {
  std::string out;
  for (const auto& s : t) {
    if (!out.empty()) out += ' ';
    out += to_string(s);
  }
  return out;
}

std::string_view to_string(PartOfSpeech pos) {
  switch (pos) {
  case PartOfSpeech::noun: return "noun";
  case PartOfSpeech::adjective: return "adjective";
  case PartOfSpeech::transitive_verb: return "transitive_verb";
  case PartOfSpeech::intransitive_verb: return "intransitive_verb";
  }
  return "?";
}

std::string_view template_code(PartOfSpeech pos) {
  switch (pos) {
  case PartOfSpeech::noun: return "N";
  case PartOfSpeech::adjective: return "ADJ";
  case PartOfSpeech::transitive_verb: return "TV";
  case PartOfSpeech::intransitive_verb: return "IV";
  }
  return "?";
}

std::optional<PartOfSpeech> parse_pos(std::string_view text) {
  for (auto pos : kAllPartsOfSpeech) {
    if (text == to_string(pos) || text == template_code(pos)) return pos;
  }
  return std::nullopt;
}

bool is_verb(PartOfSpeech pos) {
  return pos == PartOfSpeech::transitive_verb || pos == PartOfSpeech::intransitive_verb;
}

PregroupType type_of(PartOfSpeech pos) {
  constexpr SimpleType n{Base::n, 0}, nl{Base::n, -1}, nr{Base::n, 1}, s{Base::s, 0};
  switch (pos) {
  case PartOfSpeech::noun: return {n};
  case PartOfSpeech::adjective: return {n, nl};
  case PartOfSpeech::transitive_verb: return {nr, s, nl};
  case PartOfSpeech::intransitive_verb: return {nr, s};
  }
  return {};
}

Emotion emotion_from_index(int index) {
  if (index < 0 || index >= kNumClasses)
    throw Error(ErrorKind::BadIndex, "class index " + std::to_string(index));
  return static_cast<Emotion>(index);
}

std::string_view to_string(Emotion e) {
  switch (e) {
  case Emotion::happiness: return "happiness";
  case Emotion::fear: return "fear";
  case Emotion::anger: return "anger";
  case Emotion::sadness: return "sadness";
  }
  return "?";
}

std::optional<Emotion> parse_emotion(std::string_view text) {
  for (auto e : kAllEmotions) {
    if (text == to_string(e)) return e;
  }
  return std::nullopt;
}

std::string_view bitstring(Emotion e) {
  static constexpr std::array<std::string_view, 4> bits = {"00", "01", "10", "11"};
  return bits[class_index(e)];
}

// ---------------------------------------------------------------------------

Lexicon::Lexicon(std::vector<LexiconEntry> entries) {
  for (auto& e : entries) add(std::move(e));
}

void Lexicon::add(LexiconEntry entry) {
  if (find(entry.token, entry.pos) != nullptr) {
    throw Error(ErrorKind::Config, "duplicate lexicon entry '" + entry.token + "' (" +
                                       std::string(to_string(entry.pos)) + ")");
  }
  entries_.push_back(std::move(entry));
}

const LexiconEntry* Lexicon::find(std::string_view token, PartOfSpeech pos) const {
  for (const auto& e : entries_) {
    if (e.pos == pos && e.token == token) return &e;
  }
  return nullptr;
}

std::vector<const LexiconEntry*> Lexicon::find_any(std::string_view token) const {
  std::vector<const LexiconEntry*> out;
  for (const auto& e : entries_) {
    if (e.token == token) out.push_back(&e);
  }
  return out;
}

std::vector<const LexiconEntry*> Lexicon::by_pos(PartOfSpeech pos) const {
  std::vector<const LexiconEntry*> out;
  for (const auto& e : entries_) {
    if (e.pos == pos) out.push_back(&e);
  }
  std::sort(out.begin(), out.end(),
            [](const LexiconEntry* a, const LexiconEntry* b) { return a->token < b->token; });
  return out;
}

// ---------------------------------------------------------------------------

std::vector<PregroupType> Template::types() const {
  std::vector<PregroupType> out;
  out.reserve(pos_sequence.size());
  for (auto pos : pos_sequence) out.push_back(type_of(pos));
  return out;
}

Template Template::parse(std::string_view id) {
  Template t;
  t.id = std::string(id);
  std::size_t start = 0;
  while (start <= id.size()) {
    auto end = id.find('-', start);
    if (end == std::string_view::npos) end = id.size();
    auto code = id.substr(start, end - start);
    auto pos = parse_pos(code);
    if (!pos) throw Error(ErrorKind::Config, "unknown part of speech '" + std::string(code) +
                                                 "' in template '" + t.id + "'");
    t.pos_sequence.push_back(*pos);
    start = end + 1;
  }
  if (t.pos_sequence.size() < 2 || t.pos_sequence.size() > 4) {
    throw Error(ErrorKind::Config,
                "template '" + t.id + "' has " + std::to_string(t.pos_sequence.size()) +
                    " words; supported sentences have 2 to 4");
  }
  try {
    reduce(t.types());
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, "template '" + t.id + "' is not a sentence: " + e.what());
  }
  return t;
}

std::vector<Template> default_templates() {
  return {Template::parse("N-TV-N"), Template::parse("ADJ-N-IV"), Template::parse("ADJ-N-TV-N"),
          Template::parse("N-TV-ADJ-N")};
}

std::string LabeledSentence::text() const {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

// ---------------------------------------------------------------------------

CupPattern reduce(const std::vector<PregroupType>& types) {
  if (types.empty()) throw Error(ErrorKind::NoReduction, "empty type sequence");
  std::vector<SimpleType> flat;
  for (const auto& t : types) flat.insert(flat.end(), t.begin(), t.end());

  CupPattern pattern;
  std::vector<int> stack;
  for (int i = 0; i < static_cast<int>(flat.size()); ++i) {
    if (!stack.empty()) {
      const auto& left = flat[stack.back()];
      const auto& right = flat[i];
      if (left.base == right.base && right.adjoint == left.adjoint + 1) {
        pattern.pairs.emplace_back(stack.back(), i);
        stack.pop_back();
        continue;
      }
    }
    stack.push_back(i);
  }
  if (stack.size() != 1 || flat[stack.front()] != SimpleType{Base::s, 0}) {
    std::string rest;
    for (int i : stack) rest += (rest.empty() ? "" : " ") + to_string(flat[i]);
    throw Error(ErrorKind::NoReduction, "residual type [" + rest + "] is not [s]");
  }
  pattern.open_wires = stack;
  return pattern;
}

// ---------------------------------------------------------------------------

std::string_view to_string(LabelScope scope) {
  return scope == LabelScope::all ? "all" : "subject_verb";
}

std::optional<LabelScope> parse_label_scope(std::string_view text) {
  if (text == "all") return LabelScope::all;
  if (text == "subject_verb") return LabelScope::subject_verb;
  return std::nullopt;
}

void validate(const LabeledSentence& sentence, const Template& tmpl, const Lexicon& lexicon) {
  if (sentence.tokens.size() != tmpl.pos_sequence.size()) {
    throw Error(ErrorKind::TemplateMismatch,
                "'" + sentence.text() + "' has " + std::to_string(sentence.tokens.size()) +
                    " tokens, template " + tmpl.id + " expects " +
                    std::to_string(tmpl.pos_sequence.size()));
  }
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    if (!lexicon.find(sentence.tokens[i], tmpl.pos_sequence[i])) {
      throw Error(ErrorKind::UnknownToken, "'" + sentence.tokens[i] + "' is not a " +
                                               std::string(to_string(tmpl.pos_sequence[i])));
    }
  }
}

std::optional<Emotion> label(const std::vector<std::string>& tokens, const Template& tmpl,
                             const Lexicon& lexicon, LabelScope scope) {
  validate(LabeledSentence{tokens, tmpl.id, Emotion::happiness}, tmpl, lexicon);

  std::size_t voters = tokens.size();
  if (scope == LabelScope::subject_verb) {
    auto verb = std::find_if(tmpl.pos_sequence.begin(), tmpl.pos_sequence.end(), is_verb);
    if (verb != tmpl.pos_sequence.end())
      voters = static_cast<std::size_t>(verb - tmpl.pos_sequence.begin()) + 1;
  }

  std::optional<Emotion> found;
  for (std::size_t i = 0; i < voters; ++i) {
    const auto& emotion = lexicon.find(tokens[i], tmpl.pos_sequence[i])->emotion;
    if (!emotion) continue;
    if (found && *found != *emotion) return std::nullopt;
    found = emotion;
  }
  return found;
}

std::size_t count_candidates(const Lexicon& lexicon, const std::vector<Template>& templates) {
  std::size_t total = 0;
  for (const auto& t : templates) {
    std::size_t n = 1;
    for (auto pos : t.pos_sequence) n *= lexicon.by_pos(pos).size();
    total += n;
  }
  return total;
}

std::vector<LabeledSentence> generate_dataset(const Lexicon& lexicon,
                                              const std::vector<Template>& templates,
                                              LabelScope scope) {
  std::vector<LabeledSentence> out;
  for (const auto& tmpl : templates) {
    std::vector<std::vector<const LexiconEntry*>> slots;
    for (auto pos : tmpl.pos_sequence) slots.push_back(lexicon.by_pos(pos));
    if (std::any_of(slots.begin(), slots.end(), [](const auto& s) { return s.empty(); })) continue;

    // odometer over the slots, last slot fastest
    std::vector<std::size_t> cursor(slots.size(), 0);
    std::vector<std::string> tokens(slots.size());
    bool done = false;
    while (!done) {
      for (std::size_t i = 0; i < slots.size(); ++i) tokens[i] = slots[i][cursor[i]]->token;
      if (auto emotion = label(tokens, tmpl, lexicon, scope))
        out.push_back(LabeledSentence{tokens, tmpl.id, *emotion});

      done = true;
      for (std::size_t k = slots.size(); k-- > 0;) {
        if (++cursor[k] < slots[k].size()) {
          done = false;
          break;
        }
        cursor[k] = 0;
      }
    }
  }
  return out;
}

DatasetSplit split(const std::vector<LabeledSentence>& dataset, std::uint64_t seed,
                   std::size_t test_size) {
  if (test_size >= dataset.size()) {
    throw Error(ErrorKind::DatasetTooSmall, "test size " + std::to_string(test_size) +
                                                " needs more than " +
                                                std::to_string(dataset.size()) + " sentences");
  }
  std::vector<std::size_t> order(dataset.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::swap(order[i], order[rng.below(i + 1)]);
  }
  DatasetSplit out;
  const std::size_t n_train = dataset.size() - test_size;
  out.train.reserve(n_train);
  out.test.reserve(test_size);
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < n_train ? out.train : out.test).push_back(dataset[order[i]]);
  }
  return out;
}

std::array<std::size_t, kNumClasses> class_histogram(const std::vector<LabeledSentence>& data) {
  std::array<std::size_t, kNumClasses> h{};
  for (const auto& s : data) ++h[class_index(s.label)];
  return h;
}

const Template& find_template(const std::vector<Template>& templates, std::string_view id) {
  for (const auto& t : templates) {
    if (t.id == id) return t;
  }
  throw Error(ErrorKind::TemplateMismatch, "unknown template '" + std::string(id) + "'");
}

} // namespace qnlp
