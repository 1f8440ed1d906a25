#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qnlp {

// ---------------------------------------------------------------------------
// Pregroup types
// ---------------------------------------------------------------------------

enum class Base : std::uint8_t { n, s };

/// Atomic pregroup type with its adjoint order: -1 is the left adjoint x^l,
/// +1 the right adjoint x^r.
struct SimpleType {
  Base base = Base::n;
  int adjoint = 0;

  friend bool operator==(const SimpleType&, const SimpleType&) = default;
};

using PregroupType = std::vector<SimpleType>;

std::string to_string(const SimpleType& t);
std::string to_string(const PregroupType& t);

enum class PartOfSpeech : std::uint8_t { noun, adjective, transitive_verb, intransitive_verb };

inline constexpr std::array<PartOfSpeech, 4> kAllPartsOfSpeech = {
    PartOfSpeech::noun, PartOfSpeech::adjective, PartOfSpeech::transitive_verb,
    PartOfSpeech::intransitive_verb};

std::string_view to_string(PartOfSpeech pos);
// Accepts the long names ("transitive_verb") and template codes ("TV").
std::optional<PartOfSpeech> parse_pos(std::string_view text);
std::string_view template_code(PartOfSpeech pos);

bool is_verb(PartOfSpeech pos);

PregroupType type_of(PartOfSpeech pos);

// ---------------------------------------------------------------------------
// Emotions
// ---------------------------------------------------------------------------

enum class Emotion : std::uint8_t { happiness = 0, fear = 1, anger = 2, sadness = 3 };

inline constexpr int kNumClasses = 4;
inline constexpr std::array<Emotion, kNumClasses> kAllEmotions = {
    Emotion::happiness, Emotion::fear, Emotion::anger, Emotion::sadness};

inline constexpr int class_index(Emotion e) { return static_cast<int>(e); }
Emotion emotion_from_index(int index);
std::string_view to_string(Emotion e);
std::optional<Emotion> parse_emotion(std::string_view text);
/// Measurement outcome of the two result qubits that encodes the class, e.g. "01" for fear.
std::string_view bitstring(Emotion e);

// ---------------------------------------------------------------------------
// Lexicon and templates
// ---------------------------------------------------------------------------

struct LexiconEntry {
  std::string token;
  PartOfSpeech pos = PartOfSpeech::noun;
  std::optional<Emotion> emotion; // absent: neutral word
};

class Lexicon {
public:
  Lexicon() = default;
  explicit Lexicon(std::vector<LexiconEntry> entries);

  /// Throws Config on a duplicate (token, pos) pair.
  void add(LexiconEntry entry);

  const LexiconEntry* find(std::string_view token, PartOfSpeech pos) const;
  std::vector<const LexiconEntry*> find_any(std::string_view token) const;

  /// Tokens of one part of speech in lexicographic order.
  std::vector<const LexiconEntry*> by_pos(PartOfSpeech pos) const;

  const std::vector<LexiconEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

private:
  std::vector<LexiconEntry> entries_;
};

struct Template {
  std::string id;
  std::vector<PartOfSpeech> pos_sequence;

  /// Parses a dash-separated code such as "ADJ-N-TV-N". Lengths outside 2..4
  /// and sequences that do not reduce to a sentence are rejected with Config.
  static Template parse(std::string_view id);

  std::vector<PregroupType> types() const;
};

std::vector<Template> default_templates();

struct LabeledSentence {
  std::vector<std::string> tokens;
  std::string template_id;
  Emotion label = Emotion::happiness;

  std::string text() const;
  friend bool operator==(const LabeledSentence&, const LabeledSentence&) = default;
};

// ---------------------------------------------------------------------------
// Reduction
// ---------------------------------------------------------------------------

/// Cups over the concatenated simple-type sequence. Pairs are listed in the
/// order they were contracted.
struct CupPattern {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> open_wires;

  friend bool operator==(const CupPattern&, const CupPattern&) = default;
};

/// Left-to-right stack reduction: a wire cancels against the innermost open
/// wire to its left when they share a base and the right one's adjoint order
/// is one higher (x^l x -> 1, x x^r -> 1). Throws NoReduction unless exactly
/// one plain s remains.
CupPattern reduce(const std::vector<PregroupType>& types);

// ---------------------------------------------------------------------------
// Labeling and dataset generation
// ---------------------------------------------------------------------------

/// Which words vote on a sentence's emotion.
enum class LabelScope : std::uint8_t {
  /// Words up to and including the verb; adjectives on the object describe
  /// the object, not the sentence.
  subject_verb,
  /// Every word in the sentence.
  all,
};

std::string_view to_string(LabelScope scope);
std::optional<LabelScope> parse_label_scope(std::string_view text);

/// Exactly one distinct emotion among the voting words gives the label;
/// none or a conflict gives nullopt. Throws UnknownToken or TemplateMismatch.
std::optional<Emotion> label(const std::vector<std::string>& tokens, const Template& tmpl,
                             const Lexicon& lexicon,
                             LabelScope scope = LabelScope::subject_verb);

std::size_t count_candidates(const Lexicon& lexicon, const std::vector<Template>& templates);

/// Every filling of every template, labeled, unlabeled candidates dropped.
/// Order: template order, then lexicographic per slot (last slot fastest).
std::vector<LabeledSentence> generate_dataset(const Lexicon& lexicon,
                                              const std::vector<Template>& templates,
                                              LabelScope scope = LabelScope::subject_verb);

struct DatasetSplit {
  std::vector<LabeledSentence> train;
  std::vector<LabeledSentence> test;
};

/// Seeded Fisher-Yates shuffle (j = draw mod (i+1), i from n-1 down to 1);
/// the last test_size records form the test set. Throws DatasetTooSmall
/// when test_size >= dataset size.
DatasetSplit split(const std::vector<LabeledSentence>& dataset, std::uint64_t seed,
                   std::size_t test_size = 180);

std::array<std::size_t, kNumClasses> class_histogram(const std::vector<LabeledSentence>& data);

const Template& find_template(const std::vector<Template>& templates, std::string_view id);

/// Throws UnknownToken / TemplateMismatch when a sentence does not fit its template.
void validate(const LabeledSentence& sentence, const Template& tmpl, const Lexicon& lexicon);

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

/// `token<TAB>pos<TAB>emotion|neutral` per line; '#' comments and blank lines skipped.
Lexicon read_lexicon(std::istream& in, const std::string& source = "<lexicon>");
Lexicon read_lexicon_file(const std::string& path);
void write_lexicon(std::ostream& out, const Lexicon& lexicon);

/// `token<TAB>emotion|neutral` overrides applied to every entry with that token.
void apply_emotion_overrides(Lexicon& lexicon, std::istream& in,
                             const std::string& source = "<emotions>");

/// Header `tokens<TAB>template_id<TAB>label`, then one sentence per line.
void write_dataset(std::ostream& out, const std::vector<LabeledSentence>& data);
std::vector<LabeledSentence> read_dataset(std::istream& in, const std::string& source = "<dataset>");
std::vector<LabeledSentence> read_dataset_file(const std::string& path);

} // namespace qnlp
