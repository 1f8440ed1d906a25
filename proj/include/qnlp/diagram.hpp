#pragma once

#include <string>
#include <vector>

#include "qnlp/grammar.hpp"

namespace qnlp {

struct WordBox {
  std::string token;
  PartOfSpeech pos = PartOfSpeech::noun;
  PregroupType output_wires;
};

/// DisCoCat diagram of one sentence. Wires are numbered globally by
/// concatenating every box's output wires in reading order.
struct Diagram {
  std::vector<WordBox> boxes;
  CupPattern cups;
  int sentence_wire = -1;

  int wire_count() const;
  /// Simple type carried by each global wire.
  std::vector<SimpleType> wire_types() const;
  /// Index of the box that emits each global wire.
  std::vector<int> wire_owner() const;
  /// First global wire of box i.
  int first_wire(int box) const;
};

/// Throws TemplateMismatch when the token count does not fit the template.
Diagram build_diagram(const LabeledSentence& sentence, const Template& tmpl);
Diagram build_diagram(const std::vector<std::string>& tokens, const Template& tmpl);

/// Text picture: boxes on one row, typed wires under them, one row per cup
/// drawn as an arc between its two wires, and the open sentence wire.
std::string render(const Diagram& diagram);

} // namespace qnlp
