#include "qnlp/diagram.hpp"

#include <algorithm>
#include <sstream>

#include "qnlp/error.hpp"

namespace qnlp {

int Diagram::wire_count() const {
  int n = 0;
  for (const auto& b : boxes) n += static_cast<int>(b.output_wires.size());
  return n;
}

std::vector<SimpleType> Diagram::wire_types() const {
  std::vector<SimpleType> out;
  for (const auto& b : boxes) out.insert(out.end(), b.output_wires.begin(), b.output_wires.end());
  return out;
}

std::vector<int> Diagram::wire_owner() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(boxes.size()); ++i)
    out.insert(out.end(), boxes[i].output_wires.size(), i);
  return out;
}

int Diagram::first_wire(int box) const {
  int n = 0;
  for (int i = 0; i < box; ++i) n += static_cast<int>(boxes[i].output_wires.size());
  return n;
}

Diagram build_diagram(const std::vector<std::string>& tokens, const Template& tmpl) {
  if (tokens.empty() || tokens.size() != tmpl.pos_sequence.size()) {
    throw Error(ErrorKind::TemplateMismatch,
                std::to_string(tokens.size()) + " tokens for template " + tmpl.id + " of length " +
                    std::to_string(tmpl.pos_sequence.size()));
  }
  Diagram d;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    d.boxes.push_back({tokens[i], tmpl.pos_sequence[i], type_of(tmpl.pos_sequence[i])});
  }
  d.cups = reduce(tmpl.types());
  d.sentence_wire = d.cups.open_wires.front();
  return d;
}

Diagram build_diagram(const LabeledSentence& sentence, const Template& tmpl) {
  if (sentence.template_id != tmpl.id) {
    throw Error(ErrorKind::TemplateMismatch,
                "sentence is tagged " + sentence.template_id + ", not " + tmpl.id);
  }
  return build_diagram(sentence.tokens, tmpl);
}

std::string render(const Diagram& d) {
  // Column layout: each wire gets a fixed-width column under its box.
  int kCol = 6;
  for (const auto& b : d.boxes) {
    const int wires = static_cast<int>(b.output_wires.size());
    kCol = std::max(kCol, (static_cast<int>(b.token.size()) + 3 + wires - 1) / wires);
  }
  const auto types = d.wire_types();
  const int n_wires = static_cast<int>(types.size());
  const int width = n_wires * kCol;
  auto centre = [&](int wire) { return wire * kCol + kCol / 2; };

  std::ostringstream out;
  std::string boxes(width, ' ');
  std::string labels(width, ' ');
  for (int b = 0; b < static_cast<int>(d.boxes.size()); ++b) {
    const int lo = d.first_wire(b) * kCol;
    const int hi = lo + static_cast<int>(d.boxes[b].output_wires.size()) * kCol - 1;
    boxes[lo] = '[';
    boxes[hi - 1] = ']';
    const auto& token = d.boxes[b].token;
    for (int i = 0; i < static_cast<int>(token.size()) && lo + 1 + i < hi - 1; ++i)
      boxes[lo + 1 + i] = token[i];
  }
  for (int w = 0; w < n_wires; ++w) {
    const auto name = to_string(types[w]);
    for (int i = 0; i < static_cast<int>(name.size()) && w * kCol + 1 + i < width; ++i)
      labels[w * kCol + 1 + i] = name[i];
  }
  out << boxes << '\n' << labels << '\n';

  // Inner cups are drawn first so nested arcs sit above the outer ones.
  auto cups = d.cups.pairs;
  std::stable_sort(cups.begin(), cups.end(), [](const auto& x, const auto& y) {
    return (x.second - x.first) < (y.second - y.first);
  });
  std::vector<bool> ended(n_wires, false);
  for (const auto& [a, b] : cups) {
    std::string row(width, ' ');
    for (int w = 0; w < n_wires; ++w)
      if (!ended[w]) row[centre(w)] = '|';
    row[centre(a)] = '\\';
    for (int x = centre(a) + 1; x < centre(b); ++x) row[x] = '_';
    row[centre(b)] = '/';
    ended[a] = ended[b] = true;
    out << row << '\n';
  }
  std::string tail(width, ' ');
  tail[centre(d.sentence_wire)] = '|';
  out << tail << '\n';
  std::string name(width, ' ');
  name[centre(d.sentence_wire)] = 's';
  out << name << '\n';
  return out.str();
}

} // namespace qnlp
