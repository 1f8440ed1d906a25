#include "qnlp/compiler.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "qnlp/error.hpp"
#include "qnlp/rng.hpp"

namespace qnlp {

std::string_view to_string(GateKind kind) {
  switch (kind) {
  case GateKind::H: return "H";
  case GateKind::RX: return "RX";
  case GateKind::RZ: return "RZ";
  case GateKind::CX: return "CX";
  case GateKind::CRZ: return "CRZ";
  }
  return "?";
}

int Circuit::parameter_extent() const {
  int extent = 0;
  for (const auto& g : gates) extent = std::max(extent, g.param + 1);
  return extent;
}

std::string Circuit::listing() const {
  std::ostringstream out;
  for (const auto& g : gates) {
    out << to_string(g.kind) << " q" << g.target;
    if (g.control >= 0) out << " <- q" << g.control;
    if (g.param >= 0) out << " theta[" << g.param << "]";
    else if (is_parameterized(g.kind)) out << " " << g.angle;
    out << '\n';
  }
  return out.str();
}

int AnsatzConfig::word_qubits(PartOfSpeech pos) const {
  int k = 0;
  for (const auto& t : type_of(pos)) k += width(t.base);
  return k;
}

QubitLayout QubitLayout::allocate(const Diagram& diagram, int qubits_per_n) {
  if (qubits_per_n < 1) throw Error(ErrorKind::Config, "qubits_per_n must be at least 1");
  QubitLayout layout;
  layout.qubits_per_n = qubits_per_n;
  int next = 0;
  for (const auto& t : diagram.wire_types()) {
    const int w = t.base == Base::s ? layout.qubits_per_s : qubits_per_n;
    std::vector<int> qs(w);
    for (int i = 0; i < w; ++i) qs[i] = next++;
    layout.wire_qubits.push_back(std::move(qs));
  }
  layout.n_qubits = next;
  return layout;
}

std::vector<int> QubitLayout::box_qubits(const Diagram& diagram, int box) const {
  std::vector<int> out;
  const int first = diagram.first_wire(box);
  const int n = static_cast<int>(diagram.boxes[box].output_wires.size());
  for (int w = first; w < first + n; ++w)
    out.insert(out.end(), wire_qubits[w].begin(), wire_qubits[w].end());
  return out;
}

// ---------------------------------------------------------------------------

ParameterStore::ParameterStore(std::vector<WordKey> words, AnsatzConfig config) : config_(config) {
  if (config.depth < 0) throw Error(ErrorKind::Config, "ansatz depth must be non-negative");
  if (config.qubits_per_n < 1) throw Error(ErrorKind::Config, "qubits_per_n must be at least 1");
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  int offset = 0;
  for (auto& w : words) {
    const int count = parameter_count(config.word_qubits(w.second), config.depth);
    slices_.emplace(std::move(w), Slice{offset, count});
    offset += count;
  }
  values_ = Eigen::VectorXd::Zero(offset);
}

bool ParameterStore::contains(const std::string& token, PartOfSpeech pos) const {
  return slices_.count({token, pos}) != 0;
}

ParameterStore::Slice ParameterStore::slice(const std::string& token, PartOfSpeech pos) const {
  auto it = slices_.find({token, pos});
  if (it == slices_.end()) {
    throw Error(ErrorKind::MissingParameters,
                "no parameters for '" + token + "' (" + std::string(to_string(pos)) + ")");
  }
  return it->second;
}

std::vector<int> ParameterStore::slots(const std::string& token, PartOfSpeech pos) const {
  const auto s = slice(token, pos);
  std::vector<int> out(s.count);
  for (int i = 0; i < s.count; ++i) out[i] = s.offset + i;
  return out;
}

std::span<const double> ParameterStore::angles(const std::string& token, PartOfSpeech pos) const {
  const auto s = slice(token, pos);
  return {values_.data() + s.offset, static_cast<std::size_t>(s.count)};
}

void ParameterStore::set_angles(const std::string& token, PartOfSpeech pos,
                                std::span<const double> angles) {
  const auto s = slice(token, pos);
  if (static_cast<int>(angles.size()) != s.count) {
    throw Error(ErrorKind::ArityMismatch, "'" + token + "' takes " + std::to_string(s.count) +
                                              " angles, got " + std::to_string(angles.size()));
  }
  std::copy(angles.begin(), angles.end(), values_.data() + s.offset);
}

int parameter_count(int k_qubits, int depth) {
  if (k_qubits == 1) return 3;
  return depth * (k_qubits - 1);
}

std::vector<Gate> word_ansatz(int k_qubits, int depth, std::span<const int> slots) {
  if (k_qubits < 1) throw Error(ErrorKind::ArityMismatch, "a word needs at least one qubit");
  const int expected = parameter_count(k_qubits, depth);
  if (static_cast<int>(slots.size()) != expected) {
    throw Error(ErrorKind::ArityMismatch, std::to_string(k_qubits) + "-qubit ansatz of depth " +
                                              std::to_string(depth) + " takes " +
                                              std::to_string(expected) + " parameters, got " +
                                              std::to_string(slots.size()));
  }
  std::vector<Gate> gates;
  if (k_qubits == 1) {
    gates.push_back({GateKind::RZ, 0, -1, slots[0]});
    gates.push_back({GateKind::RX, 0, -1, slots[1]});
    gates.push_back({GateKind::RZ, 0, -1, slots[2]});
    return gates;
  }
  std::size_t next = 0;
  for (int layer = 0; layer < depth; ++layer) {
    for (int q = 0; q < k_qubits; ++q) gates.push_back({GateKind::H, q});
    for (int q = 0; q + 1 < k_qubits; ++q)
      gates.push_back({GateKind::CRZ, q + 1, q, slots[next++]});
  }
  return gates;
}

CupLowering lower_cup(std::span<const int> wire_a, std::span<const int> wire_b) {
  if (wire_a.size() != wire_b.size() || wire_a.empty()) {
    throw Error(ErrorKind::WidthMismatch, "cup between wires of width " +
                                              std::to_string(wire_a.size()) + " and " +
                                              std::to_string(wire_b.size()));
  }
  CupLowering out;
  const std::size_t q = wire_a.size();
  for (std::size_t i = 0; i < q; ++i) {
    const int a = wire_a[i];
    const int b = wire_b[q - 1 - i];
    out.gates.push_back({GateKind::CX, b, a});
    out.gates.push_back({GateKind::H, a});
    out.postselect.push_back(a);
    out.postselect.push_back(b);
  }
  return out;
}

Circuit compile(const Diagram& diagram, const ParameterStore& store, const QubitLayout& layout) {
  if (diagram.boxes.empty())
    throw Error(ErrorKind::TemplateMismatch, "cannot compile an empty diagram");
  if (layout.qubits_per_n != store.config().qubits_per_n) {
    throw Error(ErrorKind::WidthMismatch, "layout uses " + std::to_string(layout.qubits_per_n) +
                                              " qubits per n, parameters were built for " +
                                              std::to_string(store.config().qubits_per_n));
  }
  Circuit c;
  c.n_qubits = layout.n_qubits;
  for (int b = 0; b < static_cast<int>(diagram.boxes.size()); ++b) {
    const auto& box = diagram.boxes[b];
    const auto qubits = layout.box_qubits(diagram, b);
    const auto slots = store.slots(box.token, box.pos);
    for (auto g : word_ansatz(static_cast<int>(qubits.size()), store.config().depth, slots)) {
      g.target = qubits[g.target];
      if (g.control >= 0) g.control = qubits[g.control];
      c.gates.push_back(g);
    }
  }
  for (const auto& [a, b] : diagram.cups.pairs) {
    auto cup = lower_cup(layout.wire_qubits[a], layout.wire_qubits[b]);
    c.gates.insert(c.gates.end(), cup.gates.begin(), cup.gates.end());
    c.postselect_zero.insert(c.postselect_zero.end(), cup.postselect.begin(), cup.postselect.end());
  }
  std::sort(c.postselect_zero.begin(), c.postselect_zero.end());
  const auto& s = layout.wire_qubits[diagram.sentence_wire];
  c.result_qubits = {s[0], s[1]};
  return c;
}

Circuit compile(const Diagram& diagram, const ParameterStore& store) {
  return compile(diagram, store, QubitLayout::allocate(diagram, store.config().qubits_per_n));
}

ParameterStore init_parameters(const std::vector<WordKey>& vocabulary, AnsatzConfig config,
                               std::uint64_t seed) {
  ParameterStore store(vocabulary, config);
  store.seed = seed;
  Rng rng(seed);
  for (auto& v : store.values()) v = 2.0 * std::numbers::pi * rng.uniform();
  return store;
}

std::vector<WordKey> vocabulary(const Lexicon& lexicon) {
  std::vector<WordKey> out;
  for (const auto& e : lexicon.entries()) out.emplace_back(e.token, e.pos);
  return out;
}

} // namespace qnlp
