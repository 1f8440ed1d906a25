#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "qnlp/circuit.hpp"
#include "qnlp/diagram.hpp"
#include "qnlp/grammar.hpp"

namespace qnlp {

/// Knobs that fix the shape (not the values) of every word's ansatz.
struct AnsatzConfig {
  int qubits_per_n = 2;
  int depth = 2;

  static constexpr int qubits_per_s = 2;

  int width(Base base) const { return base == Base::s ? qubits_per_s : qubits_per_n; }
  int word_qubits(PartOfSpeech pos) const;

  friend bool operator==(const AnsatzConfig&, const AnsatzConfig&) = default;
};

/// Qubit allocation for one diagram: wires get contiguous qubits in wire order.
struct QubitLayout {
  int qubits_per_n = 2;
  int qubits_per_s = AnsatzConfig::qubits_per_s;
  std::vector<std::vector<int>> wire_qubits;
  int n_qubits = 0;

  static QubitLayout allocate(const Diagram& diagram, int qubits_per_n);

  /// Qubits of box `box`, in order.
  std::vector<int> box_qubits(const Diagram& diagram, int box) const;
};

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

using WordKey = std::pair<std::string, PartOfSpeech>;

/// Angles for every (token, part of speech), stored as contiguous slices of
/// one flat vector so optimizers see a single parameter vector. A word has
/// the same slice in every sentence it appears in.
class ParameterStore {
public:
  struct Slice {
    int offset = 0;
    int count = 0;
  };

  ParameterStore() = default;
  /// Allocates zero angles for each word; keys are sorted so slot numbering
  /// never depends on input order.
  ParameterStore(std::vector<WordKey> words, AnsatzConfig config);

  const AnsatzConfig& config() const { return config_; }
  bool contains(const std::string& token, PartOfSpeech pos) const;
  /// Throws MissingParameters.
  Slice slice(const std::string& token, PartOfSpeech pos) const;
  std::vector<int> slots(const std::string& token, PartOfSpeech pos) const;

  std::span<const double> angles(const std::string& token, PartOfSpeech pos) const;
  void set_angles(const std::string& token, PartOfSpeech pos, std::span<const double> angles);

  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }
  int total_count() const { return static_cast<int>(values_.size()); }
  const std::map<WordKey, Slice>& slices() const { return slices_; }

  std::uint64_t seed = 0;

private:
  AnsatzConfig config_;
  std::map<WordKey, Slice> slices_;
  Eigen::VectorXd values_;
};

int parameter_count(int k_qubits, int depth);

/// Word state preparation on local qubits 0..k-1. For k >= 2: `depth` layers
/// of [H on every qubit, CRZ(theta) on each adjacent pair (j, j+1)]. For
/// k = 1: RZ RX RZ. Throws ArityMismatch when the slot count is wrong.
std::vector<Gate> word_ansatz(int k_qubits, int depth, std::span<const int> slots);

struct CupLowering {
  std::vector<Gate> gates;
  std::vector<int> postselect;
};

/// Bell effect between two equal-width wires: qubit i of the left wire is
/// paired with qubit q-1-i of the right one, each pair gets CX(a -> b) then
/// H(a), and both qubits are post-selected on 0. Throws WidthMismatch.
CupLowering lower_cup(std::span<const int> wire_a, std::span<const int> wire_b);

/// Throws MissingParameters when a word has no angles in the store.
Circuit compile(const Diagram& diagram, const ParameterStore& store, const QubitLayout& layout);
Circuit compile(const Diagram& diagram, const ParameterStore& store);

/// Uniform angles in [0, 2*pi) for every word, drawn in sorted key order.
ParameterStore init_parameters(const std::vector<WordKey>& vocabulary, AnsatzConfig config,
                               std::uint64_t seed);
std::vector<WordKey> vocabulary(const Lexicon& lexicon);

// ---------------------------------------------------------------------------
// Checkpoint file
// ---------------------------------------------------------------------------

/// Header `# qnlp-params depth=D qubits_per_n=Q seed=S`, then
/// `token<TAB>pos<TAB>a1,a2,...` with 17 significant digits.
void write_checkpoint(std::ostream& out, const ParameterStore& store);
void write_checkpoint_file(const std::string& path, const ParameterStore& store);
ParameterStore read_checkpoint(std::istream& in, const std::string& source = "<checkpoint>");
ParameterStore read_checkpoint_file(const std::string& path);

} // namespace qnlp
