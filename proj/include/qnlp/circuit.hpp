#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qnlp {

enum class GateKind : std::uint8_t { H, RX, RZ, CX, CRZ };

std::string_view to_string(GateKind kind);

constexpr bool is_two_qubit(GateKind kind) { return kind == GateKind::CX || kind == GateKind::CRZ; }
constexpr bool is_parameterized(GateKind kind) {
  return kind == GateKind::RX || kind == GateKind::RZ || kind == GateKind::CRZ;
}

/// One gate application. Rotation angles come either from a parameter slot
/// (param >= 0, resolved against a flat parameter vector at run time) or
/// from the literal `angle`.
struct Gate {
  GateKind kind = GateKind::H;
  int target = 0;
  int control = -1;
  int param = -1;
  double angle = 0.0;

  double resolve(std::span<const double> params) const { return param >= 0 ? params[param] : angle; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  std::vector<int> postselect_zero; // ascending
  std::array<int, 2> result_qubits{0, 1};

  /// Highest parameter slot referenced plus one.
  int parameter_extent() const;
  /// One line per gate, e.g. "CRZ q3 <- q2 theta[17]".
  std::string listing() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

} // namespace qnlp
