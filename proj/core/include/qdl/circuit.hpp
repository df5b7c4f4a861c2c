// Semantic circuit IR: gate records carry enough structure for the dense
// simulator to interpret them functionally and for the cost model to price
// them by formula, without Clifford+T decomposition.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdl/types.hpp"

namespace qdl {

enum class GateKind {
  H,
  X,
  S,
  RY,
  RZ,
  CNOT,
  SWAP,
  ControlledRZ,
  MultiplexedRY,
  MultiplexedRZ,
  QROMLookup,
  InPlaceAdder,
  ConstantAdder,
  Comparator,
  CSwap,
  BlockGate,
};

std::string gate_kind_name(GateKind k);
GateKind gate_kind_from_name(const std::string& name);

// Pre-computed cost attached to a BlockGate (or any record) that overrides the
// generic formula. T-count is still derived from rotations/toffolis so that
// delta_g monotonicity holds.
struct PreCost {
  long long rotations = 0;
  long long cnots = 0;
  long long toffolis = 0;
  long long ancillas = 0;
};

// Dense or functional payload of a BlockGate.
struct BlockSpec {
  std::string label;
  // Row-major dense unitary over the record's target qubits (big-endian in
  // listed order). Empty for functional blocks interpreted by label ("iqft").
  CVector matrix;
  std::optional<PreCost> cost;
};

struct GateRecord {
  GateKind kind = GateKind::H;
  std::vector<int> targets;
  // (qubit, polarity): polarity true = control on |1>. Controls generalize
  // every kind (used by hybrid segment wrapping and LCU select branches).
  std::vector<std::pair<int, bool>> controls;
  // Rotation angles in radians. Multiplexers hold 2^c branch angles ordered by
  // the big-endian value of their control pattern.
  RVector params;
  // Integer payload: QROMLookup table (index value -> data XOR mask),
  // adder constants, comparator register split.
  std::vector<long long> table;
  std::optional<BlockSpec> block;
  // Cost-model hint, e.g. "angle-register(18)" or "phase-gradient(18)" on the
  // exact multiplexer inside a lookup-based rotation cascade.
  std::string cost_hint;
};

struct CircuitIR {
  int num_system_qubits = 0;
  int num_ancilla_qubits = 0;
  std::vector<GateRecord> gates;
  // Applied once by the simulator; free in the cost model.
  double global_phase = 0.0;
  // Free-form annotations (method name, bounds) carried into circuit files so
  // verification can run without the plan file.
  std::vector<std::pair<std::string, std::string>> metadata;

  int total_qubits() const { return num_system_qubits + num_ancilla_qubits; }
  void append(const CircuitIR& other);
  const std::string* find_metadata(const std::string& key) const;
  void set_metadata(const std::string& key, const std::string& value);
};

// Structural validation: indices in range, targets/controls disjoint within a
// record, payloads present exactly where the kind requires them.
void validate_circuit(const CircuitIR& ir);

// Reverses a circuit built from invertible records (rotations, multiplexers,
// H/S/X/CNOT/SWAP, XOR lookups, adders, dense blocks). Used for Prep^dagger.
CircuitIR invert_circuit(const CircuitIR& ir);

// Returns a copy with every gate gaining the given controls (hybrid wrapping).
CircuitIR add_controls(const CircuitIR& ir, const std::vector<std::pair<int, bool>>& extra);

}  // namespace qdl
