#include "qdl/circuit.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace qdl {

namespace {

const std::array<std::pair<GateKind, const char*>, 16> kKindNames = {{
    {GateKind::H, "H"},
    {GateKind::X, "X"},
    {GateKind::S, "S"},
    {GateKind::RY, "RY"},
    {GateKind::RZ, "RZ"},
    {GateKind::CNOT, "CNOT"},
    {GateKind::SWAP, "SWAP"},
    {GateKind::ControlledRZ, "ControlledRZ"},
    {GateKind::MultiplexedRY, "MultiplexedRY"},
    {GateKind::MultiplexedRZ, "MultiplexedRZ"},
    {GateKind::QROMLookup, "QROMLookup"},
    {GateKind::InPlaceAdder, "InPlaceAdder"},
    {GateKind::ConstantAdder, "ConstantAdder"},
    {GateKind::Comparator, "Comparator"},
    {GateKind::CSwap, "CSwap"},
    {GateKind::BlockGate, "BlockGate"},
}};

bool is_rotation_like(GateKind k) {
  return k == GateKind::RY || k == GateKind::RZ || k == GateKind::ControlledRZ ||
         k == GateKind::MultiplexedRY || k == GateKind::MultiplexedRZ;
}

}  // namespace

std::string gate_kind_name(GateKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  throw ValidationError("unknown gate kind");
}

GateKind gate_kind_from_name(const std::string& name) {
  for (const auto& [kind, kname] : kKindNames) {
    if (name == kname) return kind;
  }
  throw ValidationError("unknown gate kind: " + name);
}

void CircuitIR::append(const CircuitIR& other) {
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
  global_phase += other.global_phase;
}

const std::string* CircuitIR::find_metadata(const std::string& key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return &v;
  }
  return nullptr;
}

void CircuitIR::set_metadata(const std::string& key, const std::string& value) {
  for (auto& [k, v] : metadata) {
    if (k == key) {
      v = value;
      return;
    }
  }
  metadata.emplace_back(key, value);
}

void validate_circuit(const CircuitIR& ir) {
  const int total = ir.total_qubits();
  if (ir.num_system_qubits < 0 || ir.num_ancilla_qubits < 0) {
    throw ValidationError("negative register size");
  }
  for (std::size_t gi = 0; gi < ir.gates.size(); ++gi) {
    const GateRecord& g = ir.gates[gi];
    const std::string where = "gate " + std::to_string(gi) + " (" + gate_kind_name(g.kind) + ")";
    std::set<int> seen;
    auto check_qubit = [&](int q) {
      if (q < 0 || q >= total) throw ValidationError(where + ": qubit index out of range");
      if (!seen.insert(q).second) throw ValidationError(where + ": repeated qubit index");
    };
    for (int t : g.targets) check_qubit(t);
    for (const auto& [c, pol] : g.controls) {
      (void)pol;
      check_qubit(c);
    }
    if (is_rotation_like(g.kind)) {
      if (g.params.empty()) throw ValidationError(where + ": rotation without angles");
      if ((g.kind == GateKind::MultiplexedRY || g.kind == GateKind::MultiplexedRZ)) {
        // Branch angles must cover every control pattern of the record's own
        // multiplexing controls (extra controls added by hybrid wrapping are
        // appended after the original ones, so params may legally cover a
        // prefix power of two).
        if ((g.params.size() & (g.params.size() - 1)) != 0) {
          throw ValidationError(where + ": multiplexer branch count must be a power of two");
        }
        if (g.params.size() > (std::size_t{1} << g.controls.size())) {
          throw ValidationError(where + ": more branches than control patterns");
        }
      }
    } else if (g.kind != GateKind::BlockGate && !g.params.empty()) {
      throw ValidationError(where + ": params present on a non-rotation record");
    }
    if (g.kind == GateKind::QROMLookup && g.table.empty()) {
      throw ValidationError(where + ": lookup without table");
    }
    if (g.kind == GateKind::ConstantAdder && g.table.size() != 1) {
      throw ValidationError(where + ": constant adder needs exactly one constant");
    }
    if (g.kind == GateKind::Comparator && g.table.size() != 1) {
      throw ValidationError(where + ": comparator needs its register split");
    }
    if (g.kind == GateKind::BlockGate) {
      if (!g.block.has_value()) throw ValidationError(where + ": block gate without payload");
      if (!g.block->matrix.empty()) {
        const std::size_t dim = std::size_t{1} << g.targets.size();
        if (g.block->matrix.size() != dim * dim) {
          throw ValidationError(where + ": block matrix dimension mismatch");
        }
      }
    }
    if (g.kind == GateKind::CNOT && (g.targets.size() != 1 || g.controls.size() < 1)) {
      throw ValidationError(where + ": CNOT needs one target and at least one control");
    }
    if (g.kind == GateKind::SWAP && g.targets.size() != 2) {
      throw ValidationError(where + ": SWAP needs two targets");
    }
    if (g.kind == GateKind::CSwap && (g.targets.size() != 2 || g.controls.empty())) {
      throw ValidationError(where + ": CSwap needs two targets and a control");
    }
  }
}

CircuitIR invert_circuit(const CircuitIR& ir) {
  CircuitIR out;
  out.num_system_qubits = ir.num_system_qubits;
  out.num_ancilla_qubits = ir.num_ancilla_qubits;
  out.global_phase = -ir.global_phase;
  out.gates.reserve(ir.gates.size());
  for (auto it = ir.gates.rbegin(); it != ir.gates.rend(); ++it) {
    GateRecord g = *it;
    switch (g.kind) {
      case GateKind::H:
      case GateKind::X:
      case GateKind::CNOT:
      case GateKind::SWAP:
      case GateKind::CSwap:
      case GateKind::QROMLookup:  // XOR write is an involution
      case GateKind::Comparator:  // XOR flag flip is an involution
        break;
      case GateKind::S: {
        // S^dagger = S^3: emit three copies.
        out.gates.push_back(g);
        out.gates.push_back(g);
        break;
      }
      case GateKind::RY:
      case GateKind::RZ:
      case GateKind::ControlledRZ:
      case GateKind::MultiplexedRY:
      case GateKind::MultiplexedRZ:
        for (double& a : g.params) a = -a;
        break;
      case GateKind::InPlaceAdder:
        // Register-to-register addition inverts by adding the two's
        // complement; flag it via the table marker.
        if (g.table.empty()) {
          g.table = {-1};
        } else {
          g.table[0] = g.table[0] == 0 ? -1 : -g.table[0];
        }
        break;
      case GateKind::ConstantAdder:
        g.table[0] = -g.table[0];
        break;
      case GateKind::BlockGate: {
        if (!g.block.has_value() || g.block->matrix.empty()) {
          throw UnsupportedError("cannot invert a functional block gate");
        }
        const std::size_t dim = std::size_t{1} << g.targets.size();
        CVector adj(dim * dim);
        for (std::size_t r = 0; r < dim; ++r) {
          for (std::size_t c = 0; c < dim; ++c) {
            adj[c * dim + r] = std::conj(g.block->matrix[r * dim + c]);
          }
        }
        g.block->matrix = std::move(adj);
        g.block->label += "-dagger";
        break;
      }
    }
    out.gates.push_back(std::move(g));
  }
  return out;
}

CircuitIR add_controls(const CircuitIR& ir, const std::vector<std::pair<int, bool>>& extra) {
  CircuitIR out = ir;
  for (GateRecord& g : out.gates) {
    g.controls.insert(g.controls.end(), extra.begin(), extra.end());
  }
  return out;
}

}  // namespace qdl
