// Lookup-based rotation cascade: per level, a table lookup loads quantized
// angle codes into an angle register, the rotation is driven from that
// register (angle-register or phase-gradient realization), and the lookup is
// uncomputed. The emitted multiplexer carries the exact angles, so simulation
// is exact; quantization lives in the cost model and the precision budget.
#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdl/stateprep.hpp"
#include "synth_common.hpp"

namespace qdl {

namespace {

// Quantizes an angle to an m-bit code of its fraction of a full turn.
long long angle_code(double theta, int m) {
  // Grid over a full 4*pi rotation period so signed angles never wrap into a
  // branch sign flip; the half-step operator error is pi/2^m.
  const double turns = theta / (4.0 * std::numbers::pi);
  const double scaled = turns * std::pow(2.0, m);
  long long code = static_cast<long long>(std::llround(scaled));
  const long long cap = 1LL << m;
  code %= cap;
  if (code < 0) code += cap;
  return code;
}

bool all_zero_angles(const RVector& v) {
  return std::all_of(v.begin(), v.end(), [](double a) { return a == 0.0; });
}

}  // namespace

SynthResult synth_qrom_stateprep(const TargetVector& target, const ErrorBudget& budget,
                                 bool use_phase_gradient, const SynthOptions& opts) {
  const int n = target.n_qubits;
  const int m = solve_qrom_bits(n, budget.eps_p);
  const double delta = solve_mottonen(n, budget.eps_p);  // the direct level-0 rotation
  const std::string hint =
      (use_phase_gradient ? "phase-gradient(" : "angle-register(") + std::to_string(m) + ")";

  SynthResult result;
  result.plan.method = Method::QromStatePrep;
  result.plan.hyperparams["m"] = m;
  result.plan.hyperparams["delta_rotation"] = delta;
  result.plan.eps_a_predicted = 0.0;
  result.plan.feasible = true;

  if (n + m <= opts.emit_qubit_limit) {
    const GroverRudolphAngles gr = grover_rudolph_angles(target);
    CircuitIR& ir = result.circuit;
    ir.num_system_qubits = n;
    ir.num_ancilla_qubits = m;  // the angle register
    auto emit_levels = [&](const std::vector<RVector>& levels, bool is_ry) {
      for (int k = 0; k < static_cast<int>(levels.size()); ++k) {
        const RVector& angles = levels[k];
        if (k == 0) {
          GateRecord g;
          g.kind = is_ry ? GateKind::RY : GateKind::RZ;
          g.targets = {0};
          g.params = angles;
          ir.gates.push_back(std::move(g));
          continue;
        }
        GateRecord load;
        load.kind = GateKind::QROMLookup;
        for (int i = 0; i < k; ++i) load.controls.emplace_back(i, true);
        for (int b = 0; b < m; ++b) load.targets.push_back(n + b);
        load.table.resize(std::size_t{1} << k);
        for (std::size_t j = 0; j < angles.size(); ++j) load.table[j] = angle_code(angles[j], m);
        const bool dead = all_zero_angles(angles);

        GateRecord rot;
        rot.kind = is_ry ? GateKind::MultiplexedRY : GateKind::MultiplexedRZ;
        rot.targets = {k};
        for (int i = 0; i < k; ++i) rot.controls.emplace_back(i, true);
        rot.params = angles;
        if (!dead) rot.cost_hint = hint;

        ir.gates.push_back(load);              // compute
        ir.gates.push_back(std::move(rot));    // register-driven rotation
        ir.gates.push_back(std::move(load));   // uncompute (XOR involution)
      }
    };
    emit_levels(gr.ry_levels, /*is_ry=*/true);
    if (gr.has_phases) {
      emit_levels(gr.rz_levels, /*is_ry=*/false);
      ir.global_phase += gr.global_phase;
    }
  } else {
    // Closed form, dense-table assumption: per level k >= 1, two lookups of
    // 2^k entries of m bits plus the register-driven rotation; level 0 is one
    // direct rotation.
    ResourceEstimate acc;
    acc.total_qubits = n + m;
    bool complex_input = false;
    for (const Complex& c : target.amplitudes) {
      if (c.imag() != 0.0) {
        complex_input = true;
        break;
      }
    }
    const int layers = complex_input ? 2 : 1;
    for (int layer = 0; layer < layers; ++layer) {
      ResourceEstimate e;
      e.rotation_count += 1;
      e.t_count += t_count_for_rotation(delta, opts.cost);
      e.total_qubits = n + m;
      acc += e;
      for (int k = 1; k < n; ++k) {
        const QromCost qc = qrom_cost(1LL << k, m, opts.cost);
        ResourceEstimate lv;
        lv.toffoli_count = 2 * qc.toffolis;
        lv.t_count = 2 * qc.t_count;
        lv.cnot_count = 2 * qc.cnots;
        lv.ancilla_qubits = 2 * qc.ancillas;
        lv.total_qubits = n + m + qc.ancillas;
        if (use_phase_gradient) {
          lv.toffoli_count += 2 * m;
          lv.t_count += 2LL * m * opts.cost.toffoli_t_cost;
        } else {
          lv.rotation_count += 2 * m;
          lv.cnot_count += 2 * m;
          lv.t_count += 2LL * m * t_count_for_rotation(delta, opts.cost);
        }
        acc += lv;
      }
    }
    result.plan.resources = acc;
    result.plan.note = "estimate only: register exceeds the emission limit";
  }
  detail::finalize_with_circuit(result, budget, opts, delta);
  return result;
}

}  // namespace qdl
