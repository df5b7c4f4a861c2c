// Multiplexed-rotation cascade state preparation, plus the shared prep-cascade
// emitter used by every method that loads a small dense register.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "qdl/metrics.hpp"
#include "qdl/stateprep.hpp"
#include "synth_common.hpp"

namespace qdl {

namespace {

bool is_real_vector(const CVector& v) {
  for (const Complex& c : v) {
    if (c.imag() != 0.0) return false;
  }
  return true;
}

}  // namespace

GroverRudolphAngles grover_rudolph_angles(const TargetVector& target) {
  const int n = target.n_qubits;
  const std::size_t dim = target.dim();
  if (dim != (std::size_t{1} << n)) throw DimensionError("target length mismatch");
  GroverRudolphAngles out;
  out.ry_levels.resize(n);
  const bool real_input = is_real_vector(target.amplitudes);

  // Subtree amplitude tree. Real inputs keep their signs in the leaves so the
  // rotations are signed and no phase layer is needed; complex inputs use
  // magnitudes plus a phase cascade.
  RVector level(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    level[j] = real_input ? target.amplitudes[j].real() : std::abs(target.amplitudes[j]);
  }
  for (int k = n - 1; k >= 0; --k) {
    const std::size_t width = std::size_t{1} << k;
    RVector parent(width);
    out.ry_levels[k].resize(width);
    for (std::size_t j = 0; j < width; ++j) {
      const double left = level[2 * j], right = level[2 * j + 1];
      parent[j] = std::hypot(left, right);
      out.ry_levels[k][j] = parent[j] > 0.0 ? 2.0 * std::atan2(right, left) : 0.0;
    }
    level = std::move(parent);
  }

  if (!real_input) {
    out.has_phases = true;
    out.rz_levels.resize(n);
    RVector phases(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      const Complex& a = target.amplitudes[j];
      phases[j] = (a == Complex(0.0, 0.0)) ? 0.0 : std::arg(a);
    }
    for (int k = n - 1; k >= 0; --k) {
      const std::size_t width = std::size_t{1} << k;
      RVector up(width);
      out.rz_levels[k].resize(width);
      for (std::size_t j = 0; j < width; ++j) {
        out.rz_levels[k][j] = phases[2 * j + 1] - phases[2 * j];
        up[j] = 0.5 * (phases[2 * j] + phases[2 * j + 1]);
      }
      phases = std::move(up);
    }
    out.global_phase = phases[0];
  }
  return out;
}

namespace detail {

void append_prep_cascade(CircuitIR& ir, const std::vector<int>& qubits, const CVector& amps) {
  const int n = static_cast<int>(qubits.size());
  if (amps.size() != (std::size_t{1} << n)) {
    throw DimensionError("prep cascade register size mismatch");
  }
  TargetVector tmp;
  tmp.n_qubits = n;
  tmp.amplitudes = amps;
  tmp.task = Task::StatePrep;
  tmp = validate_target(tmp);
  const GroverRudolphAngles gr = grover_rudolph_angles(tmp);
  auto selectors = [&](int k) {
    std::vector<std::pair<int, bool>> c;
    c.reserve(k);
    for (int i = 0; i < k; ++i) c.emplace_back(qubits[i], true);
    return c;
  };
  for (int k = 0; k < n; ++k) {
    GateRecord g;
    g.kind = k == 0 ? GateKind::RY : GateKind::MultiplexedRY;
    g.targets = {qubits[k]};
    if (k > 0) g.controls = selectors(k);
    g.params = gr.ry_levels[k];
    ir.gates.push_back(std::move(g));
  }
  if (gr.has_phases) {
    for (int k = 0; k < n; ++k) {
      GateRecord g;
      g.kind = k == 0 ? GateKind::RZ : GateKind::MultiplexedRZ;
      g.targets = {qubits[k]};
      if (k > 0) g.controls = selectors(k);
      g.params = gr.rz_levels[k];
      ir.gates.push_back(std::move(g));
    }
    ir.global_phase += gr.global_phase;
  }
}

double rotation_budget(const CircuitIR& ir, const CostConfig& cfg, double eps_p) {
  const long long rotations = estimate_circuit(ir, cfg, 0.5).rotation_count;
  return eps_p / std::sqrt(static_cast<double>(std::max<long long>(rotations, 1)));
}

void finalize_with_circuit(SynthResult& result, const ErrorBudget& budget,
                           const SynthOptions& opts, double delta_g) {
  // Round-trip-exact float metadata: verification rebuilds its error bound
  // from these strings.
  auto fmt = [](double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
  };
  result.plan.budget = budget;
  if (!result.circuit.gates.empty() || result.circuit.total_qubits() > 0) {
    validate_circuit(result.circuit);
    result.plan.resources = estimate_circuit(result.circuit, opts.cost, delta_g);
    result.circuit.set_metadata("method", method_name(result.plan.method));
    result.circuit.set_metadata("eps_a_predicted", fmt(result.plan.eps_a_predicted));
    result.circuit.set_metadata("omega", fmt(budget.omega));
    result.circuit.set_metadata("epsilon", fmt(budget.epsilon));
    if (result.circuit.total_qubits() > opts.emit_qubit_limit) {
      result.circuit = CircuitIR{};
      result.plan.note = result.plan.note.empty()
                             ? "estimate only: register exceeds the emission limit"
                             : result.plan.note;
    }
  }
}

}  // namespace detail

SynthResult synth_mottonen(const TargetVector& target, const ErrorBudget& budget,
                           const SynthOptions& opts) {
  const int n = target.n_qubits;
  const double delta = solve_mottonen(n, budget.eps_p);
  SynthResult result;
  result.plan.method = Method::Mottonen;
  result.plan.hyperparams["delta_rotation"] = delta;
  result.plan.eps_a_predicted = 0.0;
  result.plan.feasible = true;

  if (n <= opts.emit_qubit_limit) {
    result.circuit.num_system_qubits = n;
    std::vector<int> qubits(n);
    for (int i = 0; i < n; ++i) qubits[i] = i;
    detail::append_prep_cascade(result.circuit, qubits, target.amplitudes);
  } else {
    // Closed-form upper bound (assumes no identity elision): the cascade has
    // 2^n - 1 rotations and 2^n - 2 multiplexing CNOTs, doubled for a phase
    // layer on complex inputs.
    const double pow2n = std::pow(2.0, n);
    long long rot = static_cast<long long>(pow2n) - 1;
    long long cnot = static_cast<long long>(pow2n) - 2;
    bool complex_input = false;
    for (const Complex& c : target.amplitudes) {
      if (c.imag() != 0.0) {
        complex_input = true;
        break;
      }
    }
    if (complex_input) {
      rot *= 2;
      cnot *= 2;
    }
    result.plan.resources.rotation_count = rot;
    result.plan.resources.cnot_count = cnot;
    result.plan.resources.t_count = rot * t_count_for_rotation(delta, opts.cost);
    result.plan.resources.total_qubits = n;
    result.plan.note = "estimate only: register exceeds the emission limit";
  }
  detail::finalize_with_circuit(result, budget, opts, delta);
  return result;
}

}  // namespace qdl
