// Block encodings composed from the diagonal encoders: a banded operator with
// all band shifts funneled through ONE in-place adder, and the three-axis
// squared-coordinate (kinetic) operator as a three-branch LCU.
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "qdl/blockenc.hpp"
#include "qdl/diagenc.hpp"
#include "qdl/metrics.hpp"
#include "synth_common.hpp"

namespace qdl {

double DDiagonalSpec::lcu_norm() const {
  double lambda = 0.0;
  for (const DiagonalBand& band : diagonals) lambda += band.weight;
  return lambda;
}

AdderCount adder_count(const DDiagonalSpec& spec) {
  return AdderCount{1, spec.d()};
}

namespace {

void check_ddiagonal(const DDiagonalSpec& spec) {
  if (spec.n_qubits < 1) throw DomainError("need at least one qubit");
  if (spec.diagonals.empty()) throw DimensionError("no diagonal bands");
  const std::size_t dim = std::size_t{1} << spec.n_qubits;
  for (const DiagonalBand& band : spec.diagonals) {
    if (!(band.weight > 0.0)) throw DomainError("band weights must be positive");
    if (std::llabs(band.shift) >= static_cast<long long>(dim)) {
      throw DomainError("band shift out of range");
    }
    if (band.entries.size() != dim) throw DimensionError("band length mismatch");
    for (double c : band.entries) {
      if (std::abs(c) > 1.0 + 1e-12) throw NormViolationError("band entry outside [-1, 1]");
    }
  }
}

struct InnerPick {
  SynthResult result;
  bool valid = false;
};

// One-budget mini-sweep over the four diagonal encoders; cheapest feasible by
// T count, then CNOTs, then width, then declaration order.
InnerPick pick_diagonal_encoder(const TargetVector& inner, const ErrorBudget& budget,
                                const SynthOptions& opts) {
  std::vector<SynthResult> candidates;
  auto attempt = [&](auto&& synth) {
    try {
      candidates.push_back(synth());
    } catch (const Error&) {
      // an encoder that cannot handle this profile simply drops out
    }
  };
  attempt([&] { return synth_diag_multiplexer(inner, budget, false, opts); });
  attempt([&] { return synth_diag_multiplexer(inner, budget, true, opts); });
  attempt([&] { return synth_diag_qsp(inner, budget, 64, opts); });
  attempt([&] {
    WalshSynthOptions wopts;
    static_cast<SynthOptions&>(wopts) = opts;
    return synth_diag_walsh(inner, budget, wopts);
  });

  InnerPick pick;
  auto better = [](const SynthResult& a, const SynthResult& b) {
    if (a.plan.feasible != b.plan.feasible) return a.plan.feasible;
    const ResourceEstimate &ra = a.plan.resources, &rb = b.plan.resources;
    if (ra.t_count != rb.t_count) return ra.t_count < rb.t_count;
    if (ra.cnot_count != rb.cnot_count) return ra.cnot_count < rb.cnot_count;
    if (ra.total_qubits != rb.total_qubits) return ra.total_qubits < rb.total_qubits;
    return static_cast<int>(a.plan.method) < static_cast<int>(b.plan.method);
  };
  for (SynthResult& cand : candidates) {
    if (!pick.valid || better(cand, pick.result)) {
      pick.result = std::move(cand);
      pick.valid = true;
    }
  }
  return pick;
}

GateRecord shift_lookup(int n, int select_bits, const std::vector<long long>& table) {
  GateRecord g;
  g.kind = GateKind::QROMLookup;
  for (int b = 0; b < select_bits; ++b) g.controls.emplace_back(n + b, true);
  for (int q = 0; q < n; ++q) g.targets.push_back(n + select_bits + q);
  g.table = table;
  return g;
}

}  // namespace

SynthResult synth_ddiagonal(const DDiagonalSpec& spec, const ErrorBudget& budget,
                            const SynthOptions& opts) {
  check_ddiagonal(spec);
  const int n = spec.n_qubits;
  const std::size_t dim = std::size_t{1} << n;
  const long long d = spec.d();
  const int rs = detail::ceil_log2ll(d);
  const double lambda = spec.lcu_norm();

  // Unified diagonal over (select, system): branch i sees the band entries
  // re-indexed by the shifted coordinate; out-of-range rows carry zero so the
  // band never wraps around the register boundary.
  TargetVector inner;
  inner.n_qubits = rs + n;
  inner.task = Task::DiagonalEncode;
  inner.amplitudes.assign(std::size_t{1} << (rs + n), Complex(0.0, 0.0));
  for (long long i = 0; i < d; ++i) {
    const DiagonalBand& band = spec.diagonals[i];
    for (std::size_t pp = 0; pp < dim; ++pp) {
      const long long p = static_cast<long long>(pp) - band.shift;
      if (p >= 0 && p < static_cast<long long>(dim)) {
        inner.amplitudes[(static_cast<std::size_t>(i) << n) + pp] =
            Complex(band.entries[p], 0.0);
      }
    }
  }
  inner = validate_target(inner);

  ErrorBudget inner_budget = budget;
  inner_budget.eps_p = 0.9 * budget.eps_p;
  const InnerPick pick = pick_diagonal_encoder(inner, inner_budget, opts);
  if (!pick.valid) throw ValidationError("no diagonal encoder accepted the unified profile");
  const SynthResult& sub = pick.result;

  // Select-register load: Prep(sqrt(alpha/lambda)), exact nonnegative cascade.
  CircuitIR prep;
  prep.num_system_qubits = n;
  prep.num_ancilla_qubits = rs;
  double delta_prep = 1.0;
  if (rs > 0) {
    CVector slots(std::size_t{1} << rs, Complex(0.0, 0.0));
    for (long long i = 0; i < d; ++i) {
      slots[i] = Complex(std::sqrt(spec.diagonals[i].weight / lambda), 0.0);
    }
    std::vector<int> select(rs);
    for (int b = 0; b < rs; ++b) select[b] = n + b;
    detail::append_prep_cascade(prep, select, slots);
    const CircuitIR closing = invert_circuit(prep);
    const long long rot = estimate_circuit(prep, opts.cost, 0.5).rotation_count +
                          estimate_circuit(closing, opts.cost, 0.5).rotation_count;
    delta_prep = 0.1 * budget.eps_p / std::sqrt(static_cast<double>(std::max(rot, 1LL)));
  }

  std::vector<long long> shifts(std::size_t{1} << rs, 0);
  for (long long i = 0; i < d; ++i) {
    shifts[i] = ((spec.diagonals[i].shift % static_cast<long long>(dim)) +
                 static_cast<long long>(dim)) %
                static_cast<long long>(dim);
  }

  const double delta_inner = sub.plan.hyperparams.count("delta_rotation")
                                 ? sub.plan.hyperparams.at("delta_rotation")
                                 : 1.0;
  const double delta = std::min(delta_prep, delta_inner);

  SynthResult result;
  result.plan.method = sub.plan.method;
  result.plan.hyperparams = sub.plan.hyperparams;
  result.plan.hyperparams["bands"] = static_cast<double>(d);
  result.plan.hyperparams["lcu_norm"] = lambda;
  result.plan.hyperparams["delta_prep"] = delta_prep;
  result.plan.hyperparams["delta_inner"] = delta_inner;
  result.plan.hyperparams["delta_rotation"] = delta;
  result.plan.eps_a_predicted = sub.plan.eps_a_predicted;
  result.plan.feasible = sub.plan.feasible;
  result.plan.note = sub.plan.note;

  if (!sub.circuit.gates.empty()) {
    CircuitIR& ir = result.circuit;
    ir.num_system_qubits = n;
    ir.num_ancilla_qubits = rs + n + sub.circuit.num_ancilla_qubits;
    for (const GateRecord& g : prep.gates) ir.gates.push_back(g);
    const GateRecord load = shift_lookup(n, rs, shifts);
    ir.gates.push_back(load);
    {
      GateRecord add;
      add.kind = GateKind::InPlaceAdder;
      for (int q = 0; q < n; ++q) add.controls.emplace_back(n + rs + q, true);
      for (int q = 0; q < n; ++q) add.targets.push_back(q);
      ir.gates.push_back(std::move(add));
    }
    ir.gates.push_back(load);  // clear the shift register
    // Inner encoder over the unified (select, system) diagonal; its ancillas
    // move past the shift register.
    for (GateRecord g : sub.circuit.gates) {
      auto remap = [&](int q) {
        if (q < rs) return n + q;
        if (q < rs + n) return q - rs;
        return q + n;
      };
      for (int& t : g.targets) t = remap(t);
      for (auto& [q, pol] : g.controls) q = remap(q);
      ir.gates.push_back(std::move(g));
    }
    ir.global_phase += sub.circuit.global_phase;
    const CircuitIR closing = invert_circuit(prep);
    for (const GateRecord& g : closing.gates) ir.gates.push_back(g);
    ir.global_phase += prep.global_phase + closing.global_phase;
  } else {
    const long long base = 2LL * n + rs;  // system + select + shift registers
    ResourceEstimate acc = estimate_circuit(prep, opts.cost, delta);
    acc += estimate_circuit(invert_circuit(prep), opts.cost, delta);
    acc.total_qubits = std::max(acc.total_qubits, base);
    long long live = 0;
    for (long long s : shifts) live += s != 0 ? 1 : 0;
    if (live > 0) {
      const QromCost qc = qrom_cost(live, n, opts.cost);
      ResourceEstimate lookup;
      lookup.toffoli_count = qc.toffolis;
      lookup.t_count = qc.t_count;
      lookup.cnot_count = qc.cnots;
      lookup.ancilla_qubits = qc.ancillas;
      lookup.total_qubits = base + qc.ancillas;
      acc += lookup;
      acc += lookup;
    }
    ResourceEstimate adder;
    adder.toffoli_count =
        static_cast<long long>(std::ceil(opts.cost.adder_toffoli_per_bit * n));
    adder.t_count = adder.toffoli_count * opts.cost.toffoli_t_cost;
    acc += adder;
    ResourceEstimate body = sub.plan.resources;
    body.total_qubits += n;  // the inner register rides above the shift register
    acc += body;
    result.plan.resources = acc;
    result.plan.note = "estimate only: register exceeds the emission limit";
  }
  detail::finalize_with_circuit(result, budget, opts, delta);
  return result;
}

double KineticSpec::prefactor() const {
  const double k = 2.0 * M_PI / std::cbrt(omega);
  return 0.5 * k * k;
}

RVector kinetic_reference_diagonal(const KineticSpec& spec) {
  const int n = spec.qubits_per_axis;
  const long long per_axis = 1LL << n;
  RVector ref(static_cast<std::size_t>(per_axis * per_axis * per_axis));
  const double pf = spec.prefactor();
  for (long long x = 0; x < per_axis; ++x) {
    for (long long y = 0; y < per_axis; ++y) {
      for (long long z = 0; z < per_axis; ++z) {
        ref[static_cast<std::size_t>((x * per_axis + y) * per_axis + z)] =
            pf * static_cast<double>(x * x + y * y + z * z);
      }
    }
  }
  return ref;
}

SynthResult synth_kinetic(const KineticSpec& spec, const ErrorBudget& budget,
                          const SynthOptions& opts) {
  const int n = spec.qubits_per_axis;
  if (n < 1) throw DomainError("need at least one qubit per axis");
  if (!(spec.omega > 0.0)) throw DomainError("cell volume must be positive");
  const long long per_axis = 1LL << n;
  const double lambda_t =
      3.0 * spec.prefactor() * static_cast<double>((per_axis - 1) * (per_axis - 1));

  // Exact squared-coordinate profile per axis: P(j/N) = (j/(N-1))^2, the
  // degree-2 polynomial in the linear signal embedding.
  RVector p_values(per_axis);
  for (long long j = 0; j < per_axis; ++j) {
    const double s = static_cast<double>(j) / static_cast<double>(per_axis - 1);
    p_values[j] = s * s;
  }

  const int select0 = 3 * n;
  const int enc = 3 * n + 2;
  CircuitIR prep;
  prep.num_system_qubits = 3 * n;
  prep.num_ancilla_qubits = 3;
  {
    const double w = 1.0 / std::sqrt(3.0);
    const CVector amps{Complex(w, 0.0), Complex(w, 0.0), Complex(w, 0.0), Complex(0.0, 0.0)};
    detail::append_prep_cascade(prep, {select0, select0 + 1}, amps);
  }

  SynthResult result;
  result.plan.method = Method::QspDiag;
  result.plan.hyperparams["degree"] = 2.0;
  result.plan.hyperparams["lcu_norm"] = lambda_t;
  result.plan.hyperparams["prefactor"] = spec.prefactor();
  result.plan.eps_a_predicted = 0.0;
  result.plan.feasible = true;

  CircuitIR& ir = result.circuit;
  ir.num_system_qubits = 3 * n;
  ir.num_ancilla_qubits = 3;
  for (const GateRecord& g : prep.gates) ir.gates.push_back(g);
  for (int axis = 0; axis < 3; ++axis) {
    GateRecord g;
    g.kind = GateKind::BlockGate;
    g.targets.push_back(enc);
    for (int q = 0; q < n; ++q) g.targets.push_back(axis * n + q);
    g.controls.emplace_back(select0, (axis >> 1) & 1);
    g.controls.emplace_back(select0 + 1, axis & 1);
    g.params = p_values;
    BlockSpec block;
    block.label = "qsp-reflection";
    block.cost = PreCost{3, 4LL * n, 4LL * n, 0};
    g.block = std::move(block);
    ir.gates.push_back(std::move(g));
  }
  const CircuitIR closing = invert_circuit(prep);
  for (const GateRecord& g : closing.gates) ir.gates.push_back(g);
  ir.global_phase += prep.global_phase + closing.global_phase;

  const double delta = detail::rotation_budget(ir, opts.cost, budget.eps_p);
  result.plan.hyperparams["delta_rotation"] = delta;
  detail::finalize_with_circuit(result, budget, opts, delta);
  return result;
}

}  // namespace qdl
