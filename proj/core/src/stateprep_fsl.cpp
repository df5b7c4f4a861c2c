// Fourier-series loading: keep the d largest-magnitude Fourier coefficients,
// prepare them on a small sub-register, route them to their frequency slots,
// and finish with one inverse-transform block over the whole register.
#include <algorithm>
#include <cmath>
#include <numeric>

#include "fft_detail.hpp"
#include "qdl/metrics.hpp"
#include "qdl/stateprep.hpp"
#include "synth_common.hpp"

namespace qdl {

namespace {

// Signed frequency in [-N/2, N/2): negative rows wrap to the top of the table.
long long signed_frequency(std::size_t k, std::size_t n_dim) {
  return k < n_dim / 2 || n_dim == 1 ? static_cast<long long>(k)
                                     : static_cast<long long>(k) - static_cast<long long>(n_dim);
}

}  // namespace

FourierTruncation fsl_truncate(const TargetVector& target, double eps_a) {
  const std::size_t dim = target.dim();
  CVector coeff = target.amplitudes;
  detail::dft_ortho(coeff, -1);

  // Magnitude order; ties go to the higher index so the symmetric band keeps
  // -d/2 rather than +d/2 (the kept error is identical either way).
  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(coeff[a]), mb = std::abs(coeff[b]);
    if (ma != mb) return ma > mb;
    return a > b;
  });

  std::vector<double> prefix(dim + 1, 0.0);
  for (std::size_t i = 0; i < dim; ++i) prefix[i + 1] = prefix[i] + std::norm(coeff[order[i]]);

  long long d = static_cast<long long>(dim);
  for (long long cand = 1; cand <= static_cast<long long>(dim); cand *= 2) {
    const double p = std::min(prefix[cand], 1.0);
    const double err = std::sqrt(std::max(0.0, 2.0 * (1.0 - std::sqrt(p))));
    if (err <= eps_a + 1e-12) {
      d = cand;
      break;
    }
  }

  FourierTruncation fr;
  fr.num_kept = d;
  std::vector<std::size_t> kept(order.begin(), order.begin() + d);
  std::sort(kept.begin(), kept.end());

  // Band test: kept set equals { k : signed frequency in [-d/2, d/2) }.
  fr.band_layout = true;
  for (std::size_t k : kept) {
    const long long nu = signed_frequency(k, dim);
    if (nu < -(d / 2) || nu >= std::max<long long>(d / 2, 1)) {
      fr.band_layout = false;
      break;
    }
  }

  // Slot order: band layout counts slot values whose low bits spell the
  // signed frequency; otherwise ascending index.
  if (fr.band_layout) {
    for (long long s = 0; s < d; ++s) {
      const long long nu = s < std::max<long long>(d / 2, 1) ? s : s - d;
      const std::size_t k = static_cast<std::size_t>((nu + static_cast<long long>(dim)) %
                                                     static_cast<long long>(dim));
      fr.kept_coefficients.emplace_back(static_cast<long long>(k), coeff[k]);
    }
  } else {
    for (std::size_t k : kept) fr.kept_coefficients.emplace_back(static_cast<long long>(k), coeff[k]);
  }

  CVector pruned(dim, Complex(0.0, 0.0));
  for (std::size_t k : kept) pruned[k] = coeff[k];
  const double norm = l2_norm(pruned);
  if (norm <= 0.0) throw DegenerateInputError("no spectral weight kept");
  for (Complex& c : pruned) c /= norm;
  detail::dft_ortho(pruned, +1);
  fr.predicted_state = std::move(pruned);
  fr.truncation_error = l2_distance(fr.predicted_state, target.amplitudes);
  return fr;
}

SynthResult synth_fsl(const TargetVector& target, const ErrorBudget& budget,
                      const SynthOptions& opts) {
  const int n = target.n_qubits;
  const std::size_t dim = target.dim();
  const FourierTruncation fr = fsl_truncate(target, budget.eps_a);
  const long long d = fr.num_kept;
  const int r = detail::ceil_log2ll(d);

  SynthResult result;
  result.plan.method = Method::FSL;
  result.plan.hyperparams["kept_terms"] = static_cast<double>(d);
  result.plan.hyperparams["band_layout"] = fr.band_layout ? 1.0 : 0.0;
  result.plan.eps_a_predicted = fr.truncation_error;
  result.plan.feasible = fr.truncation_error <= budget.eps_a + 1e-10;

  const PreCost iqft_cost{static_cast<long long>(n) * (n - 1),
                          static_cast<long long>(n) * (n - 1) + 3LL * (n / 2), 0, 0};
  double delta = budget.eps_p;
  if (n <= opts.emit_qubit_limit) {
    CircuitIR& ir = result.circuit;
    ir.num_system_qubits = n;
    // Coefficients land on the last r qubits, slot order per the layout.
    if (r > 0) {
      CVector slots(std::size_t{1} << r, Complex(0.0, 0.0));
      double norm = 0.0;
      for (const auto& [k, c] : fr.kept_coefficients) norm += std::norm(c);
      norm = std::sqrt(norm);
      for (long long s = 0; s < d; ++s) slots[s] = fr.kept_coefficients[s].second / norm;
      std::vector<int> low(r);
      for (int b = 0; b < r; ++b) low[b] = n - r + b;
      detail::append_prep_cascade(ir, low, slots);
    } else {
      ir.global_phase += std::arg(fr.kept_coefficients[0].second);
    }
    if (fr.band_layout) {
      // Sign extension: copy the slot's top bit into every higher qubit so
      // negative frequencies wrap to the top of the register.
      for (int q = 0; q < n - r && r > 0; ++q) {
        GateRecord g;
        g.kind = GateKind::CNOT;
        g.targets = {q};
        g.controls.emplace_back(n - r, true);
        ir.gates.push_back(std::move(g));
      }
    } else {
      // Route slot s to frequency k_s; remaining inputs fill the remaining
      // outputs in ascending order to complete the bijection.
      GateRecord g;
      g.kind = GateKind::BlockGate;
      for (int q = 0; q < n; ++q) g.targets.push_back(q);
      BlockSpec spec;
      spec.label = "permutation";
      const QromCost route = qrom_cost(d, n, opts.cost);
      spec.cost = PreCost{0, 2 * route.cnots, 2 * route.toffolis, route.ancillas};
      g.block = std::move(spec);
      g.table.assign(dim, -1);
      std::vector<bool> used(dim, false);
      for (long long s = 0; s < d; ++s) {
        g.table[s] = fr.kept_coefficients[s].first;
        used[fr.kept_coefficients[s].first] = true;
      }
      long long next = 0;
      for (std::size_t i = d; i < dim; ++i) {
        while (used[next]) ++next;
        g.table[i] = next;
        used[next] = true;
      }
      ir.gates.push_back(std::move(g));
    }
    {
      GateRecord g;
      g.kind = GateKind::BlockGate;
      for (int q = 0; q < n; ++q) g.targets.push_back(q);
      BlockSpec spec;
      spec.label = "iqft";
      spec.cost = iqft_cost;
      g.block = std::move(spec);
      ir.gates.push_back(std::move(g));
    }
    delta = detail::rotation_budget(ir, opts.cost, budget.eps_p);
  } else {
    ResourceEstimate acc;
    acc.total_qubits = n;
    long long rot = d - 1;
    long long cnot = std::max<long long>(d - 2, 0);
    bool complex_slots = false;
    for (const auto& [k, c] : fr.kept_coefficients) complex_slots |= c.imag() != 0.0;
    if (complex_slots) {
      rot *= 2;
      cnot *= 2;
    }
    acc.rotation_count = rot + iqft_cost.rotations;
    acc.cnot_count = cnot + iqft_cost.cnots;
    if (fr.band_layout) {
      if (r > 0) acc.cnot_count += n - r;
    } else {
      const QromCost route = qrom_cost(d, n, opts.cost);
      acc.cnot_count += 2 * route.cnots;
      acc.toffoli_count += 2 * route.toffolis;
      acc.ancilla_qubits += route.ancillas;
      acc.total_qubits += route.ancillas;
    }
    delta = budget.eps_p /
            std::sqrt(static_cast<double>(std::max<long long>(acc.rotation_count, 1)));
    acc.t_count = acc.rotation_count * t_count_for_rotation(delta, opts.cost) +
                  acc.toffoli_count * opts.cost.toffoli_t_cost;
    result.plan.resources = acc;
    result.plan.note = "estimate only: register exceeds the emission limit";
  }
  result.plan.hyperparams["delta_rotation"] = delta;
  detail::finalize_with_circuit(result, budget, opts, delta);
  return result;
}

}  // namespace qdl
