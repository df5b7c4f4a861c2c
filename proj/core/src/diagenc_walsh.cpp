// Walsh-spectrum diagonal encoder: the phase profile g = 2*arccos(alpha) is
// expanded over parity functions; each kept term is one parity ladder onto the
// encoding ancilla plus a single RZ, conjugated by S*H on the ancilla.
#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "qdl/diagenc.hpp"
#include "qdl/metrics.hpp"
#include "synth_common.hpp"

namespace qdl {

namespace {

// Qubit carrying index bit b (big-endian registers).
int qubit_of_bit(int n, int b) { return n - 1 - b; }

std::vector<int> mask_qubits(int n, long long k) {
  std::vector<int> qs;
  for (int b = 0; b < n; ++b) {
    if ((k >> b) & 1) qs.push_back(qubit_of_bit(n, b));
  }
  std::sort(qs.begin(), qs.end());
  return qs;
}

long long gray_rank(long long k) {
  long long r = k;
  for (int s = 1; s < 63; s *= 2) r ^= r >> s;
  return r;
}

void parity_onto(CircuitIR& ir, int anc, int n, long long toggle) {
  for (int q : mask_qubits(n, toggle)) {
    GateRecord g;
    g.kind = GateKind::CNOT;
    g.targets = {anc};
    g.controls.emplace_back(q, true);
    ir.gates.push_back(std::move(g));
  }
}

void rz_on(CircuitIR& ir, int q, double theta) {
  GateRecord g;
  g.kind = GateKind::RZ;
  g.targets = {q};
  g.params = {theta};
  ir.gates.push_back(std::move(g));
}

void clifford_on(CircuitIR& ir, GateKind kind, int q) {
  GateRecord g;
  g.kind = kind;
  g.targets = {q};
  ir.gates.push_back(std::move(g));
}

}  // namespace

RVector walsh_transform(const RVector& samples) {
  const std::size_t n_dim = samples.size();
  if (n_dim == 0 || (n_dim & (n_dim - 1)) != 0) {
    throw DimensionError("transform length must be a power of two");
  }
  RVector out = samples;
  for (std::size_t h = 1; h < n_dim; h *= 2) {
    for (std::size_t i = 0; i < n_dim; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = out[j], b = out[j + h];
        out[j] = a + b;
        out[j + h] = a - b;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_dim));
  for (double& v : out) v *= scale;
  return out;
}

WalshSpectrum walsh_select(const RVector& g, double tol) {
  const std::size_t n_dim = g.size();
  WalshSpectrum spec;
  spec.coefficients = walsh_transform(g);
  const double root = std::sqrt(static_cast<double>(n_dim));

  std::vector<std::size_t> order;
  for (std::size_t k = 1; k < n_dim; ++k) {
    if (spec.coefficients[k] != 0.0) order.push_back(k);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(spec.coefficients[a]), mb = std::abs(spec.coefficients[b]);
    if (ma != mb) return ma > mb;
    return a < b;
  });

  RVector residual(n_dim);
  for (std::size_t j = 0; j < n_dim; ++j) residual[j] = g[j] - spec.coefficients[0] / root;
  auto linf = [&] {
    double worst = 0.0;
    for (double r : residual) worst = std::max(worst, std::abs(r));
    return worst;
  };
  double err = linf();
  for (std::size_t k : order) {
    if (err <= tol + 1e-12) break;
    const double c = spec.coefficients[k] / root;
    for (std::size_t j = 0; j < n_dim; ++j) {
      residual[j] -= std::popcount(k & j) % 2 ? -c : c;
    }
    spec.kept_indices.push_back(static_cast<long long>(k));
    err = linf();
  }
  spec.truncation_order = static_cast<long long>(spec.kept_indices.size());
  spec.linf_phase_error = err;
  return spec;
}

CircuitIR walsh_term_circuit(int n, long long k, double c) {
  if (n < 1) throw DomainError("need at least one qubit");
  if (k < 0 || k >= (1LL << n)) throw DomainError("parity mask out of range");
  CircuitIR ir;
  ir.num_system_qubits = n;
  if (k == 0) {
    ir.global_phase = c;
    return ir;
  }
  const std::vector<int> qs = mask_qubits(n, k);
  const int pivot = qs.back();
  for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
    GateRecord g;
    g.kind = GateKind::CNOT;
    g.targets = {pivot};
    g.controls.emplace_back(qs[i], true);
    ir.gates.push_back(std::move(g));
  }
  rz_on(ir, pivot, -2.0 * c);
  for (std::size_t i = qs.size() - 1; i-- > 0;) {
    GateRecord g;
    g.kind = GateKind::CNOT;
    g.targets = {pivot};
    g.controls.emplace_back(qs[i], true);
    ir.gates.push_back(std::move(g));
  }
  return ir;
}

SynthResult synth_diag_walsh(const TargetVector& target, const ErrorBudget& budget,
                             const WalshSynthOptions& opts) {
  const int n = target.n_qubits;
  const std::size_t dim = target.dim();
  const RVector values = detail::diagonal_entries(target);
  RVector g(dim);
  for (std::size_t j = 0; j < dim; ++j) g[j] = 2.0 * std::acos(values[j]);

  const WalshSpectrum spec = walsh_select(g, budget.eps_a);
  const long long kappa = spec.truncation_order;
  const double root = std::sqrt(static_cast<double>(dim));
  const double delta =
      budget.eps_p / std::sqrt(static_cast<double>(std::max<long long>(kappa, 1)));

  // Reconstruct the realized diagonal for the exact achieved error.
  RVector pruned(dim, 0.0);
  pruned[0] = spec.coefficients[0];
  for (long long k : spec.kept_indices) pruned[k] = spec.coefficients[k];
  const RVector recon = walsh_transform(pruned);
  double worst = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    worst = std::max(worst, std::abs(std::cos(recon[j] / 2.0) - values[j]));
  }

  SynthResult result;
  result.plan.method = Method::WalshDiag;
  result.plan.hyperparams["kappa"] = static_cast<double>(kappa);
  result.plan.hyperparams["delta_rotation"] = delta;
  result.plan.eps_a_predicted = worst;
  result.plan.feasible = worst <= budget.eps_a + 1e-10;

  std::vector<long long> terms = spec.kept_indices;
  if (opts.gray_code_order) {
    std::sort(terms.begin(), terms.end(),
              [](long long a, long long b) { return gray_rank(a) < gray_rank(b); });
  }

  if (n + 1 <= opts.emit_qubit_limit) {
    CircuitIR& ir = result.circuit;
    ir.num_system_qubits = n;
    ir.num_ancilla_qubits = 1;
    const int anc = n;
    clifford_on(ir, GateKind::H, anc);
    clifford_on(ir, GateKind::S, anc);
    rz_on(ir, anc, -spec.coefficients[0] / root);  // mean term: theta_0 = c_0/(2*sqrt(N))
    if (opts.gray_code_order) {
      long long mask = 0;
      for (long long k : terms) {
        parity_onto(ir, anc, n, mask ^ k);
        rz_on(ir, anc, -spec.coefficients[k] / root);
        mask = k;
      }
      parity_onto(ir, anc, n, mask);
    } else {
      for (long long k : terms) {
        parity_onto(ir, anc, n, k);
        rz_on(ir, anc, -spec.coefficients[k] / root);
        parity_onto(ir, anc, n, k);
      }
    }
    clifford_on(ir, GateKind::S, anc);
    clifford_on(ir, GateKind::S, anc);
    clifford_on(ir, GateKind::S, anc);
    clifford_on(ir, GateKind::H, anc);
  } else {
    ResourceEstimate acc;
    acc.total_qubits = n + 1;
    long long cnots = 0;
    if (opts.gray_code_order) {
      long long mask = 0;
      for (long long k : terms) {
        cnots += std::popcount(static_cast<unsigned long long>(mask ^ k));
        mask = k;
      }
      cnots += std::popcount(static_cast<unsigned long long>(mask));
    } else {
      for (long long k : terms) cnots += 2 * std::popcount(static_cast<unsigned long long>(k));
    }
    acc.cnot_count = cnots;
    acc.rotation_count = kappa + 1;
    const long long live = kappa + (spec.coefficients[0] != 0.0 ? 1 : 0);
    acc.t_count = live * t_count_for_rotation(delta, opts.cost);
    result.plan.resources = acc;
    result.plan.note = "estimate only: register exceeds the emission limit";
  }
  detail::finalize_with_circuit(result, budget, opts, delta);
  return result;
}

}  // namespace qdl
