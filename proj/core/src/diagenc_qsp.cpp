// Polynomial diagonal encoder: least-squares Chebyshev fit of the diagonal
// profile against a signal embedding, realized as one reflection block whose
// cost scales with the polynomial degree.
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "qdl/diagenc.hpp"
#include "qdl/metrics.hpp"
#include "synth_common.hpp"

namespace qdl {

namespace {

double embed(SignalEmbedding e, std::size_t j, std::size_t n_dim) {
  const double x = static_cast<double>(j) / static_cast<double>(n_dim);
  return e == SignalEmbedding::SinEmbedding ? std::sin(2.0 * M_PI * x) : x;
}

// T_p, T_{p+2}, ..., T_d evaluated at x (p = parity of d).
void chebyshev_row(double x, long long degree, RVector& row) {
  const long long parity = degree % 2;
  row.assign(static_cast<std::size_t>(degree / 2 + 1), 0.0);
  double tm = 1.0, tk = x;  // T_0, T_1
  for (long long k = 0; k <= degree; ++k) {
    const double t = k == 0 ? 1.0 : (k == 1 ? x : 2.0 * x * tk - tm);
    if (k >= 2) {
      tm = tk;
      tk = t;
    }
    if (k % 2 == parity) row[static_cast<std::size_t>((k - parity) / 2)] = t;
  }
}

}  // namespace

QspDiagonalSpec qsp_fit(const RVector& values, SignalEmbedding embedding,
                        long long max_degree, double eps_a) {
  const std::size_t n_dim = values.size();
  if (n_dim == 0) throw DimensionError("empty diagonal");
  QspDiagonalSpec best;
  best.embedding = embedding;
  best.feasible = false;
  best.residual_linf = std::numeric_limits<double>::infinity();

  RVector row;
  for (long long d = 0; d <= max_degree; ++d) {
    const std::size_t terms = static_cast<std::size_t>(d / 2 + 1);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(terms, terms);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(terms);
    for (std::size_t j = 0; j < n_dim; ++j) {
      chebyshev_row(embed(embedding, j, n_dim), d, row);
      for (std::size_t a = 0; a < terms; ++a) {
        rhs(a) += row[a] * values[j];
        for (std::size_t b = a; b < terms; ++b) gram(a, b) += row[a] * row[b];
      }
    }
    for (std::size_t a = 0; a < terms; ++a) {
      for (std::size_t b = a + 1; b < terms; ++b) gram(b, a) = gram(a, b);
    }
    const Eigen::VectorXd coef = gram.ldlt().solve(rhs);

    QspDiagonalSpec cand;
    cand.embedding = embedding;
    cand.degree = d;
    cand.chebyshev_coefficients.assign(coef.data(), coef.data() + terms);
    cand.predicted_diagonal.resize(n_dim);
    double worst = 0.0;
    for (std::size_t j = 0; j < n_dim; ++j) {
      chebyshev_row(embed(embedding, j, n_dim), d, row);
      double p = 0.0;
      for (std::size_t a = 0; a < terms; ++a) p += coef(a) * row[a];
      p = std::clamp(p, -1.0, 1.0);
      cand.predicted_diagonal[j] = Complex(p, 0.0);
      worst = std::max(worst, std::abs(p - values[j]));
    }
    cand.residual_linf = worst;
    cand.feasible = worst <= eps_a + 1e-12;
    if (cand.feasible) return cand;
    if (cand.residual_linf < best.residual_linf) best = std::move(cand);
  }
  return best;
}

SynthResult synth_diag_qsp(const TargetVector& target, const ErrorBudget& budget,
                           long long max_degree, const SynthOptions& opts) {
  const int n = target.n_qubits;
  const RVector values = detail::diagonal_entries(target);
  const QspDiagonalSpec sin_fit =
      qsp_fit(values, SignalEmbedding::SinEmbedding, max_degree, budget.eps_a);
  const QspDiagonalSpec lin_fit =
      qsp_fit(values, SignalEmbedding::LinearEmbedding, max_degree, budget.eps_a);

  const QspDiagonalSpec* pick = &sin_fit;
  if (sin_fit.feasible && lin_fit.feasible) {
    if (lin_fit.degree < sin_fit.degree) pick = &lin_fit;
  } else if (lin_fit.feasible) {
    pick = &lin_fit;
  } else if (!sin_fit.feasible && lin_fit.residual_linf < sin_fit.residual_linf) {
    pick = &lin_fit;
  }
  const QspDiagonalSpec& fit = *pick;

  const double delta = solve_qsp_delta(std::max<long long>(fit.degree, 1), budget.eps_p);
  SynthResult result;
  result.plan.method = Method::QspDiag;
  result.plan.hyperparams["degree"] = static_cast<double>(fit.degree);
  result.plan.hyperparams["embedding"] =
      fit.embedding == SignalEmbedding::SinEmbedding ? 0.0 : 1.0;
  result.plan.hyperparams["delta_rotation"] = delta;
  result.plan.eps_a_predicted = fit.residual_linf;
  result.plan.feasible = fit.feasible;
  if (!fit.feasible) {
    result.plan.note = "no polynomial reached the accuracy budget at degree <= " +
                       std::to_string(max_degree);
  }

  const PreCost seq_cost{fit.degree + 1, 2LL * n * fit.degree, 2LL * n * fit.degree, 0};
  if (n + 1 <= opts.emit_qubit_limit) {
    CircuitIR& ir = result.circuit;
    ir.num_system_qubits = n;
    ir.num_ancilla_qubits = 1;
    GateRecord g;
    g.kind = GateKind::BlockGate;
    g.targets.push_back(n);  // encoding ancilla first, then the signal register
    for (int q = 0; q < n; ++q) g.targets.push_back(q);
    g.params.resize(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
      g.params[j] = fit.predicted_diagonal[j].real();
    }
    BlockSpec spec;
    spec.label = "qsp-reflection";
    spec.cost = seq_cost;
    g.block = std::move(spec);
    ir.gates.push_back(std::move(g));
  } else {
    ResourceEstimate acc;
    acc.total_qubits = n + 1;
    acc.rotation_count = seq_cost.rotations;
    acc.cnot_count = seq_cost.cnots;
    acc.toffoli_count = seq_cost.toffolis;
    acc.t_count = acc.rotation_count * t_count_for_rotation(delta, opts.cost) +
                  acc.toffoli_count * opts.cost.toffoli_t_cost;
    result.plan.resources = acc;
    result.plan.note = result.plan.note.empty()
                           ? "estimate only: register exceeds the emission limit"
                           : result.plan.note;
  }
  detail::finalize_with_circuit(result, budget, opts, delta);
  return result;
}

}  // namespace qdl
