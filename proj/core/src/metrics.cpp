#include "qdl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace qdl {

namespace {

void check_lengths(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("vector length mismatch: " + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()));
  }
}

}  // namespace

double l2_distance(const CVector& a, const CVector& b) {
  check_lengths(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::norm(a[i] - b[i]);
  }
  return std::sqrt(sum);
}

double linf_distance(const CVector& a, const CVector& b) {
  check_lengths(a, b);
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    best = std::max(best, std::abs(a[i] - b[i]));
  }
  return best;
}

double l2_norm(const CVector& a) {
  double sum = 0.0;
  for (const Complex& x : a) sum += std::norm(x);
  return std::sqrt(sum);
}

double linf_norm(const CVector& a) {
  double best = 0.0;
  for (const Complex& x : a) best = std::max(best, std::abs(x));
  return best;
}

std::string task_name(Task t) {
  return t == Task::StatePrep ? "state-prep" : "diagonal";
}

Task task_from_name(const std::string& name) {
  if (name == "state-prep") return Task::StatePrep;
  if (name == "diagonal") return Task::DiagonalEncode;
  throw ValidationError("unknown task: " + name);
}

namespace {
constexpr std::pair<Method, const char*> kMethodNames[] = {
    {Method::Mottonen, "mottonen"},
    {Method::QromStatePrep, "qrom"},
    {Method::SparseSOS, "sparse"},
    {Method::MPS, "mps"},
    {Method::FSL, "fsl"},
    {Method::AliasSampling, "alias"},
    {Method::MottonenDiag, "diag-mottonen"},
    {Method::QromDiag, "diag-qrom"},
    {Method::QspDiag, "diag-qsp"},
    {Method::WalshDiag, "diag-walsh"},
    {Method::Hybrid, "hybrid"},
};
}  // namespace

std::string method_name(Method m) {
  for (const auto& [method, name] : kMethodNames) {
    if (method == m) return name;
  }
  throw ValidationError("unknown method");
}

Method method_from_name(const std::string& name) {
  for (const auto& [method, mname] : kMethodNames) {
    if (name == mname) return method;
  }
  throw ValidationError("unknown method: " + name);
}

ErrorBudget make_budget(double epsilon, double omega) {
  if (epsilon <= 0.0) throw DomainError("epsilon must be positive");
  if (omega <= 0.0 || omega > 1.0) throw DomainError("omega must lie in (0, 1]");
  ErrorBudget b;
  b.epsilon = epsilon;
  b.omega = omega;
  b.eps_p = omega * epsilon;
  b.eps_a = (1.0 - omega) * epsilon;
  return b;
}

TargetVector validate_target(const TargetVector& v) {
  if (v.n_qubits < 1) throw DimensionError("n_qubits must be >= 1");
  const std::size_t expected = std::size_t{1} << v.n_qubits;
  if (v.amplitudes.size() != expected) {
    throw DimensionError("amplitude count " + std::to_string(v.amplitudes.size()) +
                         " does not match 2^" + std::to_string(v.n_qubits));
  }
  TargetVector out = v;
  if (v.task == Task::StatePrep) {
    const double norm = l2_norm(v.amplitudes);
    if (norm < 1e-300) throw DegenerateInputError("zero vector cannot be prepared");
    if (std::abs(norm - 1.0) > 1e-12) {
      for (Complex& x : out.amplitudes) x /= norm;
      out.scale = v.scale * norm;
    }
  } else {
    if (linf_norm(v.amplitudes) > 1.0 + 1e-12) {
      throw NormViolationError("diagonal entries must have magnitude <= 1");
    }
    if (linf_norm(v.amplitudes) < 1e-300) {
      throw DegenerateInputError("zero diagonal is degenerate");
    }
  }
  return out;
}

}  // namespace qdl
