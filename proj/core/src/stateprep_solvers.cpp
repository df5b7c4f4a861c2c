// Closed-form hyperparameter solvers for the state-preparation methods.
#include <cmath>
#include <numbers>

#include "qdl/stateprep.hpp"

namespace qdl {

namespace {
void check_eps(double eps_p) {
  if (!(eps_p > 0.0)) throw DomainError("precision budget must be positive");
}
}  // namespace

double solve_mottonen(int n, double eps_p) {
  if (n < 1) throw DomainError("register must have at least one qubit");
  check_eps(eps_p);
  const double rotations = std::pow(2.0, n) - 1.0;
  return eps_p / std::sqrt(rotations);
}

int solve_qrom_bits(int n, double eps_p) {
  if (n < 1) throw DomainError("register must have at least one qubit");
  check_eps(eps_p);
  const double rotations = std::pow(2.0, n) - 1.0;
  const double raw = std::log2(std::numbers::pi / eps_p * std::sqrt(rotations));
  return std::max(1, static_cast<int>(std::ceil(raw)));
}

double solve_mps_delta(const std::vector<long long>& bond_dims, double eps_p) {
  if (bond_dims.empty()) throw DomainError("bond dimension list must be nonempty");
  check_eps(eps_p);
  double sum_sq = 0.0;
  for (long long chi : bond_dims) {
    if (chi < 1) throw DomainError("bond dimensions must be positive");
    sum_sq += static_cast<double>(chi) * static_cast<double>(chi);
  }
  return eps_p / std::sqrt(4.0 * sum_sq);
}

int solve_alias_mu(double eps_p) {
  check_eps(eps_p);
  return std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / eps_p))));
}

}  // namespace qdl
