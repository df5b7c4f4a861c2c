// Closed-form hyperparameter solvers: frozen point values plus the bound
// inequalities they are supposed to certify.
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "qdl/diagenc.hpp"
#include "qdl/metrics.hpp"
#include "qdl/stateprep.hpp"

using namespace qdl;

TEST_CASE("error budget split") {
  const ErrorBudget b = make_budget(1e-3, 0.3);
  CHECK(b.eps_p == doctest::Approx(3e-4));
  CHECK(b.eps_a == doctest::Approx(7e-4));
  CHECK(b.eps_p + b.eps_a == doctest::Approx(b.epsilon));

  const ErrorBudget all_prec = make_budget(0.2, 1.0);
  CHECK(all_prec.eps_a == 0.0);
  CHECK(all_prec.eps_p == doctest::Approx(0.2));

  CHECK_THROWS_AS(make_budget(0.0, 0.5), DomainError);
  CHECK_THROWS_AS(make_budget(-1.0, 0.5), DomainError);
  CHECK_THROWS_AS(make_budget(1e-3, 0.0), DomainError);
  CHECK_THROWS_AS(make_budget(1e-3, 1.1), DomainError);
}

TEST_CASE("rotation-cascade tolerance solver") {
  CHECK(solve_mottonen(1, 0.1) == doctest::Approx(0.1));
  CHECK(solve_mottonen(11, 1e-3) == doctest::Approx(2.21027e-5).epsilon(1e-4));
  CHECK(solve_mottonen(20, 5e-4) == doctest::Approx(4.8828148e-7).epsilon(1e-6));
  CHECK_THROWS_AS(solve_mottonen(0, 0.1), DomainError);
  CHECK_THROWS_AS(solve_mottonen(3, 0.0), DomainError);

  SUBCASE("certifies eps_p over random draws") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> eps(1e-6, 0.5);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 16);
      const double eps_p = eps(rng);
      const double delta = solve_mottonen(n, eps_p);
      const double rotations = std::pow(2.0, n) - 1.0;
      CHECK(delta * std::sqrt(rotations) <= eps_p * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("angle-register width solver") {
  CHECK(solve_qrom_bits(1, std::numbers::pi / 2.0) == 1);
  CHECK(solve_qrom_bits(11, 1e-3) == 18);
  CHECK(solve_qrom_bits(14, 1e-4) == 22);
  CHECK_THROWS_AS(solve_qrom_bits(0, 0.1), DomainError);
  CHECK_THROWS_AS(solve_qrom_bits(3, -1.0), DomainError);

  SUBCASE("m is minimal for the bound") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> eps(1e-6, 0.9);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 14);
      const double eps_p = eps(rng);
      const int m = solve_qrom_bits(n, eps_p);
      const double scale = std::numbers::pi * std::sqrt(std::pow(2.0, n) - 1.0);
      CHECK(std::pow(2.0, -m) * scale <= eps_p * (1.0 + 1e-12));
      if (m > 1) CHECK(std::pow(2.0, -(m - 1)) * scale > eps_p * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("block-sequence tolerance solver") {
  CHECK(solve_mps_delta({1}, 0.1) == doctest::Approx(0.05));
  CHECK(solve_mps_delta(std::vector<long long>(11, 2), 1e-3) ==
        doctest::Approx(1e-3 / std::sqrt(176.0)).epsilon(1e-10));
  CHECK(solve_mps_delta(std::vector<long long>(11, 32), 1e-3) ==
        doctest::Approx(4.71113e-6).epsilon(1e-4));
  CHECK_THROWS_AS(solve_mps_delta({}, 0.1), DomainError);
  CHECK_THROWS_AS(solve_mps_delta({2, 0, 2}, 0.1), DomainError);
  CHECK_THROWS_AS(solve_mps_delta({2}, 0.0), DomainError);
}

TEST_CASE("alias block-resolution solver") {
  CHECK(solve_alias_mu(0.5) == 1);
  CHECK(solve_alias_mu(0.9) == 1);
  CHECK(solve_alias_mu(1e-3) == 10);
  CHECK(solve_alias_mu(std::pow(2.0, -15)) == 15);
  CHECK_THROWS_AS(solve_alias_mu(0.0), DomainError);
}

TEST_CASE("diagonal-cascade tolerance solver") {
  CHECK(solve_diag_mottonen(2, 0.1) == doctest::Approx(0.05));
  CHECK(solve_diag_mottonen(11, 1e-3) == doctest::Approx(2.2097087e-5).epsilon(1e-6));
  CHECK(solve_diag_mottonen(20, 1e-4) == doctest::Approx(9.765625e-8).epsilon(1e-12));
  CHECK_THROWS_AS(solve_diag_mottonen(0, 0.1), DomainError);
  CHECK_THROWS_AS(solve_diag_mottonen(2, 0.0), DomainError);
}

TEST_CASE("phase-sequence tolerance solver") {
  CHECK(solve_qsp_delta(1, 0.3) == doctest::Approx(0.3));
  CHECK(solve_qsp_delta(100, 1e-2) == doctest::Approx(1e-3));
  CHECK(solve_qsp_delta(4, 2e-3) == doctest::Approx(1e-3));
  CHECK(solve_qsp_delta(0, 0.25) == doctest::Approx(0.25));
  CHECK_THROWS_AS(solve_qsp_delta(-1, 0.1), DomainError);
  CHECK_THROWS_AS(solve_qsp_delta(4, 0.0), DomainError);
}
