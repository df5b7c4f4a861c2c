// Microbenchmarks for the hot paths: cost estimation, compression,
// transforms, planning sweeps, simulation, and the sampling study.
#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "qdl/blockenc.hpp"
#include "qdl/costmodel.hpp"
#include "qdl/diagenc.hpp"
#include "qdl/planner.hpp"
#include "qdl/sampling.hpp"
#include "qdl/simulator.hpp"
#include "qdl/stateprep.hpp"

namespace {

qdl::TargetVector random_state(int n_qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  qdl::CVector amps(std::size_t{1} << n_qubits);
  double norm = 0.0;
  for (auto& a : amps) {
    a = qdl::Complex(gauss(rng), gauss(rng));
    norm += std::norm(a);
  }
  norm = std::sqrt(norm);
  for (auto& a : amps) a /= norm;
  qdl::TargetVector t;
  t.task = qdl::Task::StatePrep;
  t.n_qubits = n_qubits;
  t.amplitudes = std::move(amps);
  return t;
}

qdl::TargetVector gaussian_state(int n_qubits, double sigma) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  qdl::CVector amps(dim);
  double norm = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const double x = (static_cast<double>(j) / static_cast<double>(dim - 1)) - 0.5;
    amps[j] = std::exp(-x * x / (2.0 * sigma * sigma));
    norm += std::norm(amps[j]);
  }
  norm = std::sqrt(norm);
  for (auto& a : amps) a /= norm;
  qdl::TargetVector t;
  t.task = qdl::Task::StatePrep;
  t.n_qubits = n_qubits;
  t.amplitudes = std::move(amps);
  return t;
}

void BM_RotationTCount(benchmark::State& state) {
  const qdl::CostConfig cfg;
  double delta = 1e-9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdl::t_count_for_rotation(delta, cfg));
    delta = delta < 0.1 ? delta * 1.0000001 : 1e-9;
  }
}
BENCHMARK(BM_RotationTCount);

void BM_QromCostScan(benchmark::State& state) {
  const qdl::CostConfig cfg;
  const long long entries = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdl::qrom_cost(entries, 16, cfg));
  }
}
BENCHMARK(BM_QromCostScan)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 20);

void BM_EstimateCircuit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const qdl::SynthResult r =
      qdl::synth_mottonen(gaussian_state(n, 0.3), qdl::make_budget(1e-3, 0.5));
  const qdl::CostConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdl::estimate_circuit(r.circuit, cfg, 1e-6));
  }
}
BENCHMARK(BM_EstimateCircuit)->Arg(6)->Arg(10);

void BM_MpsCompress(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const qdl::TargetVector t = gaussian_state(n, 0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdl::mps_compress(t, 8));
  }
}
BENCHMARK(BM_MpsCompress)->Arg(8)->Arg(12);

void BM_WalshTransform(benchmark::State& state) {
  const std::size_t dim = std::size_t{1} << state.range(0);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  qdl::RVector samples(dim);
  for (double& s : samples) s = uni(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdl::walsh_transform(samples));
  }
}
BENCHMARK(BM_WalshTransform)->Arg(10)->Arg(14)->Arg(18);

void BM_PlannerSweep(benchmark::State& state) {
  qdl::PlanRequest req;
  req.target = gaussian_state(static_cast<int>(state.range(0)), 0.3);
  req.epsilon = 1e-3;
  req.omega_grid_step = 0.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdl::sweep(req));
  }
}
BENCHMARK(BM_PlannerSweep)->Arg(6)->Arg(8);

void BM_SimulatorApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const qdl::SynthResult r =
      qdl::synth_mottonen(random_state(n, 4321), qdl::make_budget(1e-3, 0.5));
  const qdl::StateVector init = qdl::StateVector::zero_state(r.circuit.total_qubits());
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdl::apply(r.circuit, init));
  }
}
BENCHMARK(BM_SimulatorApply)->Arg(8)->Arg(12);

void BM_BandedSynthesis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::size_t dim = std::size_t{1} << n;
  qdl::DDiagonalSpec spec;
  spec.n_qubits = n;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (long long s : {-1LL, 0LL, 1LL}) {
    qdl::DiagonalBand band;
    band.shift = s;
    band.weight = 0.5;
    band.entries.resize(dim);
    for (double& e : band.entries) e = uni(rng);
    spec.diagonals.push_back(std::move(band));
  }
  const qdl::ErrorBudget budget = qdl::make_budget(1e-2, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdl::synth_ddiagonal(spec, budget));
  }
}
BENCHMARK(BM_BandedSynthesis)->Arg(4)->Arg(6);

void BM_SamplingStudy(benchmark::State& state) {
  const qdl::TargetVector t = gaussian_state(8, 0.3);
  qdl::SamplingStudy study;
  study.distribution =
      qdl::transformed_distribution(t.amplitudes, qdl::MeasurementTransform::Walsh);
  study.transform = qdl::MeasurementTransform::Walsh;
  study.shots_grid = {100, 1000, 10000};
  study.trials = 5;
  study.seed = 7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdl::run_sampling_study(study, 0.1));
  }
}
BENCHMARK(BM_SamplingStudy);

}  // namespace

BENCHMARK_MAIN();
