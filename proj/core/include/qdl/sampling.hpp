// Measurement-basis sampling study: KL divergence between true and empirical
// distributions as a function of shot count, under identity / QFT / Walsh
// measurement transforms.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdl/types.hpp"

namespace qdl {

enum class MeasurementTransform { Identity, QFT, Walsh };

std::string transform_name(MeasurementTransform t);

// KL(p || q) = sum p_i log(p_i / q_i), natural log, 0*log0 = 0.
// Both inputs must be probability vectors; negative entries throw DomainError.
// Smoothing of empirical distributions happens in the study, not here.
double kl_divergence(const RVector& p, const RVector& q);

struct SamplingStudy {
  RVector distribution;  // the true distribution P in the measurement basis
  MeasurementTransform transform = MeasurementTransform::Identity;
  std::vector<long long> shots_grid;
  int trials = 10;
  std::uint64_t seed = 0;
};

struct KlSample {
  long long shots = 0;
  int trial = 0;
  double kl = 0.0;
  std::uint64_t seed = 0;  // the derived per-trial seed, recorded for replay
};

struct KlCurve {
  std::vector<KlSample> samples;                  // every (shots, trial) draw
  std::vector<std::pair<long long, double>> mean; // shots -> mean KL
  // Smallest grid shots with mean KL <= tol; -1 = "beyond-grid".
  long long shots_to_tolerance = -1;
  double last_mean_kl = 0.0;
};

// Runs the study: at each grid point draws `trials` multinomial samples
// (deterministic splitmix64-derived seeds), smooths the empirical
// distribution with delta = 1/(10*shots), and records KL against the truth.
KlCurve run_sampling_study(const SamplingStudy& study, double tol);

// |amplitudes|^2 after applying the measurement transform to the state.
RVector transformed_distribution(const CVector& state, MeasurementTransform t);

// Deterministic multinomial draw via inverse-CDF binary search (portable,
// unlike std::discrete_distribution).
std::vector<long long> multinomial_sample(const RVector& p, long long shots,
                                          std::uint64_t seed);

// Derives a stream seed from components (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c);

}  // namespace qdl
