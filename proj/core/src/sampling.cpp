// Shot-count study: multinomial sampling, measurement-basis transforms, and
// KL convergence curves.
#include "qdl/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace qdl {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Orthonormal Walsh-Hadamard butterfly, in place (self-inverse).
void walsh_inplace(CVector& x) {
  const std::size_t n = x.size();
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const Complex a = x[j], b = x[j + h];
        x[j] = r * (a + b);
        x[j + h] = r * (a - b);
      }
    }
  }
}

// Forward orthonormal DFT: X_k = n^(-1/2) sum_j x_j exp(-2*pi*i*j*k/n).
void dft_inplace(CVector& x) {
  const std::size_t n = x.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    const Complex wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex u = x[i + k];
        const Complex v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (Complex& c : x) c *= norm;
}

}  // namespace

std::string transform_name(MeasurementTransform t) {
  switch (t) {
    case MeasurementTransform::Identity: return "identity";
    case MeasurementTransform::QFT: return "qft";
    case MeasurementTransform::Walsh: return "walsh";
  }
  throw ValidationError("unknown transform");
}

double kl_divergence(const RVector& p, const RVector& q) {
  if (p.size() != q.size()) throw DimensionError("KL inputs must have equal length");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0) throw DomainError("KL inputs must be nonnegative");
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
    acc += p[i] * std::log(p[i] / q[i]);
  }
  return acc;
}

RVector transformed_distribution(const CVector& state, MeasurementTransform t) {
  CVector work = state;
  switch (t) {
    case MeasurementTransform::Identity: break;
    case MeasurementTransform::QFT:
      if ((work.size() & (work.size() - 1)) != 0) {
        throw DimensionError("transform length must be a power of two");
      }
      dft_inplace(work);
      break;
    case MeasurementTransform::Walsh:
      if ((work.size() & (work.size() - 1)) != 0) {
        throw DimensionError("transform length must be a power of two");
      }
      walsh_inplace(work);
      break;
  }
  RVector probs(work.size());
  for (std::size_t i = 0; i < work.size(); ++i) probs[i] = std::norm(work[i]);
  return probs;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
  return splitmix64(base ^ splitmix64(a ^ splitmix64(b ^ splitmix64(c))));
}

std::vector<long long> multinomial_sample(const RVector& p, long long shots,
                                          std::uint64_t seed) {
  if (shots < 0) throw DomainError("shot count must be nonnegative");
  RVector cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0) throw DomainError("probabilities must be nonnegative");
    acc += p[i];
    cdf[i] = acc;
  }
  if (acc <= 0.0) throw DegenerateInputError("cannot sample the zero distribution");
  std::mt19937_64 rng(seed);
  std::vector<long long> counts(p.size(), 0);
  for (long long s = 0; s < shots; ++s) {
    // 53-bit uniform in [0, 1), scaled to the (possibly inexact) total mass.
    const double u = acc * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx =
        std::min(static_cast<std::size_t>(it - cdf.begin()), p.size() - 1);
    ++counts[idx];
  }
  return counts;
}

KlCurve run_sampling_study(const SamplingStudy& study, double tol) {
  KlCurve curve;
  const std::size_t outcomes = study.distribution.size();
  if (outcomes == 0) throw DegenerateInputError("empty study distribution");
  const auto transform_tag = static_cast<std::uint64_t>(study.transform);
  for (const long long shots : study.shots_grid) {
    if (shots <= 0) throw DomainError("shots grid entries must be positive");
    const double delta = 1.0 / (10.0 * static_cast<double>(shots));
    const double z = 1.0 + static_cast<double>(outcomes) * delta;
    double mean = 0.0;
    for (int trial = 0; trial < study.trials; ++trial) {
      const std::uint64_t seed =
          derive_seed(study.seed, transform_tag, static_cast<std::uint64_t>(shots),
                      static_cast<std::uint64_t>(trial));
      const std::vector<long long> counts = multinomial_sample(study.distribution, shots, seed);
      RVector qhat(outcomes);
      for (std::size_t i = 0; i < outcomes; ++i) {
        qhat[i] = (static_cast<double>(counts[i]) / static_cast<double>(shots) + delta) / z;
      }
      const double kl = kl_divergence(study.distribution, qhat);
      curve.samples.push_back({shots, trial, kl, seed});
      mean += kl;
    }
    mean /= static_cast<double>(study.trials);
    curve.mean.emplace_back(shots, mean);
    curve.last_mean_kl = mean;
    if (curve.shots_to_tolerance < 0 && mean <= tol) curve.shots_to_tolerance = shots;
  }
  return curve;
}

}  // namespace qdl
