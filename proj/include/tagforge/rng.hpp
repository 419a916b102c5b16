// Copyright 2026 The tagforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TAGFORGE_RNG_HPP_
#define TAGFORGE_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace tagforge {

// SplitMix64 (Steele, Lea, Flood 2014). Every random decision in the
// library goes through this generator and the helpers below, so outputs
// are bit-identical across platforms given the same seed. The <random>
// distributions are deliberately avoided: their algorithms are
// implementation-defined.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double NextDouble() {
    return static_cast<double>(Next() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, bound). Unbiased via rejection.
  std::uint64_t NextBelow(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = Next();
      if (x >= threshold) return x % bound;
    }
  }

  // Standard normal, Marsaglia polar method (spare value discarded).
  double NextNormal() {
    for (;;) {
      const double u = 2.0 * NextDouble() - 1.0;
      const double v = 2.0 * NextDouble() - 1.0;
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }

  // Gamma(shape, 1) by Marsaglia-Tsang; shape < 1 uses the
  // Gamma(shape + 1) * U^(1/shape) boost.
  double NextGamma(double shape) {
    if (shape < 1.0) {
      const double g = NextGamma(shape + 1.0);
      double u = NextDouble();
      while (u == 0.0) u = NextDouble();
      return g * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x;
      double v;
      do {
        x = NextNormal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = NextDouble();
      if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
        return d * v;
      }
    }
  }

 private:
  std::uint64_t state_;
};

// Fisher-Yates shuffle driven by SplitMix64.
template <typename T>
void Shuffle(std::vector<T>& values, SplitMix64& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.NextBelow(i));
    std::swap(values[i - 1], values[j]);
  }
}

// Dirichlet sample with parameters `alpha` (all > 0). Redraws in the
// vanishingly rare event that every gamma variate underflows to zero.
inline std::vector<double> SampleDirichlet(std::span<const double> alpha,
                                           SplitMix64& rng) {
  std::vector<double> out(alpha.size());
  for (;;) {
    double sum = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      out[i] = rng.NextGamma(alpha[i]);
      sum += out[i];
    }
    if (sum > 0.0) {
      for (double& x : out) x /= sum;
      return out;
    }
  }
}

// Index drawn from the PMF `weights` (assumed to sum to ~1).
inline std::size_t SampleCategorical(std::span<const double> weights,
                                     SplitMix64& rng) {
  const double u = rng.NextDouble();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = i;
    cumulative += weights[i];
    if (u < cumulative) return i;
  }
  return last_positive;
}

}  // namespace tagforge

#endif  // TAGFORGE_RNG_HPP_
