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

#ifndef TAGFORGE_PRIVACY_HPP_
#define TAGFORGE_PRIVACY_HPP_

#include <cmath>
#include <limits>

#include "tagforge/errors.hpp"
#include "tagforge/profiles.hpp"

namespace tagforge {

// All information quantities are in bits.

// Shannon entropy with the 0 log 0 = 0 convention.
inline double Entropy(const Profile& p) {
  double h = 0.0;
  for (double x : p.components()) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

// Kullback-Leibler divergence D(p || q). +infinity when p puts mass where
// q has none.
inline double KlDivergence(const Profile& p, const Profile& q) {
  RequireSameCategories(p, q);
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    d += p[i] * std::log2(p[i] / q[i]);
  }
  // Rounding can leave a tiny negative sum for nearly equal arguments.
  return d > 0.0 ? d : 0.0;
}

// Privacy risk of an apparent profile: its divergence from the
// population profile. May be +infinity.
class PrivacyRisk {
 public:
  explicit PrivacyRisk(double bits) : bits_(bits) {
    if (!(bits >= 0.0)) throw ValidationError("privacy risk must be >= 0");
  }

  double bits() const { return bits_; }
  bool is_finite() const { return std::isfinite(bits_); }

  friend auto operator<=>(const PrivacyRisk&, const PrivacyRisk&) = default;

 private:
  double bits_;
};

inline PrivacyRisk ComputePrivacyRisk(const Profile& apparent,
                                      const Profile& population) {
  return PrivacyRisk(KlDivergence(apparent, population));
}

// Relative reduction (R0 - R) / R0; negative when the risk grew.
inline double RiskReduction(PrivacyRisk initial, PrivacyRisk final_risk) {
  if (!(initial.bits() > 0.0) || !initial.is_finite()) {
    throw NumericError(
        "risk reduction is undefined for a zero or infinite initial risk");
  }
  return (initial.bits() - final_risk.bits()) / initial.bits();
}

}  // namespace tagforge

#endif  // TAGFORGE_PRIVACY_HPP_
