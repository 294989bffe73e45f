// Copyright 2026 The statesep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Fiducial state of a symmetric family: nonnegative amplitudes a_k and
// phases phi_k over n modes. The family member j carries the extra phase
// omega^{jk} with omega the primitive n-th root of unity. All downstream
// quantities (interpolated coefficients, separation maps, LP instances)
// are functions of this spec and the interpolation parameter xi in [0,1].
//
// The support vector y marks amplitudes above kSupportThreshold after
// renormalization; D is the support size, a_min the smallest supported
// amplitude. The xi-interpolated coefficients move every supported
// amplitude toward the flat value 1/sqrt(D) while unsupported modes stay
// empty:
//
//   b_k(xi)^2 = (1 - xi) a_k^2 + y_k xi / D.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace statesep {

// Amplitudes at or below this (after renormalization) count as unsupported.
inline constexpr double kSupportThreshold = 1e-12;

// Published amplitude tables are often rounded; accept |sum a^2 - 1| up to
// this and renormalize exactly.
inline constexpr double kNormSlack = 1e-3;

struct FiducialSpec {
  int n = 0;                       // number of modes
  std::vector<double> amplitudes;  // renormalized, nonnegative
  std::vector<double> phases;      // radians, zero when omitted
  std::vector<int> support;        // 1 above threshold, 0 otherwise
  int support_dim = 0;             // D = number of supported modes
  double a_min = 0.0;              // smallest supported amplitude
  double renorm = 1.0;             // divisor applied to the raw amplitudes
};

// Output-phase rule for the interpolated family. The linear rule shrinks
// each phase toward zero with xi; the negate rule flips its sign for every
// xi. Both agree with the fiducial phases at xi = 0 only for the linear
// rule, which is the default everywhere.
enum class PhaseRule { linear, negate };

inline void require_xi(double xi) {
  if (!(xi >= 0.0 && xi <= 1.0))
    throw std::invalid_argument("xi must lie in [0, 1], got " +
                                std::to_string(xi));
}

inline FiducialSpec build_fiducial(int n, std::vector<double> amplitudes,
                                   std::vector<double> phases = {}) {
  if (n < 2) throw std::invalid_argument("fiducial needs n >= 2 modes");
  if (static_cast<int>(amplitudes.size()) != n)
    throw std::invalid_argument("amplitude count does not match n");
  if (phases.empty()) phases.assign(static_cast<std::size_t>(n), 0.0);
  if (static_cast<int>(phases.size()) != n)
    throw std::invalid_argument("phase count does not match n");

  double norm_sq = 0.0;
  bool all_zero = true;
  for (double a : amplitudes) {
    if (!std::isfinite(a)) throw std::invalid_argument("amplitude not finite");
    if (a < 0.0) throw std::invalid_argument("amplitudes must be nonnegative");
    if (a > 0.0) all_zero = false;
    norm_sq += a * a;
  }
  for (double p : phases)
    if (!std::isfinite(p)) throw std::invalid_argument("phase not finite");
  if (all_zero) throw std::invalid_argument("all amplitudes are zero");
  if (std::abs(norm_sq - 1.0) > kNormSlack)
    throw std::invalid_argument("sum of squared amplitudes is " +
                                std::to_string(norm_sq) +
                                ", more than 1e-3 away from 1");

  FiducialSpec spec;
  spec.n = n;
  spec.renorm = std::sqrt(norm_sq);
  spec.amplitudes = std::move(amplitudes);
  for (double& a : spec.amplitudes) a /= spec.renorm;
  spec.phases = std::move(phases);

  spec.support.assign(static_cast<std::size_t>(n), 0);
  spec.a_min = 1.0;
  for (int k = 0; k < n; ++k) {
    if (spec.amplitudes[static_cast<std::size_t>(k)] > kSupportThreshold) {
      spec.support[static_cast<std::size_t>(k)] = 1;
      ++spec.support_dim;
      spec.a_min =
          std::min(spec.a_min, spec.amplitudes[static_cast<std::size_t>(k)]);
    }
  }
  return spec;
}

// Smallest supported squared coefficient at xi; b_min^2 = (1-xi) a_min^2 + xi/D.
inline double b_min_squared(const FiducialSpec& spec, double xi) {
  require_xi(xi);
  return (1.0 - xi) * spec.a_min * spec.a_min + xi / spec.support_dim;
}

// Interpolated coefficients b_k(xi); unit norm by construction.
inline std::vector<double> beta_coefficients(const FiducialSpec& spec,
                                             double xi) {
  require_xi(xi);
  std::vector<double> b(static_cast<std::size_t>(spec.n), 0.0);
  for (int k = 0; k < spec.n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    if (!spec.support[ku]) continue;
    const double a = spec.amplitudes[ku];
    b[ku] = std::sqrt((1.0 - xi) * a * a + xi / spec.support_dim);
  }
  return b;
}

// Output phases of the interpolated family under the chosen rule.
inline std::vector<double> beta_phases(const FiducialSpec& spec, double xi,
                                       PhaseRule rule = PhaseRule::linear) {
  require_xi(xi);
  std::vector<double> out(static_cast<std::size_t>(spec.n), 0.0);
  for (int k = 0; k < spec.n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    out[ku] = rule == PhaseRule::linear ? (1.0 - xi) * spec.phases[ku]
                                        : -spec.phases[ku];
  }
  return out;
}

}  // namespace statesep
