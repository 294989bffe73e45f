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

// Distinguishability measures for the interpolated family at parameter xi.
//
//   d1 = D * b_min^2(xi)        affine in xi, reaches 1 only at xi = 1
//                               for full support
//   d2 = (sum_k b_k(xi))^2 / n  grows monotonically with xi
//
// Both measures increase with xi while the separation success probability
// decreases; the product p_success(xi) * d1(xi) equals d1(0) identically.
// e_value = sum_k b_k(xi) is the square root of n * d2; its first
// derivative in xi vanishes at xi = 1 and its second derivative is never
// positive, which makes d2 concave-driven and monotone on [0, 1].

#include <cmath>
#include <stdexcept>
#include <vector>

#include "statesep/fiducial.hpp"

namespace statesep {

inline double d1_measure(const FiducialSpec& spec, double xi) {
  return spec.support_dim * b_min_squared(spec, xi);
}

inline double e_value(const FiducialSpec& spec, double xi) {
  const std::vector<double> b = beta_coefficients(spec, xi);
  double sum = 0.0;
  for (double v : b) sum += v;
  return sum;
}

inline double d2_measure(const FiducialSpec& spec, double xi) {
  const double e = e_value(spec, xi);
  return e * e / spec.n;
}

struct EDerivatives {
  double first = 0.0;
  double second = 0.0;
};

inline EDerivatives e_derivatives(const FiducialSpec& spec, double xi) {
  require_xi(xi);
  EDerivatives out;
  const double inv_d = 1.0 / spec.support_dim;
  for (int k = 0; k < spec.n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    if (!spec.support[ku]) continue;
    const double a_sq = spec.amplitudes[ku] * spec.amplitudes[ku];
    const double b_sq = (1.0 - xi) * a_sq + xi * inv_d;
    const double gap = inv_d - a_sq;
    out.first += gap / (2.0 * std::sqrt(b_sq));
    out.second -= gap * gap / (4.0 * b_sq * std::sqrt(b_sq));
  }
  return out;
}

struct DistinguishabilityReport {
  std::vector<double> xi_grid;
  std::vector<double> d1;
  std::vector<double> d2;
  std::vector<double> e_values;
};

// Uniform grid over [0, 1] including both endpoints. Both measures are
// verified nondecreasing along the grid before returning.
inline DistinguishabilityReport report(const FiducialSpec& spec,
                                       int grid_points) {
  if (grid_points < 2)
    throw std::invalid_argument("report needs at least 2 grid points");
  DistinguishabilityReport rep;
  for (int i = 0; i < grid_points; ++i) {
    const double xi = static_cast<double>(i) / (grid_points - 1);
    rep.xi_grid.push_back(xi);
    rep.d1.push_back(d1_measure(spec, xi));
    rep.d2.push_back(d2_measure(spec, xi));
    rep.e_values.push_back(e_value(spec, xi));
  }
  for (int i = 1; i < grid_points; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    if (rep.d1[iu] < rep.d1[iu - 1] - 1e-12 ||
        rep.d2[iu] < rep.d2[iu - 1] - 1e-12)
      throw std::logic_error("distinguishability grid is not monotone");
  }
  return rep;
}

}  // namespace statesep
