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

// Symmetric families of pure states over n modes. Member j differs from
// member 0 by the componentwise phase omega^{jk}, so all pairwise overlaps
// depend only on the index difference mod n.
//
//   alpha family: components a_k e^{i phi_k} omega^{jk}
//   u family:     flat components y_k / sqrt(D) times omega^{jk}
//   beta family:  interpolated components b_k(xi) e^{i phi_k(xi)} omega^{jk}

#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "statesep/fiducial.hpp"

namespace statesep {

struct SymmetricFamily {
  FiducialSpec spec;
  std::complex<double> omega;  // primitive n-th root of unity
  std::vector<Eigen::VectorXcd> states;
};

namespace detail {

// State j from per-mode magnitudes and phases; component k gets the extra
// rotation omega^{jk}.
inline SymmetricFamily family_from_polar(const FiducialSpec& spec,
                                         const std::vector<double>& mags,
                                         const std::vector<double>& phases) {
  SymmetricFamily fam;
  fam.spec = spec;
  const double step = 2.0 * std::numbers::pi / spec.n;
  fam.omega = std::polar(1.0, step);
  fam.states.reserve(static_cast<std::size_t>(spec.n));
  for (int j = 0; j < spec.n; ++j) {
    Eigen::VectorXcd v(spec.n);
    for (int k = 0; k < spec.n; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      v(k) = std::polar(mags[ku], phases[ku] + step * j * k);
    }
    fam.states.push_back(std::move(v));
  }
  return fam;
}

}  // namespace detail

inline SymmetricFamily alpha_family(const FiducialSpec& spec) {
  return detail::family_from_polar(spec, spec.amplitudes, spec.phases);
}

// Flat reference family on the support: components y_k / sqrt(D).
inline SymmetricFamily u_family(const FiducialSpec& spec) {
  std::vector<double> mags(static_cast<std::size_t>(spec.n), 0.0);
  const double flat = 1.0 / std::sqrt(static_cast<double>(spec.support_dim));
  for (int k = 0; k < spec.n; ++k)
    if (spec.support[static_cast<std::size_t>(k)])
      mags[static_cast<std::size_t>(k)] = flat;
  std::vector<double> zeros(static_cast<std::size_t>(spec.n), 0.0);
  return detail::family_from_polar(spec, mags, zeros);
}

inline SymmetricFamily beta_family(const FiducialSpec& spec, double xi,
                                   PhaseRule rule = PhaseRule::linear) {
  return detail::family_from_polar(spec, beta_coefficients(spec, xi),
                                   beta_phases(spec, xi, rule));
}

}  // namespace statesep
