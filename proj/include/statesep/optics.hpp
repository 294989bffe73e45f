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

// Photonic realization of the separation map for phase-free specs. Each
// supported mode is a propagation path carrying one polarization qubit;
// the second stage places one half-wave plate per path. With the Jones
// matrix
//
//   H(zeta) = [[cos 2zeta, sin 2zeta], [sin 2zeta, -cos 2zeta]]
//
// and the identification (h, v) = (ancilla 0, ancilla 1), choosing
//   sin 2zeta_k = success diagonal entry,  cos 2zeta_k = -failure entry
// makes the per-path plate equal the per-mode dilation block exactly.
// This fixes the branch zeta_k in [pi/4, pi/2]: pi/4 at the minimal
// amplitude (pure success) and approaching pi/2 where the success entry
// vanishes. A polarizing beam splitter that reflects v and transmits h
// then separates the success (h) and failure (v) branches. Unsupported
// modes get no plate; they carry no amplitude and route to failure.

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "statesep/fiducial.hpp"
#include "statesep/separation.hpp"

namespace statesep {

inline Eigen::Matrix2d jones_hwp(double zeta) {
  Eigen::Matrix2d h;
  h << std::cos(2.0 * zeta), std::sin(2.0 * zeta), std::sin(2.0 * zeta),
      -std::cos(2.0 * zeta);
  return h;
}

struct OpticalLayout {
  FiducialSpec spec;
  double xi = 0.0;
  std::vector<int> modes;            // supported mode indices, ascending
  std::vector<double> zeta;          // plate angle per path, radians
  std::vector<double> stage1_phases; // preparation phases, zero here
};

inline OpticalLayout synthesize(const FiducialSpec& spec, double xi) {
  require_xi(xi);
  for (double p : spec.phases)
    if (std::abs(p) > 1e-12)
      throw std::invalid_argument(
          "optical synthesis requires a phase-free spec");

  const SeparationMap map = build_map(spec, xi);
  OpticalLayout layout;
  layout.spec = spec;
  layout.xi = xi;
  for (int k = 0; k < spec.n; ++k) {
    if (!spec.support[static_cast<std::size_t>(k)]) continue;
    layout.modes.push_back(k);
    const double s = map.success_diag(k).real();
    const double c = -map.failure_diag(k).real();
    layout.zeta.push_back(0.5 * std::atan2(s, c));
    layout.stage1_phases.push_back(0.0);
  }
  return layout;
}

// Second-stage unitary on path x polarization over the supported modes,
// block-diagonal with one Jones matrix per path (row 2p + polarization,
// h = 0, v = 1). Verified against the separation diagonals before return.
inline Eigen::MatrixXd assemble_stage2(const OpticalLayout& layout) {
  const SeparationMap map = build_map(layout.spec, layout.xi);
  const int d = static_cast<int>(layout.modes.size());
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  for (int p = 0; p < d; ++p) {
    const Eigen::Matrix2d h = jones_hwp(layout.zeta[static_cast<std::size_t>(p)]);
    u.block<2, 2>(2 * p, 2 * p) = h;
    const int k = layout.modes[static_cast<std::size_t>(p)];
    if (std::abs(h(0, 1) - map.success_diag(k).real()) > 1e-12 ||
        std::abs(h(1, 1) - map.failure_diag(k).real()) > 1e-12)
      throw std::logic_error(
          "assembled plate disagrees with the separation diagonals");
  }
  return u;
}

}  // namespace statesep
