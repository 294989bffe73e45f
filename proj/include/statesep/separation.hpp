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

// Optimal separation map for a symmetric family: a two-outcome quantum
// operation whose success branch sends every |alpha_j> to the interpolated
// |beta_j(xi)> with the same probability
//
//   p_success(xi) = 1 / ((1 - xi) + xi / (D a_min^2)),
//
// which is the largest value any map achieves uniformly over the family.
// Both Kraus operators are diagonal in the mode basis. The success diagonal
// already carries the sqrt(p_success) weight, so completeness reads
// A_S^dag A_S + A_F^dag A_F = I exactly.
//
// The dilation extends the pair to a unitary on mode x ancilla (ancilla
// dimension 2, composite index 2 * mode + ancilla). Starting the ancilla in
// |1> and reading 0 as success reproduces the two-outcome operation. The
// free ancilla-0 columns are completed per mode as
// (-conj(A_F_kk), conj(A_S_kk)), which is deterministic and matches the
// half-wave-plate blocks of the optical synthesis for phase-free specs.

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "statesep/families.hpp"
#include "statesep/fiducial.hpp"

namespace statesep {

struct SeparationMap {
  FiducialSpec spec;
  double xi = 0.0;
  double p_success = 0.0;
  Eigen::VectorXcd success_diag;  // diagonal of A_S
  Eigen::VectorXcd failure_diag;  // diagonal of A_F
};

inline double success_probability(const FiducialSpec& spec, double xi) {
  require_xi(xi);
  const double d_amin_sq = spec.support_dim * spec.a_min * spec.a_min;
  const double p = 1.0 / ((1.0 - xi) + xi / d_amin_sq);

  // Cross-check against the defining minimum of a_k^2 / b_k^2(xi).
  const std::vector<double> b = beta_coefficients(spec, xi);
  double ratio_min = 1.0;
  for (int k = 0; k < spec.n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    if (!spec.support[ku]) continue;
    const double a = spec.amplitudes[ku];
    ratio_min = std::min(ratio_min, (a * a) / (b[ku] * b[ku]));
  }
  if (std::abs(p - ratio_min) > 1e-12)
    throw std::logic_error("success probability cross-check failed");
  return p;
}

inline SeparationMap build_map(const FiducialSpec& spec, double xi) {
  require_xi(xi);
  SeparationMap map;
  map.spec = spec;
  map.xi = xi;
  map.p_success = success_probability(spec, xi);

  const double inv_damin = 1.0 / (spec.support_dim * spec.a_min * spec.a_min);
  const double den = (1.0 - xi) + xi * inv_damin;
  map.success_diag = Eigen::VectorXcd::Zero(spec.n);
  map.failure_diag = Eigen::VectorXcd::Zero(spec.n);
  for (int k = 0; k < spec.n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    if (!spec.support[ku]) {
      map.failure_diag(k) = 1.0;  // unsupported modes always fail
      continue;
    }
    const double a = spec.amplitudes[ku];
    const double inv_da = 1.0 / (spec.support_dim * a * a);
    const std::complex<double> twist = std::polar(1.0, -xi * spec.phases[ku]);
    map.success_diag(k) =
        twist * std::sqrt(((1.0 - xi) + xi * inv_da) / den);
    // inv_damin - inv_da is exactly zero at the minimal amplitude, so the
    // failure branch has exact zeros there.
    map.failure_diag(k) =
        twist * std::sqrt((xi / spec.support_dim) *
                          (1.0 / (spec.a_min * spec.a_min) - 1.0 / (a * a)) /
                          den);
  }
  return map;
}

struct MapImages {
  std::vector<Eigen::VectorXcd> success_states;
  // Absent when the failure probability vanishes (uniform spec at any xi,
  // or xi = 0), where normalized failure states are undefined.
  std::optional<std::vector<Eigen::VectorXcd>> failure_states;
};

// Normalized images of the family under both branches. Intended input is
// the alpha family of the same spec; the success images then reproduce the
// beta family and every unnormalized success image has squared norm
// p_success.
inline MapImages apply_map(const SeparationMap& map,
                           const SymmetricFamily& family) {
  if (family.spec.n != map.spec.n)
    throw std::invalid_argument("family dimension does not match map");
  MapImages out;
  const bool degenerate = map.p_success >= 1.0 - 1e-12;
  if (!degenerate) out.failure_states.emplace();
  for (const auto& state : family.states) {
    Eigen::VectorXcd s = map.success_diag.cwiseProduct(state);
    out.success_states.push_back(s / s.norm());
    if (!degenerate) {
      Eigen::VectorXcd f = map.failure_diag.cwiseProduct(state);
      out.failure_states->push_back(f / f.norm());
    }
  }
  return out;
}

// Unitary dilation on mode x ancilla; see the header comment for the
// column convention.
inline Eigen::MatrixXcd dilation(const SeparationMap& map) {
  const int n = map.spec.n;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    const std::complex<double> s = map.success_diag(k);
    const std::complex<double> f = map.failure_diag(k);
    u(2 * k + 0, 2 * k + 1) = s;
    u(2 * k + 1, 2 * k + 1) = f;
    u(2 * k + 0, 2 * k + 0) = -std::conj(f);
    u(2 * k + 1, 2 * k + 0) = std::conj(s);
  }
  return u;
}

}  // namespace statesep
