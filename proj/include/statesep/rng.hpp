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

// Counter-based deterministic random streams. A stream is keyed by
// (seed, stream index), so Monte Carlo sample i can be generated on any
// shard by opening stream i directly; results are byte-identical for any
// shard count. The generator is splitmix64 with an explicit Box-Muller
// transform, avoiding std::normal_distribution whose output is
// implementation-defined.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include <Eigen/Dense>

namespace statesep {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) {
    // Decorrelate the key pair before use.
    std::uint64_t s = seed;
    const std::uint64_t a = detail::splitmix64(s);
    s = stream ^ 0x6A09E667F3BCC909ULL;
    const std::uint64_t b = detail::splitmix64(s);
    state_ = a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2));
  }

  std::uint64_t next_u64() { return detail::splitmix64(state_); }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // Standard normal via Box-Muller; pairs are cached.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::uint64_t state_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Haar-random pure state of the given dimension, drawn from stream
// (seed, index): complex standard gaussian vector, normalized.
inline Eigen::VectorXcd haar_state(int dim, std::uint64_t seed,
                                   std::uint64_t index) {
  CounterRng rng(seed, index);
  Eigen::VectorXcd v(dim);
  double norm_sq = 0.0;
  do {
    for (int k = 0; k < dim; ++k) {
      v(k) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
    }
    norm_sq = v.squaredNorm();
  } while (norm_sq < 1e-24);  // vanishing draws are astronomically rare
  return v / std::sqrt(norm_sq);
}

}  // namespace statesep
