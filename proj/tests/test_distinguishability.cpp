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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "statesep/distinguishability.hpp"
#include "statesep/separation.hpp"
#include "support/test_util.hpp"

using Catch::Approx;
using namespace statesep;

TEST_CASE("distinguishability of the reference spec", "[distinguishability]") {
  const FiducialSpec spec = testing::reference_spec();
  REQUIRE(d1_measure(spec, 0.0) == Approx(0.0872537052028).epsilon(1e-10));
  REQUIRE(d2_measure(spec, 0.0) == Approx(0.826552161695).epsilon(1e-10));
  REQUIRE(d1_measure(spec, 0.5) == Approx(0.543626852601).epsilon(1e-10));
  REQUIRE(d2_measure(spec, 0.5) == Approx(0.964769013501).epsilon(1e-10));
  REQUIRE(d1_measure(spec, 1.0) == Approx(1.0).margin(1e-13));
  REQUIRE(d2_measure(spec, 1.0) == Approx(1.0).margin(1e-13));
}

TEST_CASE("punctured supports saturate d1 but not d2", "[distinguishability]") {
  const FiducialSpec spec = build_fiducial(5, {0.7, 0.0, 0.5, 0.0,
                                               std::sqrt(1.0 - 0.74)});
  REQUIRE(d1_measure(spec, 1.0) == Approx(1.0).margin(1e-13));
  REQUIRE(d2_measure(spec, 1.0) == Approx(3.0 / 5.0).margin(1e-13));
}

TEST_CASE("d1 is affine and complementary to the success probability",
          "[distinguishability]") {
  CounterRng rng(2026, 20);
  for (int trial = 0; trial < 25; ++trial) {
    const FiducialSpec spec = testing::random_spec(rng);
    const double d1_0 = d1_measure(spec, 0.0);
    const double d1_1 = d1_measure(spec, 1.0);
    for (int i = 0; i <= 40; ++i) {
      const double xi = i / 40.0;
      const double d1 = d1_measure(spec, xi);
      REQUIRE(d1 == Approx((1.0 - xi) * d1_0 + xi * d1_1).margin(1e-12));
      // Gaining distinguishability costs exactly the success probability:
      // the product stays at its xi = 0 value.
      REQUIRE(success_probability(spec, xi) * d1 ==
              Approx(d1_0).margin(1e-12));
    }
  }
}

TEST_CASE("d2 grows monotonically along the interpolation",
          "[distinguishability]") {
  CounterRng rng(2026, 21);
  for (int trial = 0; trial < 25; ++trial) {
    const FiducialSpec spec = testing::random_spec(rng);
    double prev = d2_measure(spec, 0.0);
    for (int i = 1; i <= 50; ++i) {
      const double d2 = d2_measure(spec, i / 50.0);
      REQUIRE(d2 >= prev - 1e-12);
      prev = d2;
    }
  }
}

TEST_CASE("e derivatives match finite differences and concavity",
          "[distinguishability]") {
  CounterRng rng(2026, 22);
  const double h = 1e-5;
  for (int trial = 0; trial < 25; ++trial) {
    const FiducialSpec spec = testing::random_spec(rng);
    for (double xi : {0.1, 0.37, 0.62, 0.9}) {
      const EDerivatives d = e_derivatives(spec, xi);
      const double fd1 =
          (e_value(spec, xi + h) - e_value(spec, xi - h)) / (2.0 * h);
      const double fd2 = (e_value(spec, xi + h) - 2.0 * e_value(spec, xi) +
                          e_value(spec, xi - h)) /
                         (h * h);
      REQUIRE(d.first == Approx(fd1).margin(1e-6));
      REQUIRE(d.second == Approx(fd2).margin(1e-4));
      REQUIRE(d.second <= 1e-15);
    }
    // The slope vanishes exactly at the flat end of the interpolation.
    REQUIRE(e_derivatives(spec, 1.0).first == Approx(0.0).margin(1e-10));
  }
}

TEST_CASE("distinguishability report grids", "[distinguishability]") {
  const FiducialSpec spec = testing::reference_spec();
  const DistinguishabilityReport rep = report(spec, 11);
  REQUIRE(rep.xi_grid.size() == 11);
  REQUIRE(rep.xi_grid.front() == 0.0);
  REQUIRE(rep.xi_grid.back() == 1.0);
  for (std::size_t i = 0; i < rep.xi_grid.size(); ++i) {
    REQUIRE(rep.d1[i] == Approx(d1_measure(spec, rep.xi_grid[i])).margin(1e-14));
    REQUIRE(rep.d2[i] == Approx(d2_measure(spec, rep.xi_grid[i])).margin(1e-14));
    REQUIRE(rep.e_values[i] ==
            Approx(std::sqrt(spec.n * rep.d2[i])).margin(1e-12));
  }
  REQUIRE_THROWS_AS(report(spec, 1), std::invalid_argument);
}
