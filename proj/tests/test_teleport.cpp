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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "statesep/teleport.hpp"
#include "support/test_util.hpp"

using Catch::Approx;
using namespace statesep;

namespace {

FiducialSpec qubit_channel(double alpha_deg) {
  const double half = alpha_deg * std::numbers::pi / 360.0;
  return build_fiducial(2, {std::cos(half), std::sin(half)});
}

FiducialSpec punctured_channel() {
  return build_fiducial(5, {0.7, 0.0, 0.5, 0.0, std::sqrt(0.26)});
}

}  // namespace

TEST_CASE("generalized xor permutation", "[teleport]") {
  REQUIRE_THROWS_AS(gxor_permutation(1), std::invalid_argument);

  // |2,1> -> |2, 2-1> is a fixed point in dimension 3.
  const auto perm3 = gxor_permutation(3);
  REQUIRE(perm3[2 * 3 + 1] == 2 * 3 + 1);
  REQUIRE(perm3[2 * 3 + 0] == 2 * 3 + 2);

  for (int dim = 2; dim <= 6; ++dim) {
    const auto perm = gxor_permutation(dim);
    auto sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (int idx = 0; idx < dim * dim; ++idx) {
      REQUIRE(sorted[static_cast<std::size_t>(idx)] == idx);  // bijection
      const int image = perm[static_cast<std::size_t>(idx)];
      REQUIRE(perm[static_cast<std::size_t>(image)] == idx);  // involution
      REQUIRE(image / dim == idx / dim);  // control register untouched
    }
  }
}

TEST_CASE("fourier states and the correction gates", "[teleport]") {
  const int dim = 5;
  for (int m = 0; m < dim; ++m) {
    const Eigen::VectorXcd wm = fourier_state(dim, m);
    for (int l = 0; l < dim; ++l) {
      const std::complex<double> overlap = fourier_state(dim, l).dot(wm);
      REQUIRE(std::abs(overlap - (l == m ? 1.0 : 0.0)) < 1e-14);
    }
    // The phase gate walks the Fourier ladder.
    const Eigen::VectorXcd stepped = phase_power(wm, 2);
    REQUIRE((stepped - fourier_state(dim, (m + 2) % dim)).norm() < 1e-14);
  }

  Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(dim);
  basis(1) = 1.0;
  const Eigen::VectorXcd shifted = shift_power(basis, 3);
  REQUIRE(std::abs(shifted(4) - 1.0) < 1e-15);
  REQUIRE(shift_power(shifted, dim - 3).isApprox(basis, 1e-15));
}

TEST_CASE("average fidelity formula", "[teleport]") {
  const FiducialSpec partial =
      build_fiducial(3, {std::sqrt(0.5), std::sqrt(0.5), 0.0});
  REQUIRE(f_ave_formula(partial, 1.0) == Approx(0.75).margin(1e-13));
  REQUIRE(f_ave_formula(qubit_channel(20.0), 0.0) ==
          Approx(0.780673381109).margin(1e-11));
  REQUIRE(f_ave_formula(testing::reference_spec(), 1.0) ==
          Approx(1.0).margin(1e-12));
}

TEST_CASE("exact chain against closed forms", "[teleport]") {
  SECTION("maximally entangled channel teleports perfectly") {
    const double r = 1.0 / std::sqrt(3.0);
    const FiducialSpec uniform = build_fiducial(3, {r, r, r});
    const Eigen::VectorXcd input = haar_state(3, 99, 0);
    const TeleportReport rep = run_exact(uniform, 0.0, input);
    REQUIRE(rep.p_success == Approx(1.0).margin(1e-12));
    REQUIRE(*rep.f_exact_input == Approx(1.0).margin(1e-12));
  }

  SECTION("qubit channel success probability is input independent") {
    const QubitConclusiveReport q = qubit_conclusive(20.0, 50.0);
    const FiducialSpec spec = qubit_channel(20.0);
    for (int i = 0; i < 25; ++i) {
      const TeleportReport rep =
          run_exact(spec, q.xi, haar_state(2, 7, static_cast<std::uint64_t>(i)));
      REQUIRE(rep.p_success == Approx(0.168827792231).margin(1e-9));
    }
  }

  SECTION("full interpolation teleports every outcome faithfully") {
    const FiducialSpec spec = testing::reference_spec();
    const TeleportReport rep = run_exact(spec, 1.0, haar_state(5, 3, 0));
    REQUIRE(rep.p_success == Approx(0.08725370520278769).margin(1e-11));
    REQUIRE(*rep.f_exact_input == Approx(1.0).margin(1e-10));
    REQUIRE(rep.outcomes->size() == 25);
    double total = 0.0;
    for (const OutcomeRow& row : *rep.outcomes) {
      total += row.probability;
      REQUIRE(row.probability == Approx(1.0 / 25.0).margin(1e-10));
      REQUIRE(row.fidelity == Approx(1.0).margin(1e-10));
    }
    REQUIRE(total == Approx(1.0).margin(1e-12));
  }

  SECTION("success probability matches the closed form on random specs") {
    CounterRng rng(2026, 40);
    for (int trial = 0; trial < 8; ++trial) {
      testing::SpecOptions opt;
      opt.n_max = 5;
      opt.random_phases = trial % 3 == 0;
      const FiducialSpec spec = testing::random_spec(rng, opt);
      const double xi = rng.next_double();
      const TeleportReport rep =
          run_exact(spec, xi, haar_state(spec.n, 11, static_cast<std::uint64_t>(trial)));
      REQUIRE(rep.p_success ==
              Approx(success_probability(spec, xi)).margin(1e-10));
      double total = 0.0;
      for (const OutcomeRow& row : *rep.outcomes) total += row.probability;
      REQUIRE(total == Approx(1.0).margin(1e-11));
    }
  }

  SECTION("input validation") {
    const FiducialSpec spec = qubit_channel(20.0);
    REQUIRE_THROWS_AS(run_exact(spec, 0.5, Eigen::VectorXcd::Ones(3)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(run_exact(spec, 0.5, Eigen::VectorXcd::Zero(2)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(run_exact(spec, 1.5, Eigen::VectorXcd::Ones(2)),
                      std::invalid_argument);
  }
}

TEST_CASE("monte carlo averages over haar inputs", "[teleport][montecarlo]") {
  SECTION("qubit channel reproduces the conclusive fidelity") {
    const QubitConclusiveReport q = qubit_conclusive(20.0, 50.0);
    TeleportScenario scenario;
    scenario.spec = qubit_channel(20.0);
    scenario.xi = q.xi;
    scenario.seed = 42;
    scenario.samples = 20000;
    scenario.shards = 1;
    const TeleportReport rep = run_monte_carlo(scenario);
    const MonteCarloStats& mc = *rep.monte_carlo;
    REQUIRE(mc.samples == 20000);
    REQUIRE(mc.std_error > 0.0);
    REQUIRE(std::abs(mc.mean - 0.922014814373) < 4.0 * mc.std_error);
    REQUIRE(rep.p_success == Approx(q.p_beta).margin(1e-10));
  }

  SECTION("deterministic across repeat runs and shard counts") {
    TeleportScenario scenario;
    scenario.spec = punctured_channel();
    scenario.xi = 0.4;
    scenario.seed = 7;
    scenario.samples = 300;
    scenario.shards = 1;
    const TeleportReport serial = run_monte_carlo(scenario);
    scenario.shards = 3;
    const TeleportReport sharded = run_monte_carlo(scenario);
    const TeleportReport again = run_monte_carlo(scenario);
    REQUIRE(serial.monte_carlo->mean == sharded.monte_carlo->mean);
    REQUIRE(serial.monte_carlo->std_error == sharded.monte_carlo->std_error);
    REQUIRE(again.monte_carlo->mean == sharded.monte_carlo->mean);
  }

  SECTION("punctured channel matches the fidelity formula") {
    TeleportScenario scenario;
    scenario.spec = punctured_channel();
    scenario.xi = 0.4;
    scenario.seed = 5;
    scenario.samples = 2000;
    scenario.shards = 2;
    const TeleportReport rep = run_monte_carlo(scenario);
    const MonteCarloStats& mc = *rep.monte_carlo;
    REQUIRE(std::abs(mc.mean - f_ave_formula(scenario.spec, scenario.xi)) <
            4.0 * mc.std_error);
  }

  SECTION("sample count validation") {
    TeleportScenario scenario;
    scenario.spec = qubit_channel(20.0);
    scenario.samples = 0;
    REQUIRE_THROWS_AS(run_monte_carlo(scenario), std::invalid_argument);
  }
}

TEST_CASE("qubit conclusive teleportation closed forms", "[teleport][qubit]") {
  const QubitConclusiveReport q = qubit_conclusive(20.0, 50.0);
  REQUIRE(q.xi == Approx(0.3159597133486626).margin(1e-14));
  REQUIRE(q.p_alpha == Approx(0.0603073792141).margin(1e-11));
  REQUIRE(q.f_alpha == Approx(0.780673381109).margin(1e-11));
  REQUIRE(q.p_beta == Approx(0.168827792231).margin(1e-11));
  REQUIRE(q.f_beta == Approx(0.922014814373).margin(1e-11));

  // Widening the angle trades success odds against fidelity through the
  // same machinery as the general separation map.
  const double alpha_deg = 25.0;
  const FiducialSpec spec = qubit_channel(alpha_deg);
  for (double beta_deg : {25.0, 40.0, 55.0, 70.0, 90.0}) {
    const QubitConclusiveReport r = qubit_conclusive(alpha_deg, beta_deg);
    REQUIRE(r.p_beta == Approx(success_probability(spec, r.xi)).margin(1e-12));
    REQUIRE(r.f_beta == Approx(f_ave_formula(spec, r.xi)).margin(1e-12));
  }
  REQUIRE(qubit_conclusive(90.0, 90.0).p_beta == Approx(1.0).margin(1e-13));

  REQUIRE_THROWS_AS(qubit_conclusive(50.0, 20.0), std::invalid_argument);
  REQUIRE_THROWS_AS(qubit_conclusive(0.0, 50.0), std::invalid_argument);
  REQUIRE_THROWS_AS(qubit_conclusive(20.0, 95.0), std::invalid_argument);
}
