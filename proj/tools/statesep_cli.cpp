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

// Command-line front end. Subcommands:
//
//   separate        success probability, coefficients, Kraus diagonals
//   sweep           CSV of probabilities and distinguishability over xi
//   lp-verify       closed form vs simplex vs vertex enumeration
//   teleport        exact chain run and/or Monte Carlo fidelity average
//   qubit-teleport  two-dimensional closed forms for an angle pair
//   optics          half-wave-plate synthesis of the separation map
//   reproduce       CSV data behind the reference figures
//
// JSON goes to stdout; the optics component list goes to stderr. All
// numeric output is rounded to 12 significant digits, so repeated runs
// with the same seed are byte-identical. Exit codes: 0 on success, 1 on
// domain or file errors, 2 on usage errors.

#include <cstdio>
#include <exception>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "statesep/json_io.hpp"
#include "statesep/statesep.hpp"

namespace {

using nlohmann::json;
using namespace statesep;

// Inline JSON is accepted wherever a state file path is expected.
Eigen::VectorXcd load_state_arg(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '[' || arg.front() == '{'))
    return load_state_json(json::parse(arg));
  std::ifstream in(arg);
  if (!in) throw std::invalid_argument("cannot open state file: " + arg);
  json j;
  in >> j;
  return load_state_json(j);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json lp_report_entry(const FiducialSpec& spec, double xi, int trials,
                     std::uint64_t seed) {
  const std::vector<double> b = beta_coefficients(spec, xi);
  const LpInstance lp = build_lp(spec, b);
  const LpSolution sol = solve_lp(lp);
  const std::optional<double> brute = brute_force_lp(lp);

  json entry;
  entry["xi"] = round_sig(xi);
  entry["p_closed_form"] = round_sig(success_probability(spec, xi));
  entry["p_lp"] = round_sig(sol.p_opt);
  entry["p_brute_force"] =
      brute ? json(round_sig(*brute)) : json(nullptr);
  entry["leakless"] = sol.leakless;
  entry["max_constraint_residual"] = round_sig(sol.max_constraint_residual);
  if (trials > 0) {
    const PerturbationResult pr = perturbation_test(spec, xi, trials, seed);
    entry["perturbation_ok"] =
        pr.passed && pr.feasible_samples == trials;
  }
  return entry;
}

int run(int argc, char** argv) {
  CLI::App app{"parametric separation of symmetric pure states"};
  app.require_subcommand(1);

  std::string fiducial_path;
  double xi = 0.0;

  auto* separate = app.add_subcommand(
      "separate", "separation map and success probability at one xi");
  separate->add_option("--fiducial", fiducial_path, "fiducial JSON file")
      ->required();
  separate->add_option("--xi", xi, "interpolation parameter in [0, 1]")
      ->required();

  double xi_min = 0.0, xi_max = 1.0;
  int steps = 101;
  auto* sweep = app.add_subcommand(
      "sweep", "CSV sweep of probability and distinguishability over xi");
  sweep->add_option("--fiducial", fiducial_path, "fiducial JSON file")
      ->required();
  sweep->add_option("--xi-min", xi_min, "sweep start (default 0)");
  sweep->add_option("--xi-max", xi_max, "sweep end (default 1)");
  sweep->add_option("--steps", steps, "number of grid points (default 101)");

  int xi_grid = 0, trials = 0;
  std::uint64_t seed = 0;
  bool xi_given = false;
  auto* lpv = app.add_subcommand(
      "lp-verify", "optimality certificate for the closed form");
  lpv->add_option("--fiducial", fiducial_path, "fiducial JSON file")
      ->required();
  auto* lpv_xi = lpv->add_option("--xi", xi, "single xi to verify");
  lpv->add_option("--xi-grid", xi_grid,
                  "verify a uniform grid of this many points over [0, 1]")
      ->excludes(lpv_xi);
  lpv->add_option("--trials", trials,
                  "feasible perturbations to draw per xi (0 disables)");
  lpv->add_option("--seed", seed, "perturbation stream seed");

  int samples = 0, shards = 0;
  std::string exact_input;
  auto* teleport = app.add_subcommand(
      "teleport", "teleportation through the separated channel");
  teleport->add_option("--fiducial", fiducial_path, "fiducial JSON file")
      ->required();
  teleport->add_option("--xi", xi, "interpolation parameter in [0, 1]")
      ->required();
  teleport->add_option("--samples", samples,
                       "Haar-averaged Monte Carlo sample count");
  teleport->add_option("--seed", seed, "Monte Carlo stream seed");
  teleport->add_option("--shards", shards,
                       "worker shards (0 = hardware concurrency)");
  teleport->add_option("--exact-input", exact_input,
                       "input state: JSON file path or inline JSON array");

  double alpha_deg = 0.0, beta_deg = 0.0;
  auto* qubit = app.add_subcommand(
      "qubit-teleport", "two-dimensional closed forms for an angle pair");
  qubit->add_option("--alpha-deg", alpha_deg, "channel angle in degrees")
      ->required();
  qubit->add_option("--beta-deg", beta_deg, "target angle in degrees")
      ->required();

  auto* optics = app.add_subcommand(
      "optics", "half-wave-plate synthesis of the separation map");
  optics->add_option("--fiducial", fiducial_path, "fiducial JSON file")
      ->required();
  optics->add_option("--xi", xi, "interpolation parameter in [0, 1]")
      ->required();

  std::string figure;
  auto* reproduce =
      app.add_subcommand("reproduce", "CSV data behind the reference figures");
  reproduce
      ->add_option("figure", figure, "one of: fig1, fig3, fig4b")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig3", "fig4b"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  xi_given = lpv_xi->count() > 0;

  if (separate->parsed()) {
    const FiducialSpec spec = load_fiducial_file(fiducial_path);
    const SeparationMap map = build_map(spec, xi);
    json out;
    out["xi"] = round_sig(xi);
    out["p_success"] = round_sig(map.p_success);
    out["b_coefficients"] = real_vector_to_json(beta_coefficients(spec, xi));
    out["kraus_success_diag"] = complex_vector_to_json(map.success_diag);
    out["kraus_failure_diag"] = complex_vector_to_json(map.failure_diag);
    emit(out);
    return 0;
  }

  if (sweep->parsed()) {
    const FiducialSpec spec = load_fiducial_file(fiducial_path);
    if (!(xi_min >= 0.0 && xi_min <= xi_max && xi_max <= 1.0))
      throw std::invalid_argument("sweep needs 0 <= xi-min <= xi-max <= 1");
    if (steps < 2) throw std::invalid_argument("sweep needs steps >= 2");
    const double d1a = d1_measure(spec, 0.0);
    const double d2a = d2_measure(spec, 0.0);
    std::cout << "xi,p_success,d1_alpha,d1_beta,d2_alpha,d2_beta\n";
    for (int i = 0; i < steps; ++i) {
      const double x = xi_min + (xi_max - xi_min) * i / (steps - 1);
      std::cout << format_sig(x) << ","
                << format_sig(success_probability(spec, x)) << ","
                << format_sig(d1a) << "," << format_sig(d1_measure(spec, x))
                << "," << format_sig(d2a) << ","
                << format_sig(d2_measure(spec, x)) << "\n";
    }
    return 0;
  }

  if (lpv->parsed()) {
    const FiducialSpec spec = load_fiducial_file(fiducial_path);
    if (xi_given) {
      emit(lp_report_entry(spec, xi, trials, seed));
    } else {
      if (xi_grid < 2)
        throw std::invalid_argument("lp-verify needs --xi or --xi-grid >= 2");
      json arr = json::array();
      for (int i = 0; i < xi_grid; ++i)
        arr.push_back(lp_report_entry(
            spec, static_cast<double>(i) / (xi_grid - 1), trials, seed));
      emit(arr);
    }
    return 0;
  }

  if (teleport->parsed()) {
    const FiducialSpec spec = load_fiducial_file(fiducial_path);
    json out;
    out["xi"] = round_sig(xi);
    out["p_success"] = round_sig(success_probability(spec, xi));
    out["f_ave_formula"] = round_sig(f_ave_formula(spec, xi));
    if (!exact_input.empty()) {
      const TeleportReport rep =
          run_exact(spec, xi, load_state_arg(exact_input));
      out["p_success"] = round_sig(rep.p_success);
      out["f_exact_input"] = round_sig(*rep.f_exact_input);
      json rows = json::array();
      for (const OutcomeRow& r : *rep.outcomes) {
        json row;
        row["fourier_outcome"] = r.fourier_outcome;
        row["shift_outcome"] = r.shift_outcome;
        row["probability"] = round_sig(r.probability);
        row["fidelity"] = round_sig(r.fidelity);
        rows.push_back(row);
      }
      out["outcomes"] = rows;
    }
    if (samples > 0) {
      TeleportScenario scenario;
      scenario.spec = spec;
      scenario.xi = xi;
      scenario.seed = seed;
      scenario.samples = samples;
      scenario.shards = shards;
      const TeleportReport rep = run_monte_carlo(scenario);
      out["p_success"] = round_sig(rep.p_success);
      json mc;
      mc["mean"] = round_sig(rep.monte_carlo->mean);
      mc["std_error"] = round_sig(rep.monte_carlo->std_error);
      mc["samples"] = rep.monte_carlo->samples;
      out["monte_carlo"] = mc;
    }
    emit(out);
    return 0;
  }

  if (qubit->parsed()) {
    const QubitConclusiveReport rep = qubit_conclusive(alpha_deg, beta_deg);
    json out;
    out["alpha_deg"] = round_sig(alpha_deg);
    out["beta_deg"] = round_sig(beta_deg);
    out["xi"] = round_sig(rep.xi);
    out["p_alpha"] = round_sig(rep.p_alpha);
    out["p_beta"] = round_sig(rep.p_beta);
    out["f_alpha"] = round_sig(rep.f_alpha);
    out["f_beta"] = round_sig(rep.f_beta);
    emit(out);
    return 0;
  }

  if (optics->parsed()) {
    const FiducialSpec spec = load_fiducial_file(fiducial_path);
    const OpticalLayout layout = synthesize(spec, xi);
    json out;
    out["xi"] = round_sig(xi);
    out["modes"] = layout.modes;
    json zeta_deg = json::array();
    for (double z : layout.zeta)
      zeta_deg.push_back(round_sig(z * 180.0 / std::numbers::pi));
    out["zeta_deg"] = zeta_deg;
    out["stage1_phases"] = real_vector_to_json(layout.stage1_phases);
    out["pbs_convention"] = "reflect-v";
    emit(out);
    for (std::size_t p = 0; p < layout.modes.size(); ++p)
      std::cerr << "mode " << layout.modes[p] << ": HWP at "
                << format_sig(layout.zeta[p] * 180.0 / std::numbers::pi)
                << " deg\n";
    return 0;
  }

  if (reproduce->parsed()) {
    if (figure == "fig1") {
      // Success probability as a function of the support overlap D a_min^2
      // and xi; the closed form depends only on the product.
      std::cout << "xi,d_amin_sq,p_success\n";
      for (int i = 0; i <= 100; ++i) {
        const double x = i / 100.0;
        for (int j = 1; j <= 50; ++j) {
          const double da = j / 50.0;
          const double p = 1.0 / ((1.0 - x) + x / da);
          std::cout << format_sig(x) << "," << format_sig(da) << ","
                    << format_sig(p) << "\n";
        }
      }
      return 0;
    }
    const std::vector<double> fig3_amp = {0.6386, 0.5841, 0.3817, 0.1321,
                                          0.2964};
    if (figure == "fig3") {
      const FiducialSpec spec = build_fiducial(5, fig3_amp);
      std::cout << "xi,d1,d2\n";
      for (int i = 0; i <= 100; ++i) {
        const double x = i / 100.0;
        std::cout << format_sig(x) << "," << format_sig(d1_measure(spec, x))
                  << "," << format_sig(d2_measure(spec, x)) << "\n";
      }
      return 0;
    }
    // fig4b: success probability and fidelity of qubit teleportation after
    // separating the 20-degree channel toward each wider angle.
    std::cout << "beta_deg,p_beta,f_beta\n";
    for (int i = 0; i <= 140; ++i) {
      const double beta = 20.0 + 0.5 * i;
      const QubitConclusiveReport rep = qubit_conclusive(20.0, beta);
      std::cout << format_sig(beta) << "," << format_sig(rep.p_beta) << ","
                << format_sig(rep.f_beta) << "\n";
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
