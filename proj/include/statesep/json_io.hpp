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

// JSON bindings for the CLI surface. Fiducial files look like
//
//   {"n": 5, "amplitudes": [...], "phases": [...]}
//
// with "phases" optional (zeros). Complex values serialize as [re, im]
// pairs. Every numeric output value is rounded through a 12-significant-
// digit text round-trip before serialization so that repeated runs and
// regression baselines are byte-stable.

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "statesep/fiducial.hpp"

namespace statesep {

inline std::string format_sig(double v, int digits = 12) {
  if (v == 0.0) v = 0.0;  // print negative zero as plain zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline double round_sig(double v, int digits = 12) {
  return std::strtod(format_sig(v, digits).c_str(), nullptr);
}

inline nlohmann::json complex_to_json(std::complex<double> z) {
  return nlohmann::json::array({round_sig(z.real()), round_sig(z.imag())});
}

inline nlohmann::json real_vector_to_json(const std::vector<double>& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (double x : v) arr.push_back(round_sig(x));
  return arr;
}

inline nlohmann::json complex_vector_to_json(const Eigen::VectorXcd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    arr.push_back(complex_to_json(v(i)));
  return arr;
}

inline FiducialSpec load_fiducial_json(const nlohmann::json& j) {
  if (!j.is_object())
    throw std::invalid_argument("fiducial JSON must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw std::invalid_argument("fiducial JSON needs an integer field \"n\"");
  if (!j.contains("amplitudes") || !j["amplitudes"].is_array())
    throw std::invalid_argument(
        "fiducial JSON needs an array field \"amplitudes\"");
  const int n = j["n"].get<int>();
  std::vector<double> amplitudes;
  for (const auto& a : j["amplitudes"]) {
    if (!a.is_number())
      throw std::invalid_argument("amplitudes must be numbers");
    amplitudes.push_back(a.get<double>());
  }
  std::vector<double> phases;
  if (j.contains("phases")) {
    if (!j["phases"].is_array())
      throw std::invalid_argument("\"phases\" must be an array");
    for (const auto& p : j["phases"]) {
      if (!p.is_number()) throw std::invalid_argument("phases must be numbers");
      phases.push_back(p.get<double>());
    }
  }
  return build_fiducial(n, std::move(amplitudes), std::move(phases));
}

inline FiducialSpec load_fiducial_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open fiducial file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("fiducial file is not valid JSON: " +
                                std::string(e.what()));
  }
  return load_fiducial_json(j);
}

// State vector from a JSON array whose elements are numbers (real
// amplitudes) or [re, im] pairs.
inline Eigen::VectorXcd load_state_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("state must be a JSON array");
  Eigen::VectorXcd v(j.size());
  Eigen::Index i = 0;
  for (const auto& e : j) {
    if (e.is_number()) {
      v(i) = e.get<double>();
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() &&
               e[1].is_number()) {
      v(i) = std::complex<double>(e[0].get<double>(), e[1].get<double>());
    } else {
      throw std::invalid_argument(
          "state entries must be numbers or [re, im] pairs");
    }
    ++i;
  }
  return v;
}

}  // namespace statesep
