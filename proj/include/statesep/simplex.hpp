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

// Dense bounded-variable primal simplex for
//
//   maximize c.x  subject to  A x <= b,  0 <= x <= u.
//
// One slack per row turns the constraints into an equality system; slacks
// have no upper bound. The all-slack basis is feasible because b >= 0 for
// every instance built here. Entering and leaving variables follow Bland's
// smallest-index rule, which rules out cycling on degenerate vertices, and
// an iteration cap converts any stall into a diagnostic failure instead of
// a hang. Basis systems are refactorized from scratch each iteration with
// full pivoting; the problems are small (tens of variables), so stability
// is worth far more than speed here.
//
// The result carries explicit optimality evidence: the largest primal
// constraint violation and the largest dual feasibility / complementary
// slackness residual at the returned point.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace statesep {

struct SimplexResult {
  Eigen::VectorXd x;  // structural variables only
  double objective = 0.0;
  int iterations = 0;
  double max_primal_residual = 0.0;
  double max_dual_residual = 0.0;
};

namespace detail {

inline constexpr double kReducedCostTol = 1e-9;
inline constexpr double kPivotTol = 1e-11;
inline constexpr double kRatioTieTol = 1e-12;
inline constexpr int kIterationCap = 20000;

}  // namespace detail

inline SimplexResult bounded_simplex(const Eigen::VectorXd& c,
                                     const Eigen::MatrixXd& a,
                                     const Eigen::VectorXd& b,
                                     const Eigen::VectorXd& upper) {
  const int m = static_cast<int>(a.rows());
  const int ns = static_cast<int>(a.cols());
  if (c.size() != ns || b.size() != m || upper.size() != ns)
    throw std::invalid_argument("simplex dimensions are inconsistent");
  for (int i = 0; i < m; ++i)
    if (b(i) < 0.0) throw std::invalid_argument("simplex requires b >= 0");

  const double inf = std::numeric_limits<double>::infinity();
  const int nv = ns + m;  // structural then slack
  auto col = [&](int j) -> Eigen::VectorXd {
    if (j < ns) return a.col(j);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e(j - ns) = 1.0;
    return e;
  };
  auto upper_of = [&](int j) { return j < ns ? upper(j) : inf; };
  auto cost_of = [&](int j) { return j < ns ? c(j) : 0.0; };

  // Status per variable: -1 basic, 0 at lower bound (all lower bounds are
  // zero), 1 at upper bound.
  std::vector<int> status(static_cast<std::size_t>(nv), 0);
  std::vector<int> basis(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    basis[static_cast<std::size_t>(i)] = ns + i;
    status[static_cast<std::size_t>(ns + i)] = -1;
  }

  Eigen::VectorXd x_basic(m);
  Eigen::VectorXd y(m);
  Eigen::MatrixXd basis_mat(m, m);

  int iter = 0;
  for (;; ++iter) {
    if (iter > detail::kIterationCap)
      throw std::runtime_error("simplex hit the iteration cap");

    for (int i = 0; i < m; ++i)
      basis_mat.col(i) = col(basis[static_cast<std::size_t>(i)]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_mat);
    if (!lu.isInvertible())
      throw std::runtime_error("simplex basis became singular");

    // Basic values given the nonbasic bound assignment; nonbasic variables
    // at their lower bound contribute nothing because lower bounds are zero.
    Eigen::VectorXd rhs = b;
    for (int j = 0; j < nv; ++j)
      if (status[static_cast<std::size_t>(j)] == 1) rhs -= col(j) * upper_of(j);
    x_basic = lu.solve(rhs);

    Eigen::VectorXd cb(m);
    for (int i = 0; i < m; ++i)
      cb(i) = cost_of(basis[static_cast<std::size_t>(i)]);
    y = lu.transpose().solve(cb);

    // Entering variable, Bland's rule: the smallest index whose reduced
    // cost points toward improvement.
    int entering = -1;
    int direction = 0;  // +1 rising from lower, -1 falling from upper
    for (int j = 0; j < nv; ++j) {
      const int st = status[static_cast<std::size_t>(j)];
      if (st == -1) continue;
      const double d = cost_of(j) - y.dot(col(j));
      if (st == 0 && d > detail::kReducedCostTol) {
        entering = j;
        direction = 1;
        break;
      }
      if (st == 1 && d < -detail::kReducedCostTol) {
        entering = j;
        direction = -1;
        break;
      }
    }
    if (entering < 0) break;  // optimal

    const Eigen::VectorXd w = lu.solve(col(entering));

    // Ratio test: basic variable i moves by -t * delta_i for step t >= 0.
    // The entering variable itself may stop first by reaching its other
    // bound (a bound flip, leaving_row stays -1).
    double t_best = upper_of(entering);
    int leaving_row = -1;
    for (int i = 0; i < m; ++i) {
      const double delta = direction * w(i);
      const int bj = basis[static_cast<std::size_t>(i)];
      double t_i = inf;
      if (delta > detail::kPivotTol) {
        t_i = x_basic(i) / delta;
      } else if (delta < -detail::kPivotTol && upper_of(bj) < inf) {
        t_i = (x_basic(i) - upper_of(bj)) / delta;
      }
      if (t_i == inf) continue;
      if (t_i < 0.0) t_i = 0.0;  // roundoff pushed a basic value past its bound
      if (t_i < t_best - detail::kRatioTieTol) {
        t_best = t_i;
        leaving_row = i;
      } else if (t_i <= t_best + detail::kRatioTieTol && leaving_row >= 0 &&
                 bj < basis[static_cast<std::size_t>(leaving_row)]) {
        // Near-tie: Bland prefers the smallest leaving variable index.
        t_best = std::min(t_best, t_i);
        leaving_row = i;
      }
    }
    if (!(t_best < inf))
      throw std::runtime_error("simplex detected an unbounded direction");

    if (leaving_row < 0) {
      status[static_cast<std::size_t>(entering)] = direction > 0 ? 1 : 0;
      continue;
    }

    const int leaving = basis[static_cast<std::size_t>(leaving_row)];
    const double delta = direction * w(leaving_row);
    // delta > 0 means the blocking variable fell to its lower bound.
    status[static_cast<std::size_t>(leaving)] = delta > 0.0 ? 0 : 1;
    basis[static_cast<std::size_t>(leaving_row)] = entering;
    status[static_cast<std::size_t>(entering)] = -1;
  }

  Eigen::VectorXd full = Eigen::VectorXd::Zero(nv);
  for (int j = 0; j < nv; ++j)
    if (status[static_cast<std::size_t>(j)] == 1) full(j) = upper_of(j);
  for (int i = 0; i < m; ++i)
    full(basis[static_cast<std::size_t>(i)]) = x_basic(i);

  SimplexResult res;
  res.x = full.head(ns);
  res.objective = c.dot(res.x);
  res.iterations = iter;

  const Eigen::VectorXd ax = a * res.x;
  for (int i = 0; i < m; ++i)
    res.max_primal_residual = std::max(res.max_primal_residual, ax(i) - b(i));
  for (int j = 0; j < ns; ++j) {
    res.max_primal_residual = std::max(res.max_primal_residual, -res.x(j));
    res.max_primal_residual =
        std::max(res.max_primal_residual, res.x(j) - upper(j));
  }

  // Dual evidence at the returned point: reduced costs must not point
  // toward improvement, row duals must be nonnegative, and tight rows are
  // the only ones allowed a nonzero dual.
  for (int j = 0; j < nv; ++j) {
    const int st = status[static_cast<std::size_t>(j)];
    if (st == -1) continue;
    const double d = cost_of(j) - y.dot(col(j));
    const double viol = st == 0 ? std::max(0.0, d) : std::max(0.0, -d);
    res.max_dual_residual = std::max(res.max_dual_residual, viol);
  }
  for (int i = 0; i < m; ++i) {
    res.max_dual_residual = std::max(res.max_dual_residual, -y(i));
    res.max_dual_residual =
        std::max(res.max_dual_residual, std::abs(y(i) * (b(i) - ax(i))));
  }
  return res;
}

}  // namespace statesep
