// Copyright 2026 The csipc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSIPC_POWER_CONTROL_HPP
#define CSIPC_POWER_CONTROL_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "csipc/performance.hpp"

namespace csipc {

struct SolverOptions {
  double epsilon = 1e-6;         // relative change that stops the sum-rate loop
  double bisection_width = 1e-3; // max-min stops once the bracket is narrower
  int max_outer_iters = 100;     // L
  double inner_tolerance = 1e-6; // projected-gradient certificate
  int inner_max_iters = 500;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Sum-rate maximization through the quadratic transform.
//
// With auxiliaries y the surrogate
//
//   f(eta, y) = sum_k log2(1 + 2 y_k sqrt(rho eta_k a_k)
//                            - y_k^2 (rho sum_t eta_t b_tk + 1))
//
// is concave in eta for fixed y, and maximizing over y in closed form makes
// it equal to the sum rate. Alternating the two updates never decreases the
// sum rate.
// ---------------------------------------------------------------------------

/// Optimal auxiliaries for a fixed allocation.
Eigen::VectorXd update_y(const SinrTerms& terms, const PowerAllocation& alloc);

/// Surrogate objective. Throws DomainError if any log argument is <= 0.
double eval_f(const SinrTerms& terms, const PowerAllocation& alloc, const Eigen::VectorXd& y);

/// Gradient of eval_f with respect to eta.
Eigen::VectorXd grad_f(const SinrTerms& terms, const PowerAllocation& alloc,
                       const Eigen::VectorXd& y);

/// Euclidean projection onto {eta >= 0, sum(eta) <= 1}.
Eigen::VectorXd project_power_set(const Eigen::VectorXd& v);

/// Maximizes f(., y) over the power set, starting from `init`, by projected
/// gradient ascent with backtracking in amplitude coordinates x = sqrt(eta)
/// (feasible set {x >= 0, |x| <= 1}). Returns once the unit-step projected
/// gradient has norm <= options.inner_tolerance; throws NonConvergence
/// carrying the last iterate when the iteration cap is reached first.
PowerAllocation solve_inner_concave(const SinrTerms& terms, const Eigen::VectorXd& y,
                                    const PowerAllocation& init, const SolverOptions& options);

struct SumRateResult {
  PowerAllocation alloc;
  RateResult rates;
  std::vector<double> trace;  // A^(0), A^(1), ...
  int iterations = 0;
};

/// Alternates update_y and solve_inner_concave from `init` (uniform 1/K when
/// empty) until the relative objective change drops to epsilon or L outer
/// iterations have run.
SumRateResult solve_sum_rate(const SinrTerms& terms, const SolverOptions& options = {},
                             const std::optional<PowerAllocation>& init = std::nullopt);

// ---------------------------------------------------------------------------
// Max-min fairness by bisection on the common SINR target zeta.
// ---------------------------------------------------------------------------

/// Decisions with slack at or above this value count as feasible.
inline constexpr double kFeasibilitySlackTol = 1e-9;

struct FeasibilityResult {
  bool feasible = false;
  /// Largest s with rho sum_t eta_t b_tk + 1 - rho eta_k a_k / zeta + s <= 0
  /// for all k over the power set. -inf when some a_k is zero.
  double slack = 0.0;
  PowerAllocation witness;  // meaningful only when feasible
};

/// Decides whether every user can reach SINR >= zeta, by a max-slack linear
/// program solved with the dense simplex method.
FeasibilityResult check_feasibility(const SinrTerms& terms, double zeta);

/// Minimum-power allocation meeting SINR_k = zeta for every k, or nullopt if
/// that needs more than the power budget.
std::optional<PowerAllocation> equal_sinr_allocation(const SinrTerms& terms, double zeta);

struct MaxMinState {
  double zeta_min = 0.0;
  double zeta_max = 0.0;
  std::optional<PowerAllocation> eta;  // witness for zeta_min
};

struct MaxMinResult {
  PowerAllocation alloc;
  double zeta = 0.0;        // certified feasible SINR target
  double zeta_upper = 0.0;  // last infeasible (or initial) upper bracket
  RateResult rates;
  std::vector<MaxMinState> trace;
};

/// Bisection over [0, rho_d max_k a_k] until the bracket is narrower than
/// bisection_width, then a refinement of zeta inside the final bracket through the
/// equal-SINR solve. The returned allocation gives every user SINR >= zeta.
MaxMinResult solve_max_min(const SinrTerms& terms, const SolverOptions& options = {});

}  // namespace csipc

#endif  // CSIPC_POWER_CONTROL_HPP
