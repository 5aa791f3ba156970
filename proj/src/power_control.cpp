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

#include "csipc/power_control.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "csipc/errors.hpp"
#include "csipc/simplex.hpp"

namespace csipc {

namespace {

// Log arguments below this are treated as leaving the domain.
constexpr double kDomainGuard = 1e-12;
// Stand-in for eta_k = 0 where the sqrt term has an infinite derivative.
constexpr double kEtaFloor = 1e-20;
constexpr double kArmijo = 1e-4;

double interference(const SinrTerms& terms, const Eigen::VectorXd& eta, int k) {
  return terms.rho_d * terms.b.col(k).dot(eta);
}

// Log arguments u_k of the surrogate; returns false if any is below the
// domain guard.
bool surrogate_args(const SinrTerms& terms, const Eigen::VectorXd& eta, const Eigen::VectorXd& y,
                    Eigen::VectorXd& u) {
  const int K = terms.K();
  u.resize(K);
  bool ok = true;
  for (int k = 0; k < K; ++k) {
    u[k] = 1.0 + 2.0 * y[k] * std::sqrt(terms.rho_d * std::max(eta[k], 0.0) * terms.a[k]) -
           y[k] * y[k] * (interference(terms, eta, k) + 1.0);
    if (!(u[k] > kDomainGuard)) ok = false;
  }
  return ok;
}

double sum_log2(const Eigen::VectorXd& u) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < u.size(); ++k) s += std::log2(u[k]);
  return s;
}

Eigen::VectorXd gradient(const SinrTerms& terms, const Eigen::VectorXd& eta,
                         const Eigen::VectorXd& y, const Eigen::VectorXd& u) {
  const int K = terms.K();
  Eigen::VectorXd w(K);  // y_k^2 / u_k
  for (int k = 0; k < K; ++k) w[k] = y[k] * y[k] / u[k];
  // d/d eta_j of sum_k log(u_k): own-signal term minus interference caused.
  Eigen::VectorXd g = -terms.rho_d * (terms.b * w);
  for (int j = 0; j < K; ++j) {
    const double gain = y[j] * std::sqrt(terms.rho_d * terms.a[j]);
    if (gain > 0.0) g[j] += gain / (std::sqrt(std::max(eta[j], kEtaFloor)) * u[j]);
  }
  return g / std::numbers::ln2;
}

// Surrogate in amplitude coordinates x = sqrt(eta):
//   u_k = 1 + 2 y_k sqrt(rho a_k) x_k - y_k^2 (rho sum_t b_tk x_t^2 + 1).
bool amplitude_args(const SinrTerms& terms, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                    Eigen::VectorXd& u) {
  const Eigen::VectorXd eta = x.cwiseAbs2();
  const int K = terms.K();
  u.resize(K);
  bool ok = true;
  for (int k = 0; k < K; ++k) {
    u[k] = 1.0 + 2.0 * y[k] * std::sqrt(terms.rho_d * terms.a[k]) * x[k] -
           y[k] * y[k] * (interference(terms, eta, k) + 1.0);
    if (!(u[k] > kDomainGuard)) ok = false;
  }
  return ok;
}

Eigen::VectorXd amplitude_gradient(const SinrTerms& terms, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& y, const Eigen::VectorXd& u) {
  const int K = terms.K();
  Eigen::VectorXd w(K);
  for (int k = 0; k < K; ++k) w[k] = y[k] * y[k] / u[k];
  Eigen::VectorXd g = -2.0 * terms.rho_d * (terms.b * w).cwiseProduct(x);
  for (int j = 0; j < K; ++j) g[j] += 2.0 * y[j] * std::sqrt(terms.rho_d * terms.a[j]) / u[j];
  return g / std::numbers::ln2;
}

// Projection onto {x >= 0, |x| <= 1}.
Eigen::VectorXd project_amplitudes(const Eigen::VectorXd& v) {
  Eigen::VectorXd x = v.cwiseMax(0.0);
  const double norm = x.norm();
  if (norm > 1.0) x /= norm;
  return x;
}

}  // namespace

void SolverOptions::validate() const {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (!(bisection_width > 0.0)) throw InvalidArgument("bisection width must be positive");
  if (max_outer_iters < 1) throw InvalidArgument("L must be at least 1");
  if (!(inner_tolerance > 0.0)) throw InvalidArgument("inner tolerance must be positive");
  if (inner_max_iters < 1) throw InvalidArgument("inner iteration cap must be at least 1");
}

Eigen::VectorXd update_y(const SinrTerms& terms, const PowerAllocation& alloc) {
  const int K = terms.K();
  Eigen::VectorXd y(K);
  for (int k = 0; k < K; ++k) {
    y[k] = std::sqrt(terms.a[k] * terms.rho_d * alloc.eta[k]) /
           (interference(terms, alloc.eta, k) + 1.0);
  }
  return y;
}

double eval_f(const SinrTerms& terms, const PowerAllocation& alloc, const Eigen::VectorXd& y) {
  const int K = terms.K();
  double f = 0.0;
  for (int k = 0; k < K; ++k) {
    const double u = 1.0 + 2.0 * y[k] * std::sqrt(terms.rho_d * alloc.eta[k] * terms.a[k]) -
                     y[k] * y[k] * (interference(terms, alloc.eta, k) + 1.0);
    if (!(u > 0.0)) {
      throw DomainError("surrogate log argument of user " + std::to_string(k) +
                        " is non-positive (" + std::to_string(u) + ")");
    }
    f += std::log2(u);
  }
  return f;
}

Eigen::VectorXd grad_f(const SinrTerms& terms, const PowerAllocation& alloc,
                       const Eigen::VectorXd& y) {
  Eigen::VectorXd u;
  if (!surrogate_args(terms, alloc.eta, y, u)) {
    throw DomainError("gradient requested outside the surrogate domain");
  }
  return gradient(terms, alloc.eta, y, u);
}

Eigen::VectorXd project_power_set(const Eigen::VectorXd& v) {
  Eigen::VectorXd x = v.cwiseMax(0.0);
  if (x.sum() <= 1.0) return x;
  // Projection onto the unit simplex {x >= 0, sum x = 1}.
  std::vector<double> sorted(v.data(), v.data() + v.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumsum += sorted[j];
    const double candidate = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) theta = candidate;
  }
  return (v.array() - theta).cwiseMax(0.0).matrix();
}

PowerAllocation solve_inner_concave(const SinrTerms& terms, const Eigen::VectorXd& y,
                                    const PowerAllocation& init, const SolverOptions& options) {
  options.validate();
  init.validate();
  if (y.size() != terms.K() || init.K() != terms.K()) {
    throw InvalidArgument("inner solver: dimension mismatch");
  }

  // Ascent runs on amplitudes x = sqrt(eta). The map is a bijection between
  // {x >= 0, |x| <= 1} and the power set, f stays concave in x, and the
  // infinite slope of sqrt(eta) at eta = 0 disappears.
  const Eigen::VectorXd x0 = init.eta.cwiseSqrt();
  Eigen::VectorXd x = x0;
  Eigen::VectorXd u;
  if (!amplitude_args(terms, x, y, u)) {
    throw DomainError("inner solver initializer lies outside the surrogate domain");
  }
  double fval = sum_log2(u);
  Eigen::VectorXd g = amplitude_gradient(terms, x, y, u);
  double step = 1.0 / std::max(1.0, g.lpNorm<Eigen::Infinity>());

  auto done = [&]() -> PowerAllocation {
    if (x == x0) return init;
    return {project_power_set(x.cwiseAbs2())};
  };

  Eigen::VectorXd cand_u;
  for (int it = 0; it < options.inner_max_iters; ++it) {
    const double certificate = (project_amplitudes(x + g) - x).norm();
    if (certificate <= options.inner_tolerance) return done();

    double t = step;
    Eigen::VectorXd cand;
    double fcand = 0.0;
    bool accepted = false;
    while (t > 1e-300) {
      cand = project_amplitudes(x + t * g);
      if (amplitude_args(terms, cand, y, cand_u)) {
        fcand = sum_log2(cand_u);
        // The last term absorbs rounding in f once the predicted gain is
        // below machine precision.
        if (fcand >= fval + kArmijo * g.dot(cand - x) - 4e-16 * std::abs(fval)) {
          accepted = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!accepted || cand == x) {
      // No representable ascent step remains.
      return done();
    }

    const Eigen::VectorXd g_new = amplitude_gradient(terms, cand, y, cand_u);
    const Eigen::VectorXd s = cand - x;
    const double sy = -s.dot(g_new - g);
    // Barzilai-Borwein step for the next trial; concavity makes sy >= 0.
    step = sy > 0.0 ? std::clamp(s.squaredNorm() / sy, 1e-12, 1e12) : std::min(2.0 * t, 1e12);

    x = cand;
    fval = fcand;
    g = g_new;
  }
  if ((project_amplitudes(x + g) - x).norm() <= options.inner_tolerance) return done();
  throw NonConvergence("inner concave solver reached " +
                           std::to_string(options.inner_max_iters) +
                           " iterations without meeting the tolerance",
                       x.cwiseAbs2());
}

SumRateResult solve_sum_rate(const SinrTerms& terms, const SolverOptions& options,
                             const std::optional<PowerAllocation>& init) {
  terms.validate();
  options.validate();
  PowerAllocation eta = init ? *init : PowerAllocation::uniform(terms.K());
  eta.validate();
  if (eta.K() != terms.K()) throw InvalidArgument("initial allocation has wrong size");

  SumRateResult result;
  Eigen::VectorXd y = update_y(terms, eta);
  double previous = eval_f(terms, eta, y);
  result.trace.push_back(previous);

  for (int l = 1; l <= options.max_outer_iters; ++l) {
    y = update_y(terms, eta);
    eta = solve_inner_concave(terms, y, eta, options);
    const double current = eval_f(terms, eta, y);
    result.trace.push_back(current);
    result.iterations = l;
    const double change = std::abs(current - previous);
    const bool converged =
        previous != 0.0 ? change / std::abs(previous) <= options.epsilon : change == 0.0;
    previous = current;
    if (converged) break;
  }
  result.alloc = eta;
  result.rates = rate_statistical(terms, eta);
  return result;
}

FeasibilityResult check_feasibility(const SinrTerms& terms, double zeta) {
  terms.validate();
  if (!(zeta > 0.0) || !std::isfinite(zeta)) {
    throw InvalidArgument("SINR target must be positive and finite");
  }
  const int K = terms.K();
  FeasibilityResult result;
  result.witness = {Eigen::VectorXd::Zero(K)};
  if ((terms.a.array() <= 0.0).any()) {
    result.slack = -std::numeric_limits<double>::infinity();
    return result;
  }

  // Variables (eta_1..eta_K, sigma) with the slack shifted as s = sigma - 1
  // so the origin is a feasible vertex:
  //   rho b_.k^T eta - rho a_k eta_k / zeta + sigma <= 0   for every k
  //   sum eta <= 1
  // Rows are rescaled to unit max-norm; positive row scaling leaves the
  // feasible set unchanged.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(K + 1, K + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(K + 1);
  for (int k = 0; k < K; ++k) {
    for (int t = 0; t < K; ++t) A(k, t) = terms.rho_d * terms.b(t, k);
    A(k, k) -= terms.rho_d * terms.a[k] / zeta;
    A(k, K) = 1.0;
    A.row(k) /= A.row(k).cwiseAbs().maxCoeff();
  }
  A.row(K).head(K).setOnes();
  rhs[K] = 1.0;
  Eigen::VectorXd objective = Eigen::VectorXd::Zero(K + 1);
  objective[K] = 1.0;

  const LpSolution lp = solve_lp_slack_basis(A, rhs, objective);
  if (lp.status != LpStatus::kOptimal) {
    throw NonConvergence("feasibility LP did not reach an optimal vertex", lp.x);
  }
  result.slack = lp.x[K] - 1.0;
  result.feasible = result.slack >= -kFeasibilitySlackTol;
  Eigen::VectorXd eta = lp.x.head(K);
  if (eta.sum() > 1.0) eta /= eta.sum();
  result.witness = {eta};
  return result;
}

std::optional<PowerAllocation> equal_sinr_allocation(const SinrTerms& terms, double zeta) {
  const int K = terms.K();
  // rho a_k eta_k = zeta (rho sum_t b_tk eta_t + 1) for every k.
  Eigen::MatrixXd system = -zeta * terms.rho_d * terms.b.transpose();
  system.diagonal() += terms.rho_d * terms.a;
  const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(K, zeta);
  Eigen::VectorXd eta = system.partialPivLu().solve(rhs);
  if (!eta.allFinite() || (eta.array() < -1e-12).any()) return std::nullopt;
  eta = eta.cwiseMax(0.0);
  const double total = eta.sum();
  if (total > 1.0 + kPowerSumSlack) return std::nullopt;
  if (total > 1.0) eta /= total;
  PowerAllocation alloc{eta};
  const Eigen::VectorXd s = sinr_all(terms, alloc);
  if ((s.array() < zeta * (1.0 - 1e-9)).any()) return std::nullopt;
  return alloc;
}

MaxMinResult solve_max_min(const SinrTerms& terms, const SolverOptions& options) {
  terms.validate();
  options.validate();
  if ((terms.a.array() <= 0.0).any()) {
    throw DegenerateInstance("max-min: some user has zero effective gain; no positive SINR "
                             "target is reachable");
  }

  MaxMinResult result;
  double lo = 0.0;
  double hi = terms.rho_d * terms.a.maxCoeff();
  std::optional<PowerAllocation> witness;
  result.trace.push_back({lo, hi, std::nullopt});

  auto bisect_once = [&]() {
    const double zeta = 0.5 * (lo + hi);
    FeasibilityResult r = check_feasibility(terms, zeta);
    if (r.feasible) {
      lo = zeta;
      witness = r.witness;
    } else {
      hi = zeta;
    }
    result.trace.push_back({lo, hi, witness});
  };

  while (hi - lo >= options.bisection_width) bisect_once();
  // Optimum below the bracket width: keep halving until a positive target is certified.
  while (!witness) {
    if (!(hi > std::numeric_limits<double>::min())) {
      throw DegenerateInstance("max-min: no feasible SINR target above zero");
    }
    bisect_once();
  }

  result.zeta = lo;
  result.zeta_upper = hi;
  result.alloc = *witness;
  // Inside the final bracket, push the equal-SINR point up to the full power
  // budget. Every accepted point has been checked to meet its target, so
  // zeta stays certified; the LP witness is kept if the linear solve fails.
  if (auto eq = equal_sinr_allocation(terms, lo)) {
    double a = lo;
    double b = hi;
    result.alloc = *eq;
    for (int it = 0; it < 200 && b - a > 1e-14 * b; ++it) {
      const double mid = 0.5 * (a + b);
      if (auto e = equal_sinr_allocation(terms, mid)) {
        a = mid;
        result.alloc = *e;
      } else {
        b = mid;
      }
    }
    result.zeta = a;
  }
  result.rates = rate_statistical(terms, result.alloc);
  return result;
}

}  // namespace csipc
