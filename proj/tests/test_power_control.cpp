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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "csipc/errors.hpp"
#include "csipc/power_control.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace csipc;

namespace {

SinrTerms make_terms(const Eigen::VectorXd& a, const Eigen::MatrixXd& b, double rho) {
  SinrTerms t;
  t.a = a;
  t.b = b;
  t.rho_d = rho;
  t.flavor = b.diagonal().isZero(0.0) ? CsiFlavor::kInstantaneous : CsiFlavor::kStatistical;
  return t;
}

SinrTerms scalar(double a, double b, double rho) {
  return make_terms(Eigen::VectorXd::Constant(1, a), Eigen::MatrixXd::Constant(1, 1, b), rho);
}

PowerAllocation one(double eta) { return {Eigen::VectorXd::Constant(1, eta)}; }

}  // namespace

TEST_CASE("update_y substitutions") {
  CHECK(update_y(scalar(4.0, 1.0, 1.0), one(1.0))[0] == doctest::Approx(1.0));
  const auto t = make_terms(Eigen::Vector2d(1.0, 2.0), Eigen::Matrix2d::Constant(0.3), 2.0);
  const auto y = update_y(t, {Eigen::Vector2d(0.0, 0.5)});
  CHECK(y[0] == 0.0);
  CHECK(y[1] > 0.0);
}

TEST_CASE("eval_f substitutions") {
  CHECK(eval_f(scalar(4.0, 1.0, 1.0), one(1.0), Eigen::VectorXd::Ones(1)) ==
        doctest::Approx(std::log2(3.0)));
  gen::Gen g(1);
  const auto t = g.terms(3, CsiFlavor::kStatistical);
  CHECK(eval_f(t, g.allocation(3), Eigen::VectorXd::Zero(3)) == 0.0);
}

TEST_CASE("eval_f rejects points outside the log domain") {
  CHECK_THROWS_AS(eval_f(scalar(1.0, 1.0, 1.0), one(0.0), Eigen::VectorXd::Constant(1, 2.0)),
                  DomainError);
}

TEST_CASE("quadratic transform is tight at the optimal y") {
  gen::Gen g(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = g.terms(3, CsiFlavor::kStatistical);
    const auto p = g.allocation(3);
    const double f = eval_f(t, p, update_y(t, p));
    CHECK(f == doctest::Approx(oracle::sum_rate(t.a, t.b, t.rho_d, p.eta)).epsilon(1e-12));
  }
}

TEST_CASE("grad_f matches central differences") {
  gen::Gen g(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = g.terms(3, CsiFlavor::kStatistical);
    PowerAllocation p = g.allocation(3);
    p.eta = p.eta * 0.8 + Eigen::VectorXd::Constant(3, 0.05);
    const Eigen::VectorXd y = update_y(t, p) * 0.9;
    const auto grad = grad_f(t, p, y);
    for (int k = 0; k < 3; ++k) {
      const double h = 1e-6;
      PowerAllocation up = p, dn = p;
      up.eta[k] += h;
      dn.eta[k] -= h;
      const double fd = (eval_f(t, up, y) - eval_f(t, dn, y)) / (2 * h);
      CHECK(grad[k] == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("power set projection satisfies the variational inequality") {
  gen::Gen g(4);
  for (int trial = 0; trial < 200; ++trial) {
    const int K = g.integer(1, 6);
    Eigen::VectorXd v(K);
    for (int k = 0; k < K; ++k) v[k] = g.uniform(-1.0, 1.5);
    const Eigen::VectorXd p = project_power_set(v);
    CHECK((p.array() >= 0.0).all());
    CHECK(p.sum() <= 1.0 + 1e-12);
    for (int s = 0; s < 20; ++s) {
      const Eigen::VectorXd z = g.allocation(K).eta;
      CHECK((v - p).dot(z - p) <= 1e-12);
    }
  }
  const Eigen::Vector3d inside(0.2, 0.3, 0.1);
  CHECK(project_power_set(inside) == inside);
}

TEST_CASE("inner solver: single-user closed form") {
  gen::Gen g(5);
  for (int trial = 0; trial < 30; ++trial) {
    const double a = g.uniform(0.5, 5.0), b = g.uniform(0.1, 3.0), rho = g.uniform(0.5, 5.0);
    const double y = g.uniform(0.05, 1.0);
    const auto t = scalar(a, b, rho);
    const double expected = std::min(1.0, a / (y * y * rho * b * b));
    const Eigen::VectorXd yv = Eigen::VectorXd::Constant(1, y);
    PowerAllocation init = one(0.5);
    // start inside the log domain
    while (!(1.0 + 2 * y * std::sqrt(rho * a * init.eta[0]) - y * y * (rho * b * init.eta[0] + 1) > 0))
      init.eta[0] *= 0.5;
    const auto p = solve_inner_concave(t, yv, init, SolverOptions{});
    CHECK(p.eta[0] == doctest::Approx(expected).epsilon(1e-4));
  }
}

TEST_CASE("inner solver: zero y returns the initializer") {
  gen::Gen g(6);
  const auto t = g.terms(3, CsiFlavor::kStatistical);
  const auto init = g.allocation(3);
  const auto p = solve_inner_concave(t, Eigen::VectorXd::Zero(3), init, SolverOptions{});
  CHECK(p.eta == init.eta);
}

TEST_CASE("inner solver matches a grid search on two users") {
  gen::Gen g(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto t = g.terms(2, trial % 2 ? CsiFlavor::kStatistical : CsiFlavor::kInstantaneous);
    const auto start = PowerAllocation::uniform(2);
    const Eigen::VectorXd y = update_y(t, start);
    const auto p = solve_inner_concave(t, y, start, SolverOptions{});
    const auto best = oracle::grid_search_2(
        [&](const Eigen::Vector2d& e) {
          double f = 0.0;
          for (int k = 0; k < 2; ++k) {
            const double I = t.rho_d * (e[0] * t.b(0, k) + e[1] * t.b(1, k)) + 1.0;
            const double u = 1.0 + 2.0 * y[k] * std::sqrt(t.rho_d * e[k] * t.a[k]) - y[k] * y[k] * I;
            if (!(u > 0.0)) return -std::numeric_limits<double>::infinity();
            f += std::log2(u);
          }
          return f;
        },
        1e-3);
    CHECK(eval_f(t, p, y) >= best.value - 1e-3);
  }
}

TEST_CASE("sum rate: ZF two-user split favors the stronger user") {
  const auto t = make_terms(Eigen::Vector2d(4.0, 1.0), Eigen::Matrix2d::Zero(), 1.0);
  const auto r = solve_sum_rate(t);
  const auto best = oracle::grid_sum_rate(t.a, t.b, t.rho_d);
  CHECK(r.alloc.eta[0] > r.alloc.eta[1]);
  CHECK(r.rates.sum_rate == doctest::Approx(best.value).epsilon(1e-2));
  CHECK(std::abs(r.rates.sum_rate - best.value) <= 1e-2);
}

TEST_CASE("sum rate: symmetric users keep the uniform split") {
  for (int K : {2, 3, 5}) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Constant(K, K, 0.2);
    b.diagonal().setConstant(0.1);
    const auto t = make_terms(Eigen::VectorXd::Constant(K, 2.0), b, 3.0);
    const auto r = solve_sum_rate(t);
    for (int k = 0; k < K; ++k) CHECK(r.alloc.eta[k] == doctest::Approx(1.0 / K).epsilon(1e-6));
  }
}

TEST_CASE("sum rate: single user takes all power") {
  CHECK(solve_sum_rate(scalar(3.0, 0.5, 2.0)).alloc.eta[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(solve_sum_rate(scalar(3.0, 0.0, 2.0)).alloc.eta[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("sum rate trace never decreases") {
  gen::Gen g(8);
  for (int trial = 0; trial < 30; ++trial) {
    const int K = g.integer(1, 8);
    const auto t = g.terms(K, trial % 2 ? CsiFlavor::kStatistical : CsiFlavor::kInstantaneous);
    const auto r = solve_sum_rate(t);
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] >= r.trace[i - 1] - 1e-9);
    CHECK(r.iterations <= 100);
    CHECK(r.alloc.eta.sum() <= 1.0 + kPowerSumSlack);
  }
}

TEST_CASE("solver options validation") {
  SolverOptions o;
  o.epsilon = 0.0;
  CHECK_THROWS_AS(o.validate(), InvalidArgument);
  o = {};
  o.bisection_width = -1.0;
  CHECK_THROWS_AS(o.validate(), InvalidArgument);
  o = {};
  o.max_outer_iters = 0;
  CHECK_THROWS_AS(o.validate(), InvalidArgument);
}

TEST_CASE("feasibility: vanishing target is feasible") {
  gen::Gen g(9);
  const auto t = g.terms(4, CsiFlavor::kStatistical);
  CHECK(check_feasibility(t, 1e-9).feasible);
}

TEST_CASE("feasibility: scalar threshold") {
  const auto t = scalar(2.0, 0.0, 1.0);
  CHECK(check_feasibility(t, 1.999).feasible);
  CHECK(check_feasibility(t, 2.0).feasible);
  CHECK_FALSE(check_feasibility(t, 2.001).feasible);
}

TEST_CASE("feasibility: targets above rho max a are infeasible") {
  gen::Gen g(10);
  for (int trial = 0; trial < 50; ++trial) {
    const int K = g.integer(1, 6);
    const auto t = g.terms(K, trial % 2 ? CsiFlavor::kStatistical : CsiFlavor::kInstantaneous);
    CHECK_FALSE(check_feasibility(t, t.rho_d * t.a.maxCoeff() * 1.001).feasible);
  }
}

TEST_CASE("feasibility: witness meets the target") {
  gen::Gen g(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int K = g.integer(1, 6);
    const auto t = g.terms(K, CsiFlavor::kStatistical);
    const double zeta = g.uniform(0.01, 1.0) * t.rho_d * t.a.minCoeff() / (t.rho_d + 1.0);
    const auto r = check_feasibility(t, zeta);
    if (!r.feasible) continue;
    for (int k = 0; k < K; ++k)
      CHECK(oracle::sinr(t.a, t.b, t.rho_d, r.witness.eta, k) >= zeta * (1.0 - 1e-6));
  }
}

TEST_CASE("feasibility: zero gain is never feasible") {
  auto t = make_terms(Eigen::Vector2d(0.0, 1.0), Eigen::Matrix2d::Zero(), 1.0);
  const auto r = check_feasibility(t, 0.1);
  CHECK_FALSE(r.feasible);
  CHECK(std::isinf(r.slack));
  CHECK_THROWS_AS(check_feasibility(t, 0.0), InvalidArgument);
}

TEST_CASE("max-min: single user") {
  const auto t = scalar(3.0, 0.5, 2.0);
  const auto r = solve_max_min(t);
  CHECK(r.alloc.eta[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.zeta == doctest::Approx(2.0 * 3.0 / (2.0 * 0.5 + 1.0)).epsilon(1e-9));
}

TEST_CASE("max-min: identical users split evenly") {
  Eigen::Matrix2d b;
  b << 0.1, 0.3, 0.3, 0.1;
  const auto t = make_terms(Eigen::Vector2d(2.0, 2.0), b, 4.0);
  const auto r = solve_max_min(t);
  CHECK(r.alloc.eta[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.alloc.eta[1] == doctest::Approx(0.5).epsilon(1e-9));
  const auto s = sinr_all(t, r.alloc);
  CHECK(s[0] == doctest::Approx(s[1]).epsilon(1e-12));
}

TEST_CASE("max-min matches a grid search on two users") {
  gen::Gen g(12);
  const SolverOptions opt;
  for (int trial = 0; trial < 10; ++trial) {
    const auto t = g.terms(2, trial % 2 ? CsiFlavor::kStatistical : CsiFlavor::kInstantaneous,
                           2.0, 1.0, 0.5, 1.0);
    const auto r = solve_max_min(t, opt);
    const auto best = oracle::grid_max_min(t.a, t.b, t.rho_d);
    CHECK(std::abs(r.zeta - best.value) <= 2 * opt.bisection_width);
    CHECK(r.zeta <= r.zeta_upper);
    const auto s = sinr_all(t, r.alloc);
    CHECK(std::abs(s[0] - s[1]) <= 10 * opt.bisection_width);
  }
}

TEST_CASE("max-min rejects a zero-gain user") {
  const auto t = make_terms(Eigen::Vector2d(0.0, 1.0), Eigen::Matrix2d::Zero(), 1.0);
  CHECK_THROWS_AS(solve_max_min(t), DegenerateInstance);
}

TEST_CASE("max-min bisection keeps its bracket") {
  gen::Gen g(13);
  for (int trial = 0; trial < 30; ++trial) {
    const int K = g.integer(1, 6);
    const auto t = g.terms(K, trial % 2 ? CsiFlavor::kStatistical : CsiFlavor::kInstantaneous);
    const auto r = solve_max_min(t);
    double prev_width = std::numeric_limits<double>::infinity();
    for (const auto& st : r.trace) {
      CHECK(st.zeta_min <= st.zeta_max);
      CHECK(st.zeta_max - st.zeta_min <= prev_width);
      prev_width = st.zeta_max - st.zeta_min;
      if (st.eta) {
        for (int k = 0; k < K; ++k)
          CHECK(oracle::sinr(t.a, t.b, t.rho_d, st.eta->eta, k) >= st.zeta_min * (1.0 - 1e-6));
      }
    }
    CHECK(sinr_all(t, r.alloc).minCoeff() >= r.zeta * (1.0 - 1e-9));
  }
}
