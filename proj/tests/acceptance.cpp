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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "csipc/channel.hpp"
#include "csipc/experiments.hpp"
#include "csipc/power_control.hpp"
#include "csipc/precoding.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace csipc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

std::string num(double v, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

std::string pct(double v) { return num(100.0 * v, 3) + "%"; }

// Desk-scale Monte Carlo counts for the campaign criteria.
Scenario campaign(int M, Scheme scheme, Objective objective, ChannelModel model = RayleighModel{}) {
  Scenario s;
  s.cfg.M = M;
  s.cfg.K = 5;
  s.scheme = scheme;
  s.objective = objective;
  s.model = std::move(model);
  s.n_drops = 100;
  s.n_smallscale = 200;
  s.n_mc_stat = 10000;
  return s;
}

double gap_of(Scenario s) {
  s.design = CsiFlavor::kStatistical;
  const auto stat = run_scenario(s, threads()).cdf;
  s.design = CsiFlavor::kInstantaneous;
  const auto inst = run_scenario(s, threads()).cdf;
  return median_gap(stat, inst);
}

Outcome c1_hardening_rayleigh() {
  Outcome o{true, ""};
  const auto drop = LargeScaleDrop::from_betas(Eigen::VectorXd::Ones(1));
  for (int M : {6, 50, 100}) {
    RandomStream rng(1000 + M);
    const double hc = hardening_coefficient(RayleighModel{}, drop, M, 10000, rng)[0];
    const double err = std::abs(hc * M - 1.0);
    o.pass = o.pass && err < 0.1;
    o.detail += "M=" + std::to_string(M) + " HC*M=" + num(hc * M) + " ";
  }
  return o;
}

Outcome c2_hardening_keyhole() {
  const int M = 50;
  RandomStream rng(2002);
  const double hc = hardening_coefficient(KeyholeModel{KeyholeSpec::equal_gains(1, 1)},
                                          LargeScaleDrop::from_betas(Eigen::VectorXd::Ones(1)), M,
                                          10000, rng)[0];
  const double expected = oracle::hc_keyhole({1.0}, M);
  return {std::abs(hc - expected) <= 0.1 * expected,
          "HC=" + num(hc) + " closed form=" + num(expected)};
}

Outcome c3_prelog() {
  SystemConfig cfg;
  cfg.K = 5;
  cfg.tau_c = 200;
  cfg.tau_u = cfg.tau_d = 5;
  const double s = prelog(cfg, CsiFlavor::kStatistical);
  const double i = prelog(cfg, CsiFlavor::kInstantaneous);
  return {s == 0.975 && i == 0.95, "stat=" + num(s, 17) + " inst=" + num(i, 17)};
}

Outcome c4_zf_nulls() {
  gen::Gen g(4);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix G = g.channel(8, 4);
    const CMatrix W = zf_precoder(G).W;
    for (int t = 0; t < 4; ++t)
      for (int k = 0; k < 4; ++k)
        if (t != k) worst = std::max(worst, std::abs(G.col(t).dot(W.col(k))) / G.col(t).norm());
  }
  return {worst <= 1e-10, "max leak=" + num(worst)};
}

Outcome c5_monotone_trace() {
  gen::Gen g(5);
  SolverOptions opt;
  opt.epsilon = 1e-3;
  double worst_drop = 0.0;
  int max_iters = 0;
  bool all_converged = true;
  for (int trial = 0; trial < 100; ++trial) {
    const int K = g.integer(1, 8);
    const auto t = g.terms(K, trial % 2 ? CsiFlavor::kStatistical : CsiFlavor::kInstantaneous);
    const auto r = solve_sum_rate(t, opt);
    for (std::size_t i = 1; i < r.trace.size(); ++i)
      worst_drop = std::max(worst_drop, r.trace[i - 1] - r.trace[i]);
    max_iters = std::max(max_iters, r.iterations);
    const double last = r.trace.back();
    const double prev = r.trace[r.trace.size() - 2];
    all_converged = all_converged && std::abs(last - prev) <= opt.epsilon * std::abs(prev);
  }
  return {worst_drop <= 1e-9 && max_iters <= opt.max_outer_iters && all_converged,
          "largest decrease=" + num(worst_drop) + " max outer iterations=" +
              std::to_string(max_iters) + (all_converged ? "" : " (not converged)")};
}

Outcome c6_sum_rate_grid() {
  gen::Gen g(6);
  int within = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = g.terms(2, trial % 2 ? CsiFlavor::kStatistical : CsiFlavor::kInstantaneous);
    const double got = solve_sum_rate(t).rates.sum_rate;
    const double best = oracle::grid_sum_rate(t.a, t.b, t.rho_d).value;
    const double diff = std::abs(got - best);
    worst = std::max(worst, diff);
    within += diff <= 1e-2;
  }
  return {within >= 48, std::to_string(within) + "/50 within 1e-2, worst=" + num(worst)};
}

Outcome c7_max_min_grid() {
  gen::Gen g(7);
  const SolverOptions opt;
  double worst_zeta = 0.0;
  double worst_spread = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    // rho a <= 2 keeps the grid resolution of zeta below the bracket width.
    const auto t = g.terms(2, trial % 2 ? CsiFlavor::kStatistical : CsiFlavor::kInstantaneous,
                           2.0, 1.0, 0.5, 1.0);
    const auto r = solve_max_min(t, opt);
    const double best = oracle::grid_max_min(t.a, t.b, t.rho_d).value;
    worst_zeta = std::max(worst_zeta, std::abs(r.zeta - best));
    const Eigen::VectorXd s = sinr_all(t, r.alloc);
    worst_spread = std::max(worst_spread, s.maxCoeff() - s.minCoeff());
  }
  return {worst_zeta <= 2 * opt.bisection_width && worst_spread <= 10 * opt.bisection_width,
          "worst |zeta-grid|=" + num(worst_zeta) + " worst SINR spread=" + num(worst_spread)};
}

Outcome c8_fig1_trend() {
  const double g100 = gap_of(campaign(100, Scheme::kZF, Objective::kSumRate));
  const double g6 = gap_of(campaign(6, Scheme::kZF, Objective::kSumRate));
  const double m6 = gap_of(campaign(6, Scheme::kMR, Objective::kSumRate));
  const bool a = g100 <= 0.10, b = g6 >= 0.20, c = m6 >= 0.40;
  return {a && b && c, std::string("ZF M=100 gap=") + pct(g100) + (a ? " ok" : " FAIL") +
                           ", ZF M=6 gap=" + pct(g6) + (b ? " ok" : " FAIL") +
                           ", MR M=6 gap=" + pct(m6) + (c ? " ok" : " FAIL")};
}

Outcome c9_keyhole_sweep() {
  auto base = campaign(50, Scheme::kZF, Objective::kSumRate);
  const auto rows = keyhole_gap_sweep(base, {1, 4, 20, std::nullopt}, threads());
  bool decreasing = true;
  for (std::size_t i = 1; i < rows.size(); ++i) decreasing = decreasing && rows[i].gap < rows[i - 1].gap;
  const bool factor = rows[1].gap >= 3.0 * rows[3].gap;
  std::string d = "gaps o=1,4,20,inf: ";
  for (const auto& r : rows) d += pct(r.gap) + " ";
  d += "ratio(4/inf)=" + num(rows[1].gap / rows[3].gap);
  return {decreasing && factor, d};
}

Outcome c10_max_min_trend() {
  bool small = true;
  std::string d;
  for (int M : {6, 50, 100}) {
    const double gap = gap_of(campaign(M, Scheme::kMR, Objective::kMaxMin));
    small = small && gap <= 0.10;
    d += "MR M=" + std::to_string(M) + " gap=" + pct(gap) + ", ";
  }
  const double key = gap_of(
      campaign(100, Scheme::kZF, Objective::kMaxMin, KeyholeModel{KeyholeSpec::equal_gains(5, 1)}));
  const bool big = key >= 0.25;
  d += "keyhole ZF M=100 gap=" + pct(key) + (big ? " ok" : " FAIL");
  return {small && big, d};
}

Outcome c11_overhead() {
  const auto c = recompute_counts(NrNumerology{});
  return {c.per_tti == 277 && c.per_frame == 2770 && c.per_n_frames == 27700,
          std::to_string(c.per_tti) + "/" + std::to_string(c.per_frame) + "/" +
              std::to_string(c.per_n_frames)};
}

Outcome c12_properties() {
  gen::Gen g(12);
  int failures = 0;

  // Seeded reproducibility.
  for (int trial = 0; trial < 3; ++trial) {
    Scenario s;
    s.cfg.rng_seed = g.engine()();
    s.cfg.M = 12;
    s.design = trial % 2 ? CsiFlavor::kInstantaneous : CsiFlavor::kStatistical;
    s.objective = trial == 2 ? Objective::kMaxMin : Objective::kSumRate;
    s.n_drops = 5;
    s.n_smallscale = 5;
    s.n_mc_stat = 200;
    failures += run_scenario(s, 1).cdf.samples != run_scenario(s, threads()).cdf.samples;
  }

  for (int trial = 0; trial < 200; ++trial) {
    const int K = g.integer(2, 6);
    const auto t = g.terms(K, trial % 2 ? CsiFlavor::kStatistical : CsiFlavor::kInstantaneous);
    PowerAllocation p = g.allocation(K);
    p.eta *= 0.9;

    // SINR monotonicity.
    const int k = g.integer(0, K - 1);
    const int other = (k + 1) % K;
    const Eigen::VectorXd base = sinr_all(t, p);
    PowerAllocation up = p;
    up.eta[k] += 0.05;
    failures += !(sinr(t, up, k) > base[k]);
    for (int j = 0; j < K; ++j) failures += j != k && sinr(t, up, j) > base[j];
    PowerAllocation cross = p;
    cross.eta[other] += 0.05;
    failures += sinr(t, cross, k) > base[k];

    // Tightness of the quadratic transform.
    const double f = eval_f(t, p, update_y(t, p));
    failures += std::abs(f - oracle::sum_rate(t.a, t.b, t.rho_d, p.eta)) > 1e-10 * std::max(1.0, f);

    // Bisection bracket.
    if (trial % 4 == 0) {
      const auto r = solve_max_min(t);
      for (const auto& st : r.trace) {
        failures += st.zeta_min > st.zeta_max;
        if (st.eta) failures += oracle::min_sinr(t.a, t.b, t.rho_d, st.eta->eta) < st.zeta_min * (1 - 1e-6);
      }
    }
  }
  return {failures == 0, std::to_string(failures) + " violations"};
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by number.
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1  hardening, Rayleigh", c1_hardening_rayleigh},
      {"2  hardening, single keyhole", c2_hardening_keyhole},
      {"3  prelog factors", c3_prelog},
      {"4  ZF nulls", c4_zf_nulls},
      {"5  sum-rate trace monotone", c5_monotone_trace},
      {"6  sum-rate vs grid", c6_sum_rate_grid},
      {"7  max-min vs grid", c7_max_min_grid},
      {"8  sum-rate CDF gaps, Rayleigh", c8_fig1_trend},
      {"9  keyhole gap sweep", c9_keyhole_sweep},
      {"10 max-min CDF gaps", c10_max_min_trend},
      {"11 NR recomputation counts", c11_overhead},
      {"12 property suite", c12_properties},
  };
  int failed = 0;
  int ran = 0;
  for (std::size_t idx = 0; idx < criteria.size(); ++idx) {
    const auto& [name, run] = criteria[idx];
    if (!only.empty() && std::find(only.begin(), only.end(), static_cast<int>(idx + 1)) == only.end()) {
      continue;
    }
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %-32s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
