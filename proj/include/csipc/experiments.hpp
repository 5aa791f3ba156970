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

#ifndef CSIPC_EXPERIMENTS_HPP
#define CSIPC_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "csipc/channel.hpp"
#include "csipc/performance.hpp"
#include "csipc/power_control.hpp"
#include "csipc/precoding.hpp"

namespace csipc {

enum class Objective { kSumRate, kMaxMin };

std::string to_string(Objective objective);

/// One Monte Carlo campaign: a system, a propagation model, a precoder, a
/// power-control objective and the CSI the allocation is designed with.
struct Scenario {
  std::string id = "scenario";
  SystemConfig cfg;
  ChannelModel model = RayleighModel{};
  Scheme scheme = Scheme::kZF;
  Objective objective = Objective::kSumRate;
  CsiFlavor design = CsiFlavor::kStatistical;
  int n_drops = 100;
  int n_smallscale = 200;
  int n_mc_stat = 1000;
  SolverOptions solver;
  /// Instantaneous design only: start each solve from the previous
  /// realization's allocation instead of the uniform one.
  bool warm_start = false;

  void validate() const;
};

/// Result of one large-scale drop.
struct DropRecord {
  int drop = 0;
  Eigen::VectorXd betas;
  Eigen::VectorXd per_user_rate;  // bits/s/Hz
  /// Sum (sum-rate objective) or minimum (max-min objective) per-user net
  /// throughput in bits/s.
  double metric = 0.0;
};

/// Empirical distribution of a per-drop metric.
struct ThroughputCdf {
  std::vector<double> samples;        // ascending
  std::vector<double> probabilities;  // i / n, i = 1..n
  double median = 0.0;
  double p05 = 0.0;

  /// Linear interpolation between order statistics at position q (n - 1).
  double quantile(double q) const;
};

ThroughputCdf compute_cdf(std::vector<double> samples);

struct ScenarioResult {
  ThroughputCdf cdf;
  std::vector<DropRecord> drops;
};

/// Runs a single drop; exposed for tests and for callers that schedule work
/// themselves. Solver failures surface as CampaignError.
DropRecord run_drop(const Scenario& s, int drop_index);

/// Runs every drop, spreading them over `threads` workers. Results are
/// merged in drop order, so the output does not depend on the thread count.
ScenarioResult run_scenario(const Scenario& s, int threads = 1);

/// Relative median gap (inst - stat) / inst.
double median_gap(const ThroughputCdf& statistical, const ThroughputCdf& instantaneous);

struct GapRow {
  std::optional<int> keyholes;  // nullopt: Rayleigh (infinitely many keyholes)
  double median_statistical = 0.0;
  double median_instantaneous = 0.0;
  double gap = 0.0;
};

/// For each keyhole count, runs `base` with equal normalized keyhole gains
/// under both designs and reports the relative median gap. nullopt entries
/// run the Rayleigh model.
std::vector<GapRow> keyhole_gap_sweep(const Scenario& base,
                                      const std::vector<std::optional<int>>& o_list,
                                      int threads = 1);

/// 5G NR frequency/time structure used to count power-control recomputations.
struct NrNumerology {
  double bandwidth_hz = 100e6;
  double subcarrier_spacing_hz = 15e3;
  int subcarriers_per_granularity = 24;
  int ttis_per_frame = 10;
  int frames = 10;

  void validate() const;
};

struct RecomputeCounts {
  std::int64_t per_tti = 0;
  std::int64_t per_frame = 0;
  std::int64_t per_n_frames = 0;
};

/// How often an instantaneous-CSI design must re-solve the allocation: once
/// per frequency granularity interval per TTI.
RecomputeCounts recompute_counts(const NrNumerology& n);

}  // namespace csipc

#endif  // CSIPC_EXPERIMENTS_HPP
