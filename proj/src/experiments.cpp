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

#include "csipc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "csipc/errors.hpp"

namespace csipc {

namespace {

// Substream layout under each drop's stream.
constexpr std::uint64_t kPlacementStream = 0;
constexpr std::uint64_t kStatisticalStream = 1;
constexpr std::uint64_t kInstantaneousStream = 2;

PowerAllocation solve(const Scenario& s, const SinrTerms& terms,
                      const std::optional<PowerAllocation>& init) {
  if (s.objective == Objective::kMaxMin) return solve_max_min(terms, s.solver).alloc;
  return solve_sum_rate(terms, s.solver, init).alloc;
}

double metric_of(const Scenario& s, const Eigen::VectorXd& rates) {
  const double scale = net_throughput(1.0, s.cfg, s.design);
  return s.objective == Objective::kMaxMin ? scale * rates.minCoeff() : scale * rates.sum();
}

}  // namespace

std::string to_string(Objective objective) {
  return objective == Objective::kSumRate ? "sum_rate" : "max_min";
}

void Scenario::validate() const {
  cfg.validate();
  if (n_drops < 1) throw InvalidArgument("n_drops must be at least 1");
  if (n_smallscale < 1) throw InvalidArgument("n_smallscale must be at least 1");
  if (design == CsiFlavor::kStatistical && n_mc_stat < kMinStatisticalSamples) {
    throw InvalidArgument("n_mc_stat must be at least " +
                          std::to_string(kMinStatisticalSamples));
  }
  if (const auto* keyhole = std::get_if<KeyholeModel>(&model)) keyhole->spec.validate(cfg.K);
  solver.validate();
  prelog(cfg, design);
}

double ThroughputCdf::quantile(double q) const {
  if (samples.empty()) throw InvalidArgument("quantile of an empty distribution");
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, samples.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return samples[lo] + frac * (samples[hi] - samples[lo]);
}

ThroughputCdf compute_cdf(std::vector<double> samples) {
  if (samples.empty()) throw InvalidArgument("CDF needs at least one sample");
  ThroughputCdf cdf;
  std::sort(samples.begin(), samples.end());
  cdf.samples = std::move(samples);
  const std::size_t n = cdf.samples.size();
  cdf.probabilities.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    cdf.probabilities[i] = static_cast<double>(i + 1) / static_cast<double>(n);
  }
  cdf.median = cdf.quantile(0.5);
  cdf.p05 = cdf.quantile(0.05);
  return cdf;
}

DropRecord run_drop(const Scenario& s, int drop_index) {
  const RandomStream root(s.cfg.rng_seed);
  const RandomStream drop_rng = root.split(static_cast<std::uint64_t>(drop_index));
  RandomStream placement = drop_rng.split(kPlacementStream);
  const LargeScaleDrop drop = drop_users(s.cfg, placement);
  const double rho_d = s.cfg.rho_d();

  DropRecord record;
  record.drop = drop_index;
  record.betas = drop.betas;

  if (s.design == CsiFlavor::kStatistical) {
    try {
      RandomStream stat_rng = drop_rng.split(kStatisticalStream);
      const SinrTerms terms =
          sinr_terms_statistical(drop, s.model, s.scheme, s.cfg.M, rho_d, s.n_mc_stat, stat_rng);
      const PowerAllocation alloc = solve(s, terms, std::nullopt);
      record.per_user_rate = rate_statistical(terms, alloc).per_user_rate;
    } catch (const std::exception& e) {
      throw CampaignError("scenario '" + s.id + "', drop " + std::to_string(drop_index) +
                              ": " + e.what(),
                          drop_index, -1);
    }
  } else {
    const RandomStream inst_rng = drop_rng.split(kInstantaneousStream);
    std::vector<SinrTerms> terms(s.n_smallscale);
    std::vector<PowerAllocation> allocs(s.n_smallscale);
    std::optional<PowerAllocation> previous;
    for (int r = 0; r < s.n_smallscale; ++r) {
      try {
        RandomStream rng = inst_rng.split(static_cast<std::uint64_t>(r));
        const ChannelRealization real = sample_channel(s.model, drop, s.cfg.M, rng);
        terms[r] = sinr_terms_instantaneous(real.G, make_precoder(s.scheme, real.G), rho_d);
        allocs[r] = solve(s, terms[r], s.warm_start ? previous : std::nullopt);
        previous = allocs[r];
      } catch (const std::exception& e) {
        throw CampaignError("scenario '" + s.id + "', drop " + std::to_string(drop_index) +
                                ", realization " + std::to_string(r) + ": " + e.what(),
                            drop_index, r);
      }
    }
    record.per_user_rate = rate_instantaneous(terms, allocs).per_user_rate;
  }
  record.metric = metric_of(s, record.per_user_rate);
  return record;
}

ScenarioResult run_scenario(const Scenario& s, int threads) {
  s.validate();
  const int n = s.n_drops;
  std::vector<DropRecord> records(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<int> next{0};

  auto worker = [&]() {
    for (int d = next++; d < n; d = next++) {
      try {
        records[d] = run_drop(s, d);
      } catch (...) {
        errors[d] = std::current_exception();
      }
    }
  };

  const int workers = std::clamp(threads, 1, n);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ScenarioResult result;
  std::vector<double> metrics(n);
  for (int d = 0; d < n; ++d) metrics[d] = records[d].metric;
  result.cdf = compute_cdf(std::move(metrics));
  result.drops = std::move(records);
  return result;
}

double median_gap(const ThroughputCdf& statistical, const ThroughputCdf& instantaneous) {
  if (!(instantaneous.median > 0.0)) {
    throw InvalidArgument("instantaneous median must be positive to form a relative gap");
  }
  return (instantaneous.median - statistical.median) / instantaneous.median;
}

std::vector<GapRow> keyhole_gap_sweep(const Scenario& base,
                                      const std::vector<std::optional<int>>& o_list,
                                      int threads) {
  if (o_list.empty()) throw InvalidArgument("keyhole sweep needs at least one keyhole count");
  std::vector<GapRow> rows;
  for (const auto& o : o_list) {
    Scenario s = base;
    if (o) {
      s.model = KeyholeModel{KeyholeSpec::equal_gains(base.cfg.K, *o)};
    } else {
      s.model = RayleighModel{};
    }
    s.design = CsiFlavor::kStatistical;
    const ScenarioResult stat = run_scenario(s, threads);
    s.design = CsiFlavor::kInstantaneous;
    const ScenarioResult inst = run_scenario(s, threads);
    rows.push_back({o, stat.cdf.median, inst.cdf.median, median_gap(stat.cdf, inst.cdf)});
  }
  return rows;
}

void NrNumerology::validate() const {
  if (!(bandwidth_hz > 0.0)) throw InvalidArgument("bandwidth must be positive");
  if (!(subcarrier_spacing_hz > 0.0)) throw InvalidArgument("subcarrier spacing must be positive");
  if (subcarriers_per_granularity < 1) {
    throw InvalidArgument("subcarriers per granularity must be at least 1");
  }
  if (ttis_per_frame < 1) throw InvalidArgument("TTIs per frame must be at least 1");
  if (frames < 1) throw InvalidArgument("frame count must be at least 1");
}

RecomputeCounts recompute_counts(const NrNumerology& n) {
  n.validate();
  const double granularity_hz = n.subcarriers_per_granularity * n.subcarrier_spacing_hz;
  // The epsilon keeps exact multiples from rounding down.
  const auto intervals =
      static_cast<std::int64_t>(std::floor(n.bandwidth_hz / granularity_hz + 1e-9));
  RecomputeCounts c;
  c.per_tti = intervals;
  c.per_frame = intervals * n.ttis_per_frame;
  c.per_n_frames = c.per_frame * n.frames;
  return c;
}

}  // namespace csipc
