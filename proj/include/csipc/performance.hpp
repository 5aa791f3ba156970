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

#ifndef CSIPC_PERFORMANCE_HPP
#define CSIPC_PERFORMANCE_HPP

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "csipc/channel.hpp"
#include "csipc/precoding.hpp"

namespace csipc {

/// Which CSI the SINR expression assumes: the hardening bound (statistical)
/// or perfect per-realization knowledge (instantaneous).
enum class CsiFlavor { kStatistical, kInstantaneous };

std::string to_string(CsiFlavor flavor);

/// Coefficients of SINR_k = rho_d eta_k a_k / (rho_d sum_t eta_t b_tk + 1).
///
/// `b(t, k)` is the power that stream t leaks into user k. For the
/// statistical flavor `b(k, k)` is the beamforming gain uncertainty; for the
/// instantaneous flavor it is exactly zero.
struct SinrTerms {
  CsiFlavor flavor = CsiFlavor::kInstantaneous;
  Eigen::VectorXd a;
  Eigen::MatrixXd b;
  double rho_d = 1.0;

  int K() const { return static_cast<int>(a.size()); }
  void validate() const;
};

/// Power control coefficients eta with sum(eta) <= 1.
struct PowerAllocation {
  Eigen::VectorXd eta;

  int K() const { return static_cast<int>(eta.size()); }
  void validate() const;

  static PowerAllocation uniform(int K);
};

/// Feasibility slack on the sum-power constraint.
inline constexpr double kPowerSumSlack = 1e-9;

struct RateResult {
  Eigen::VectorXd per_user_rate;  // bits/s/Hz
  double sum_rate = 0.0;
  double min_rate = 0.0;

  static RateResult from_per_user(Eigen::VectorXd rates);
};

SinrTerms sinr_terms_instantaneous(const CMatrix& G, const Precoder& precoder, double rho_d);

/// Accumulates effective gains g_k^H w_t over realizations and turns their
/// sample moments into statistical SINR terms.
class StatisticalTermsAccumulator {
 public:
  explicit StatisticalTermsAccumulator(int K);

  void add(const CMatrix& G, const Precoder& precoder);
  int count() const { return n_; }
  SinrTerms finish(double rho_d) const;

 private:
  int K_;
  int n_ = 0;
  // Moments are accumulated relative to the first realization so that a
  // constant channel yields exactly zero gain uncertainty.
  Eigen::MatrixXcd shift_;
  Eigen::MatrixXcd sum_;
  Eigen::MatrixXd sum_sq_;
};

/// Monte Carlo estimate of the hardening-bound terms for one drop with
/// perfect CSI at the BS. Every sample draws fresh small-scale fading and
/// rebuilds the precoder. Requires n_mc >= 100.
SinrTerms sinr_terms_statistical(const LargeScaleDrop& drop, const ChannelModel& model,
                                 Scheme scheme, int M, double rho_d, int n_mc,
                                 RandomStream& rng);

inline constexpr int kMinStatisticalSamples = 100;

double sinr(const SinrTerms& terms, const PowerAllocation& alloc, int k);
Eigen::VectorXd sinr_all(const SinrTerms& terms, const PowerAllocation& alloc);

/// log2(1 + SINR_k) per user.
RateResult rate_statistical(const SinrTerms& terms, const PowerAllocation& alloc);

/// Per-user sample average of log2(1 + SINR_k) over realizations.
RateResult rate_instantaneous(std::span<const SinrTerms> terms,
                              std::span<const PowerAllocation> allocs);

/// Pre-log factor: 1 - tau_u/tau_c (statistical) or 1 - (tau_u+tau_d)/tau_c.
double prelog(const SystemConfig& cfg, CsiFlavor flavor);

/// Net throughput B * prelog * rate in bits/s.
double net_throughput(double rate, const SystemConfig& cfg, CsiFlavor flavor);

}  // namespace csipc

#endif  // CSIPC_PERFORMANCE_HPP
