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

#include "csipc/performance.hpp"

#include <cmath>

#include "csipc/errors.hpp"

namespace csipc {

std::string to_string(CsiFlavor flavor) {
  return flavor == CsiFlavor::kStatistical ? "statistical" : "instantaneous";
}

void SinrTerms::validate() const {
  const Eigen::Index K = a.size();
  if (K < 1) throw InvalidArgument("SINR terms need at least one user");
  if (b.rows() != K || b.cols() != K) {
    throw InvalidArgument("b must be K x K (K=" + std::to_string(K) + ", got " +
                          std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
  }
  if (!(rho_d > 0.0) || !std::isfinite(rho_d)) throw InvalidArgument("rho_d must be positive");
  if (!a.allFinite() || (a.array() < 0.0).any()) {
    throw InvalidArgument("a_k must be finite and non-negative");
  }
  if (!b.allFinite() || (b.array() < 0.0).any()) {
    throw InvalidArgument("b_tk must be finite and non-negative");
  }
  if (flavor == CsiFlavor::kInstantaneous && (b.diagonal().array() != 0.0).any()) {
    throw InvalidArgument("instantaneous terms must have b_kk = 0");
  }
}

void PowerAllocation::validate() const {
  if (!eta.allFinite() || (eta.array() < 0.0).any()) {
    throw InvalidArgument("power coefficients must be finite and non-negative");
  }
  if (eta.sum() > 1.0 + kPowerSumSlack) {
    throw InvalidArgument("power coefficients sum to " + std::to_string(eta.sum()) +
                          " > 1");
  }
}

PowerAllocation PowerAllocation::uniform(int K) {
  return {Eigen::VectorXd::Constant(K, 1.0 / K)};
}

RateResult RateResult::from_per_user(Eigen::VectorXd rates) {
  RateResult r;
  r.sum_rate = rates.sum();
  r.min_rate = rates.size() ? rates.minCoeff() : 0.0;
  r.per_user_rate = std::move(rates);
  return r;
}

SinrTerms sinr_terms_instantaneous(const CMatrix& G, const Precoder& precoder, double rho_d) {
  if (G.rows() != precoder.W.rows() || G.cols() != precoder.W.cols()) {
    throw InvalidArgument("channel and precoder dimensions disagree");
  }
  const Eigen::Index K = G.cols();
  const Eigen::MatrixXcd gains = G.adjoint() * precoder.W;  // (k, t) = g_k^H w_t
  SinrTerms terms;
  terms.flavor = CsiFlavor::kInstantaneous;
  terms.rho_d = rho_d;
  terms.a.resize(K);
  terms.b.resize(K, K);
  for (Eigen::Index k = 0; k < K; ++k) {
    terms.a[k] = std::norm(gains(k, k));
    for (Eigen::Index t = 0; t < K; ++t) {
      terms.b(t, k) = t == k ? 0.0 : std::norm(gains(k, t));
    }
  }
  return terms;
}

StatisticalTermsAccumulator::StatisticalTermsAccumulator(int K)
    : K_(K),
      shift_(Eigen::MatrixXcd::Zero(K, K)),
      sum_(Eigen::MatrixXcd::Zero(K, K)),
      sum_sq_(Eigen::MatrixXd::Zero(K, K)) {}

void StatisticalTermsAccumulator::add(const CMatrix& G, const Precoder& precoder) {
  if (G.cols() != K_ || precoder.W.cols() != K_ || G.rows() != precoder.W.rows()) {
    throw InvalidArgument("realization dimensions disagree with the accumulator");
  }
  const Eigen::MatrixXcd gains = G.adjoint() * precoder.W;
  if (n_ == 0) shift_ = gains;
  const Eigen::MatrixXcd d = gains - shift_;
  sum_ += d;
  sum_sq_ += d.cwiseAbs2();
  ++n_;
}

SinrTerms StatisticalTermsAccumulator::finish(double rho_d) const {
  if (n_ == 0) throw InvalidArgument("no realizations accumulated");
  SinrTerms terms;
  terms.flavor = CsiFlavor::kStatistical;
  terms.rho_d = rho_d;
  terms.a.resize(K_);
  terms.b.resize(K_, K_);
  const double n = static_cast<double>(n_);
  for (int k = 0; k < K_; ++k) {
    for (int t = 0; t < K_; ++t) {
      // gains(k, t) = g_k^H w_t
      const std::complex<double> x0 = shift_(k, t);
      const std::complex<double> mean_d = sum_(k, t) / n;
      const double mean_sq_d = sum_sq_(k, t) / n;
      if (t == k) {
        terms.a[k] = std::norm(x0 + mean_d);
        // E|x|^2 - |E x|^2 = E|d|^2 - |E d|^2 for d = x - x0.
        terms.b(k, k) = std::max(0.0, mean_sq_d - std::norm(mean_d));
      } else {
        // E|x|^2 = |x0|^2 + 2 Re(conj(x0) E d) + E|d|^2.
        const double second =
            std::norm(x0) + 2.0 * std::real(std::conj(x0) * mean_d) + mean_sq_d;
        terms.b(t, k) = std::max(0.0, second);
      }
    }
  }
  return terms;
}

SinrTerms sinr_terms_statistical(const LargeScaleDrop& drop, const ChannelModel& model,
                                 Scheme scheme, int M, double rho_d, int n_mc,
                                 RandomStream& rng) {
  if (n_mc < kMinStatisticalSamples) {
    throw InvalidArgument("statistical terms need at least " +
                          std::to_string(kMinStatisticalSamples) + " Monte Carlo samples (got " +
                          std::to_string(n_mc) + ")");
  }
  StatisticalTermsAccumulator acc(drop.K());
  for (int i = 0; i < n_mc; ++i) {
    const ChannelRealization real = sample_channel(model, drop, M, rng);
    acc.add(real.G, make_precoder(scheme, real.G));
  }
  return acc.finish(rho_d);
}

double sinr(const SinrTerms& terms, const PowerAllocation& alloc, int k) {
  double interference = 0.0;
  for (int t = 0; t < terms.K(); ++t) interference += alloc.eta[t] * terms.b(t, k);
  return terms.rho_d * alloc.eta[k] * terms.a[k] / (terms.rho_d * interference + 1.0);
}

Eigen::VectorXd sinr_all(const SinrTerms& terms, const PowerAllocation& alloc) {
  Eigen::VectorXd s(terms.K());
  for (int k = 0; k < terms.K(); ++k) s[k] = sinr(terms, alloc, k);
  return s;
}

RateResult rate_statistical(const SinrTerms& terms, const PowerAllocation& alloc) {
  if (alloc.K() != terms.K()) throw InvalidArgument("allocation size disagrees with terms");
  Eigen::VectorXd rates(terms.K());
  for (int k = 0; k < terms.K(); ++k) rates[k] = std::log2(1.0 + sinr(terms, alloc, k));
  return RateResult::from_per_user(std::move(rates));
}

RateResult rate_instantaneous(std::span<const SinrTerms> terms,
                              std::span<const PowerAllocation> allocs) {
  if (terms.empty()) throw InvalidArgument("instantaneous rate needs at least one realization");
  if (terms.size() != allocs.size()) {
    throw InvalidArgument("one allocation per realization is required");
  }
  const int K = terms.front().K();
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(K);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].K() != K || allocs[i].K() != K) {
      throw InvalidArgument("realization " + std::to_string(i) + " has a different user count");
    }
    for (int k = 0; k < K; ++k) acc[k] += std::log2(1.0 + sinr(terms[i], allocs[i], k));
  }
  return RateResult::from_per_user(acc / static_cast<double>(terms.size()));
}

double prelog(const SystemConfig& cfg, CsiFlavor flavor) {
  if (cfg.tau_c <= 0) throw InvalidArgument("tau_c must be positive");
  const int overhead = flavor == CsiFlavor::kStatistical ? cfg.tau_u : cfg.tau_u + cfg.tau_d;
  const double phi = static_cast<double>(cfg.tau_c - overhead) / cfg.tau_c;
  if (!(phi > 0.0)) {
    throw InvalidArgument("training overhead consumes the whole coherence interval");
  }
  return phi;
}

double net_throughput(double rate, const SystemConfig& cfg, CsiFlavor flavor) {
  return cfg.B * prelog(cfg, flavor) * rate;
}

}  // namespace csipc
