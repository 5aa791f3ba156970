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

#include "csipc/channel.hpp"

#include <cmath>
#include <numbers>

#include "csipc/errors.hpp"

namespace csipc {

LargeScaleDrop LargeScaleDrop::from_betas(const Eigen::VectorXd& betas) {
  LargeScaleDrop drop;
  drop.positions.assign(betas.size(), Eigen::Vector2d::Zero());
  drop.distances = Eigen::VectorXd::Zero(betas.size());
  drop.betas = betas;
  return drop;
}

KeyholeSpec KeyholeSpec::equal_gains(int K, int o) {
  if (o < 1) throw InvalidArgument("keyhole count must be at least 1");
  const std::complex<double> c(1.0 / std::sqrt(static_cast<double>(o)), 0.0);
  KeyholeSpec spec;
  spec.gains.assign(K, std::vector<std::complex<double>>(o, c));
  return spec;
}

void KeyholeSpec::validate(int K) const {
  if (this->K() != K) {
    throw InvalidArgument("keyhole spec covers " + std::to_string(this->K()) +
                          " users, expected " + std::to_string(K));
  }
  for (int k = 0; k < K; ++k) {
    if (gains[k].empty()) {
      throw InvalidArgument("user " + std::to_string(k) + " has zero keyholes");
    }
    double energy = 0.0;
    for (const auto& c : gains[k]) energy += std::norm(c);
    if (std::abs(energy - 1.0) > 1e-9) {
      throw InvalidArgument("keyhole gains of user " + std::to_string(k) +
                            " must have unit energy (got " + std::to_string(energy) + ")");
    }
  }
}

ModelKind kind_of(const ChannelModel& model) {
  return static_cast<ModelKind>(model.index());
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kRayleigh: return "rayleigh";
    case ModelKind::kKeyhole: return "keyhole";
    case ModelKind::kDeterministic: return "deterministic";
  }
  return "unknown";
}

double pathloss_db(double d, const PathLossParams& p) {
  if (!(d > 0.0)) {
    throw InvalidArgument("distance must be positive (got " + std::to_string(d) + ")");
  }
  const double loss_at_d1 = p.reference_loss_db + 10.0 * p.exponent_far * std::log10(p.d1);
  if (d > p.d1) return p.reference_loss_db + 10.0 * p.exponent_far * std::log10(d);
  const double dd = std::max(d, p.d0);
  return loss_at_d1 - 10.0 * p.exponent_mid * std::log10(p.d1 / dd);
}

double compute_pathloss(double d, const PathLossParams& p) {
  return std::pow(10.0, -pathloss_db(d, p) / 10.0);
}

LargeScaleDrop drop_users(const SystemConfig& cfg, RandomStream& rng) {
  cfg.validate();
  LargeScaleDrop drop;
  drop.positions.resize(cfg.K);
  drop.distances.resize(cfg.K);
  drop.betas.resize(cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    const double r = cfg.D * std::sqrt(rng.uniform());
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    drop.positions[k] = {r * std::cos(theta), r * std::sin(theta)};
    // r == 0 has probability zero but would break the path loss domain.
    const double d = std::max(drop.positions[k].norm(), 1e-9);
    drop.distances[k] = d;
    double beta = compute_pathloss(d, cfg.pathloss);
    if (cfg.shadowing_sigma_db > 0.0 && d > cfg.pathloss.d1) {
      beta *= std::pow(10.0, cfg.shadowing_sigma_db * rng.normal() / 10.0);
    }
    drop.betas[k] = beta;
  }
  return drop;
}

ChannelRealization sample_rayleigh(const LargeScaleDrop& drop, int M, RandomStream& rng) {
  if (M < 1) throw InvalidArgument("M must be at least 1");
  const int K = drop.K();
  ChannelRealization real;
  real.model = ModelKind::kRayleigh;
  real.G.resize(M, K);
  for (int k = 0; k < K; ++k) {
    const double scale = std::sqrt(drop.betas[k]);
    for (int m = 0; m < M; ++m) real.G(m, k) = scale * rng.complex_normal();
  }
  return real;
}

ChannelRealization sample_keyhole(const LargeScaleDrop& drop, const KeyholeSpec& spec, int M,
                                  RandomStream& rng) {
  if (M < 1) throw InvalidArgument("M must be at least 1");
  const int K = drop.K();
  spec.validate(K);
  ChannelRealization real;
  real.model = ModelKind::kKeyhole;
  real.G = CMatrix::Zero(M, K);
  for (int k = 0; k < K; ++k) {
    const double scale = std::sqrt(drop.betas[k]);
    for (const auto& c : spec.gains[k]) {
      const std::complex<double> weight = scale * c * rng.complex_normal();
      for (int m = 0; m < M; ++m) real.G(m, k) += weight * rng.complex_normal();
    }
  }
  return real;
}

ChannelRealization sample_deterministic(const LargeScaleDrop& drop, int M) {
  if (M < 1) throw InvalidArgument("M must be at least 1");
  const int K = drop.K();
  ChannelRealization real;
  real.model = ModelKind::kDeterministic;
  real.G.resize(M, K);
  for (int k = 0; k < K; ++k) {
    const double scale = std::sqrt(drop.betas[k]);
    for (int m = 0; m < M; ++m) {
      const double phase = -2.0 * std::numbers::pi * static_cast<double>(m) * k / M;
      real.G(m, k) = scale * std::polar(1.0, phase);
    }
  }
  return real;
}

ChannelRealization sample_channel(const ChannelModel& model, const LargeScaleDrop& drop, int M,
                                  RandomStream& rng) {
  if (const auto* keyhole = std::get_if<KeyholeModel>(&model)) {
    return sample_keyhole(drop, keyhole->spec, M, rng);
  }
  if (std::holds_alternative<DeterministicModel>(model)) return sample_deterministic(drop, M);
  return sample_rayleigh(drop, M, rng);
}

namespace {

// Shifted two-pass-free moments: subtracting the first sample keeps a
// constant sequence at exactly zero variance.
struct ShiftedMoments {
  double shift = 0.0;
  double sum = 0.0;
  double sum_sq = 0.0;
  int n = 0;

  void add(double x) {
    if (n == 0) shift = x;
    const double d = x - shift;
    sum += d;
    sum_sq += d * d;
    ++n;
  }

  double mean() const { return shift + sum / n; }
  double variance() const {
    const double m = sum / n;
    return std::max(0.0, (sum_sq - n * m * m) / (n - 1));
  }
};

double hc_from_moments(const ShiftedMoments& mom) {
  const double mean = mom.mean();
  if (!(mean > 0.0) || !std::isfinite(mean)) {
    throw DomainError("squared channel norm has zero mean; HC is undefined");
  }
  return mom.variance() / (mean * mean);
}

}  // namespace

double hardening_coefficient(const std::function<double(RandomStream&)>& squared_norm_sampler,
                             int n_samples, RandomStream& rng) {
  if (n_samples < 2) throw InvalidArgument("HC estimation needs at least 2 samples");
  ShiftedMoments mom;
  for (int i = 0; i < n_samples; ++i) mom.add(squared_norm_sampler(rng));
  return hc_from_moments(mom);
}

Eigen::VectorXd hardening_coefficient(const ChannelModel& model, const LargeScaleDrop& drop,
                                      int M, int n_samples, RandomStream& rng) {
  if (n_samples < 2) throw InvalidArgument("HC estimation needs at least 2 samples");
  const int K = drop.K();
  std::vector<ShiftedMoments> mom(K);
  for (int i = 0; i < n_samples; ++i) {
    const ChannelRealization real = sample_channel(model, drop, M, rng);
    for (int k = 0; k < K; ++k) mom[k].add(real.G.col(k).squaredNorm());
  }
  Eigen::VectorXd hc(K);
  for (int k = 0; k < K; ++k) hc[k] = hc_from_moments(mom[k]);
  return hc;
}

ChannelEstimate mmse_estimate(const ChannelRealization& real, const LargeScaleDrop& drop,
                              int tau_u, double rho_u, RandomStream& rng) {
  if (tau_u < real.K()) {
    throw InvalidArgument("tau_u must be at least K for orthogonal pilots");
  }
  if (!(rho_u >= 0.0)) throw InvalidArgument("pilot power must be non-negative");
  ChannelEstimate est;
  est.G_hat.resize(real.M(), real.K());
  for (int k = 0; k < real.K(); ++k) {
    const double beta = drop.betas[k];
    const double snr = tau_u * rho_u * beta;
    const double signal_weight = snr / (snr + 1.0);
    const double noise_weight = std::sqrt(tau_u * rho_u) * beta / (snr + 1.0);
    for (int m = 0; m < real.M(); ++m) {
      est.G_hat(m, k) = signal_weight * real.G(m, k) + noise_weight * rng.complex_normal();
    }
  }
  return est;
}

ChannelEstimate mmse_estimate(const ChannelRealization& real, const LargeScaleDrop& drop,
                              const SystemConfig& cfg, RandomStream& rng) {
  return mmse_estimate(real, drop, cfg.tau_u, cfg.rho_u(), rng);
}

}  // namespace csipc
