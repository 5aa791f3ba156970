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

#ifndef CSIPC_CHANNEL_HPP
#define CSIPC_CHANNEL_HPP

#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "csipc/config.hpp"
#include "csipc/random.hpp"

namespace csipc {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// User positions and large-scale gains for one drop. The BS sits at the
/// origin.
struct LargeScaleDrop {
  std::vector<Eigen::Vector2d> positions;
  Eigen::VectorXd distances;
  Eigen::VectorXd betas;  // linear power gains

  int K() const { return static_cast<int>(betas.size()); }

  /// Drop with the given gains and all users placed at the origin. Meant for
  /// experiments that pin beta directly.
  static LargeScaleDrop from_betas(const Eigen::VectorXd& betas);
};

/// Keyhole gains per user. Row k holds the o_k complex gains c_j^(k); each
/// row must have unit energy.
struct KeyholeSpec {
  std::vector<std::vector<std::complex<double>>> gains;

  int K() const { return static_cast<int>(gains.size()); }
  int count(int k) const { return static_cast<int>(gains[k].size()); }

  /// o keyholes per user, every gain 1/sqrt(o).
  static KeyholeSpec equal_gains(int K, int o);

  void validate(int K) const;
};

struct RayleighModel {};
struct KeyholeModel {
  KeyholeSpec spec;
};
/// Variance-free channel: h_k is the k-th DFT column (unit-modulus entries,
/// mutually orthogonal columns). Used as a stub in tests and sanity runs.
struct DeterministicModel {};

using ChannelModel = std::variant<RayleighModel, KeyholeModel, DeterministicModel>;

enum class ModelKind { kRayleigh, kKeyhole, kDeterministic };

ModelKind kind_of(const ChannelModel& model);
std::string to_string(ModelKind kind);

struct ChannelRealization {
  CMatrix G;  // M x K, column k is g_k
  ModelKind model = ModelKind::kRayleigh;

  int M() const { return static_cast<int>(G.rows()); }
  int K() const { return static_cast<int>(G.cols()); }
};

struct ChannelEstimate {
  CMatrix G_hat;
};

/// Path loss in dB at distance d (meters).
double pathloss_db(double d, const PathLossParams& p);

/// Large-scale gain (linear) at distance d. Throws InvalidArgument if d <= 0.
double compute_pathloss(double d, const PathLossParams& p);

/// Places cfg.K users uniformly on the disk of radius cfg.D.
LargeScaleDrop drop_users(const SystemConfig& cfg, RandomStream& rng);

ChannelRealization sample_rayleigh(const LargeScaleDrop& drop, int M, RandomStream& rng);

ChannelRealization sample_keyhole(const LargeScaleDrop& drop, const KeyholeSpec& spec, int M,
                                  RandomStream& rng);

ChannelRealization sample_deterministic(const LargeScaleDrop& drop, int M);

ChannelRealization sample_channel(const ChannelModel& model, const LargeScaleDrop& drop, int M,
                                  RandomStream& rng);

/// Monte Carlo HC estimate Var{x}/E{x}^2 from n_samples draws of the
/// squared channel norm x.
double hardening_coefficient(const std::function<double(RandomStream&)>& squared_norm_sampler,
                             int n_samples, RandomStream& rng);

/// Per-user HC estimates for a channel model.
Eigen::VectorXd hardening_coefficient(const ChannelModel& model, const LargeScaleDrop& drop,
                                      int M, int n_samples, RandomStream& rng);

/// Linear MMSE estimate from orthogonal uplink pilots of length tau_u and
/// normalized pilot power rho_u. rho_u = 0 yields the zero estimate.
ChannelEstimate mmse_estimate(const ChannelRealization& real, const LargeScaleDrop& drop,
                              int tau_u, double rho_u, RandomStream& rng);

ChannelEstimate mmse_estimate(const ChannelRealization& real, const LargeScaleDrop& drop,
                              const SystemConfig& cfg, RandomStream& rng);

}  // namespace csipc

#endif  // CSIPC_CHANNEL_HPP
