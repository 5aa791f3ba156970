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

#ifndef CSIPC_CONFIG_HPP
#define CSIPC_CONFIG_HPP

#include <cstdint>

namespace csipc {

/// Three-slope distance-dependent path loss.
///
/// Loss in dB grows with slope `exponent_far` beyond `d1`, with
/// `exponent_mid` between `d0` and `d1`, and is flat below `d0`. The far
/// slope is anchored by `reference_loss_db`, its extrapolated loss at 1 m;
/// the other two segments follow from continuity. The default anchor puts
/// 140.7 dB of loss at 1 km.
struct PathLossParams {
  double d0 = 10.0;
  double d1 = 50.0;
  double exponent_far = 3.5;
  double exponent_mid = 2.0;
  double reference_loss_db = 35.7;

  void validate() const;
};

/// Physical-layer and protocol constants of one single-cell system.
struct SystemConfig {
  int M = 100;                       // BS antennas
  int K = 5;                         // single-antenna users
  double D = 500.0;                  // cell radius [m]
  double B = 20e6;                   // bandwidth [Hz]
  double bs_power = 1.0;             // [W]
  double noise_power_dbm = -92.0;    // [dBm]
  double pilot_power = 0.1;          // per-pilot-symbol power [W]
  int tau_c = 200;                   // coherence interval [samples]
  int tau_u = 5;                     // uplink pilot length [samples]
  int tau_d = 5;                     // downlink pilot length [samples]
  std::uint64_t rng_seed = 1;
  PathLossParams pathloss;
  double shadowing_sigma_db = 0.0;   // 0 disables shadowing

  /// Throws InvalidArgument naming the first violated invariant.
  void validate() const;

  double noise_power_watts() const;
  /// Normalized downlink power: BS transmit power over noise power.
  double rho_d() const;
  /// Normalized pilot power: pilot transmit power over noise power.
  double rho_u() const;
};

}  // namespace csipc

#endif  // CSIPC_CONFIG_HPP
