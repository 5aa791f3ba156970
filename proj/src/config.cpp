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

#include "csipc/config.hpp"

#include <cmath>
#include <string>

#include "csipc/errors.hpp"

namespace csipc {

void PathLossParams::validate() const {
  if (!(d0 > 0.0) || !(d1 > d0)) {
    throw InvalidArgument("path loss breakpoints must satisfy 0 < d0 < d1 (got d0=" +
                          std::to_string(d0) + ", d1=" + std::to_string(d1) + ")");
  }
  if (!(exponent_far >= 0.0) || !(exponent_mid >= 0.0)) {
    throw InvalidArgument("path loss exponents must be non-negative");
  }
  if (!std::isfinite(reference_loss_db)) {
    throw InvalidArgument("path loss reference must be finite");
  }
}

void SystemConfig::validate() const {
  if (K < 1) throw InvalidArgument("K must be at least 1");
  if (M <= K) {
    throw InvalidArgument("M must exceed K (got M=" + std::to_string(M) +
                          ", K=" + std::to_string(K) + ")");
  }
  if (tau_u < K) {
    throw InvalidArgument("tau_u must be at least K for orthogonal pilots (got tau_u=" +
                          std::to_string(tau_u) + ", K=" + std::to_string(K) + ")");
  }
  if (tau_d < 0) throw InvalidArgument("tau_d must be non-negative");
  if (tau_c <= 0 || tau_u + tau_d > tau_c) {
    throw InvalidArgument("tau_u + tau_d must not exceed tau_c");
  }
  if (!(bs_power > 0.0)) throw InvalidArgument("bs_power must be positive");
  if (!(pilot_power > 0.0)) throw InvalidArgument("pilot_power must be positive");
  if (!(B > 0.0)) throw InvalidArgument("bandwidth B must be positive");
  if (!(D > 0.0)) throw InvalidArgument("cell radius D must be positive");
  if (!std::isfinite(noise_power_dbm)) throw InvalidArgument("noise power must be finite");
  if (!(shadowing_sigma_db >= 0.0)) {
    throw InvalidArgument("shadowing_sigma_db must be non-negative");
  }
  pathloss.validate();
}

double SystemConfig::noise_power_watts() const {
  return std::pow(10.0, (noise_power_dbm - 30.0) / 10.0);
}

double SystemConfig::rho_d() const { return bs_power / noise_power_watts(); }

double SystemConfig::rho_u() const { return pilot_power / noise_power_watts(); }

}  // namespace csipc
