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

#ifndef CSIPC_PRECODING_HPP
#define CSIPC_PRECODING_HPP

#include <string>

#include "csipc/channel.hpp"

namespace csipc {

enum class Scheme { kMR, kZF };

std::string to_string(Scheme scheme);

/// Unit-norm precoding vectors, one column per user. The effective gain of
/// user k for stream t is g_k^H w_t.
struct Precoder {
  CMatrix W;
  Scheme scheme = Scheme::kMR;
};

/// Columns smaller than the singular-value ratio below are declared rank
/// deficient by the ZF precoder.
inline constexpr double kZfRankTolerance = 1e-10;

/// Matched filter: w_k = g_hat_k / ||g_hat_k||. Throws DegenerateChannel on a
/// zero column.
Precoder mr_precoder(const CMatrix& G_hat);

/// Normalized columns of G_hat (G_hat^H G_hat)^{-1}, computed from a thin QR
/// factorization as Q R^{-H}. Throws SingularMatrix when the smallest
/// singular value of G_hat falls below kZfRankTolerance times the largest.
Precoder zf_precoder(const CMatrix& G_hat);

Precoder make_precoder(Scheme scheme, const CMatrix& G_hat);

}  // namespace csipc

#endif  // CSIPC_PRECODING_HPP
