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

// Hand-rolled generators for randomized tests.

#ifndef CSIPC_TESTS_GENERATORS_HPP
#define CSIPC_TESTS_GENERATORS_HPP

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "csipc/performance.hpp"

namespace gen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  std::complex<double> cn() {
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    return {n(engine_), n(engine_)};
  }

  Eigen::MatrixXcd channel(int M, int K) {
    Eigen::MatrixXcd G(M, K);
    for (int k = 0; k < K; ++k)
      for (int m = 0; m < M; ++m) G(m, k) = cn();
    return G;
  }

  /// Random SINR terms with a in [0.2, a_max], cross terms in [0, b_max].
  csipc::SinrTerms terms(int K, csipc::CsiFlavor flavor, double a_max = 5.0, double b_max = 1.0,
                         double rho_lo = 0.5, double rho_hi = 10.0) {
    csipc::SinrTerms t;
    t.flavor = flavor;
    t.rho_d = uniform(rho_lo, rho_hi);
    t.a.resize(K);
    t.b.resize(K, K);
    for (int k = 0; k < K; ++k) t.a[k] = uniform(0.2, a_max);
    for (int r = 0; r < K; ++r) {
      for (int c = 0; c < K; ++c) {
        if (r == c) {
          t.b(r, c) = flavor == csipc::CsiFlavor::kInstantaneous ? 0.0 : uniform(0.0, 0.5 * b_max);
        } else {
          t.b(r, c) = uniform(0.0, b_max);
        }
      }
    }
    return t;
  }

  /// Random point of {eta >= 0, sum eta <= 1}.
  csipc::PowerAllocation allocation(int K) {
    Eigen::VectorXd e(K);
    double s = 0.0;
    for (int k = 0; k <= K; ++k) {
      const double x = -std::log(1.0 - uniform(0.0, 1.0));
      if (k < K) e[k] = x;
      s += x;
    }
    return {e / s};
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gen

#endif  // CSIPC_TESTS_GENERATORS_HPP
