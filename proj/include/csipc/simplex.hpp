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

#ifndef CSIPC_SIMPLEX_HPP
#define CSIPC_SIMPLEX_HPP

#include <Eigen/Dense>

namespace csipc {

enum class LpStatus { kOptimal, kUnbounded, kIterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  Eigen::VectorXd x;
  double objective = 0.0;
  int pivots = 0;
};

/// Dense tableau simplex for
///
///   maximize c^T x  subject to  A x <= b,  x >= 0,
///
/// with b >= 0 so that the slack basis is feasible at the origin. Bland's
/// rule prevents cycling on the degenerate vertices this class of problems
/// produces. Sized for tens of variables.
LpSolution solve_lp_slack_basis(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                const Eigen::VectorXd& c, int max_pivots = 10000);

}  // namespace csipc

#endif  // CSIPC_SIMPLEX_HPP
