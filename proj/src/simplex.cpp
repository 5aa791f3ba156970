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

#include "csipc/simplex.hpp"

#include <limits>
#include <vector>

#include "csipc/errors.hpp"

namespace csipc {

namespace {
constexpr double kPivotTol = 1e-11;
}

LpSolution solve_lp_slack_basis(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                const Eigen::VectorXd& c, int max_pivots) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (b.size() != m || c.size() != n) throw InvalidArgument("LP dimensions disagree");
  if ((b.array() < 0.0).any()) {
    throw InvalidArgument("slack-basis simplex requires b >= 0");
  }

  const Eigen::Index cols = n + m + 1;
  const Eigen::Index rhs = n + m;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, cols);
  T.topLeftCorner(m, n) = A;
  T.block(0, n, m, m).setIdentity();
  T.col(rhs).head(m) = b;
  T.row(m).head(n) = -c.transpose();

  std::vector<Eigen::Index> basis(m);
  for (Eigen::Index i = 0; i < m; ++i) basis[i] = n + i;

  LpSolution sol;
  for (sol.pivots = 0; sol.pivots < max_pivots; ++sol.pivots) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (T(m, j) < -kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) {
      sol.status = LpStatus::kOptimal;
      break;
    }

    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (T(i, enter) <= kPivotTol) continue;
      const double ratio = T(i, rhs) / T(i, enter);
      if (ratio < best - 1e-15 ||
          (ratio <= best + 1e-15 && leave >= 0 && basis[i] < basis[leave])) {
        best = std::min(best, ratio);
        leave = i;
      }
    }
    if (leave < 0) {
      sol.status = LpStatus::kUnbounded;
      return sol;
    }

    T.row(leave) /= T(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != leave && T(i, enter) != 0.0) T.row(i) -= T(i, enter) * T.row(leave);
    }
    basis[leave] = enter;
  }

  sol.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[i] < n) sol.x[basis[i]] = std::max(0.0, T(i, rhs));
  }
  sol.objective = c.dot(sol.x);
  return sol;
}

}  // namespace csipc
