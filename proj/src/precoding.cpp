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

#include "csipc/precoding.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include "csipc/errors.hpp"

namespace csipc {

std::string to_string(Scheme scheme) { return scheme == Scheme::kMR ? "MR" : "ZF"; }

Precoder mr_precoder(const CMatrix& G_hat) {
  Precoder p;
  p.scheme = Scheme::kMR;
  p.W.resize(G_hat.rows(), G_hat.cols());
  for (Eigen::Index k = 0; k < G_hat.cols(); ++k) {
    const double norm = G_hat.col(k).norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw DegenerateChannel("MR precoder: channel column " + std::to_string(k) + " is zero");
    }
    p.W.col(k) = G_hat.col(k) / norm;
  }
  return p;
}

Precoder zf_precoder(const CMatrix& G_hat) {
  const Eigen::Index M = G_hat.rows();
  const Eigen::Index K = G_hat.cols();
  if (M < K) {
    throw SingularMatrix("ZF precoder needs M >= K (got M=" + std::to_string(M) +
                         ", K=" + std::to_string(K) + ")");
  }
  Eigen::HouseholderQR<CMatrix> qr(G_hat);
  const CMatrix R = qr.matrixQR().topRows(K).triangularView<Eigen::Upper>();

  // R shares its singular values with G_hat.
  const Eigen::VectorXd sv = Eigen::JacobiSVD<CMatrix>(R).singularValues();
  const double s_max = sv.size() ? sv(0) : 0.0;
  const double s_min = sv.size() ? sv(sv.size() - 1) : 0.0;
  if (!(s_max > 0.0) || !(s_min >= kZfRankTolerance * s_max)) {
    throw SingularMatrix("ZF precoder: channel matrix is rank deficient (M=" +
                         std::to_string(M) + ", K=" + std::to_string(K) +
                         ", sigma_min/sigma_max=" + std::to_string(s_max > 0 ? s_min / s_max : 0) +
                         ")");
  }

  const CMatrix Q = qr.householderQ() * CMatrix::Identity(M, K);
  const CMatrix R_inv =
      R.triangularView<Eigen::Upper>().solve(CMatrix::Identity(K, K));
  Precoder p;
  p.scheme = Scheme::kZF;
  p.W = Q * R_inv.adjoint();
  for (Eigen::Index k = 0; k < K; ++k) p.W.col(k).normalize();
  return p;
}

Precoder make_precoder(Scheme scheme, const CMatrix& G_hat) {
  return scheme == Scheme::kZF ? zf_precoder(G_hat) : mr_precoder(G_hat);
}

}  // namespace csipc
