// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "svd.hpp"

#include <Eigen/SVD>

#include "egpc/error.hpp"

namespace egpc::detail
{

LeftSingular left_singular(const Eigen::MatrixXd& A)
{
  const Eigen::MatrixXd At = A.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd, Eigen::HouseholderQRPreconditioner> svd(At, Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success || !svd.singularValues().allFinite() || !svd.matrixV().allFinite()) {
    throw NumericError("singular value decomposition failed");
  }
  return {svd.singularValues(), svd.matrixV()};
}

} // namespace egpc::detail
