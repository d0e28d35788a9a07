// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EGPC_SRC_SVD_HPP
#define EGPC_SRC_SVD_HPP

#include <Eigen/Core>

namespace egpc::detail
{

struct LeftSingular
{
  Eigen::VectorXd values;  // descending
  Eigen::MatrixXd vectors; // l x min(l, m)
};

// Singular values and left singular vectors of an l x m matrix. Uses
// QR-preconditioned one-sided Jacobi on the transpose; the divide-and-conquer
// solver in Eigen 3.4 breaks down on exactly rank-deficient input.
LeftSingular left_singular(const Eigen::MatrixXd& A);

} // namespace egpc::detail

#endif // EGPC_SRC_SVD_HPP
