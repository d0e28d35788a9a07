// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EGPC_PCA_HPP
#define EGPC_PCA_HPP

#include <Eigen/Core>

#include "egpc/geometry.hpp"

namespace egpc
{

// Column-stacked point cloud (x_1..x_n, y_1..y_n, z_1..z_n), length l = 3n.
using DesignVector = Eigen::VectorXd;

// l x m matrix whose columns are design vectors of one class.
using DataMatrix = Eigen::MatrixXd;

// Principal component scores of one design vector.
using ScoreVector = Eigen::VectorXd;

DesignVector vec(const PointCloud& cloud);

// Throws ShapeError when the length is not divisible by 3.
PointCloud unvec(const DesignVector& v);

struct CenteredData
{
  DataMatrix centered;
  DesignVector mean;
};

// Subtracts the row means. Requires at least two columns. Constant rows
// centre to exact zeros.
CenteredData center(const DataMatrix& X);

//
// Fitted standard PCA. Only the components whose eigenvalue lies above the
// rank cutoff are kept; q = rank() may be zero for constant data.
//
struct PcaModel
{
  DesignVector mean;
  Eigen::VectorXd eigenvalues;  // descending, non-negative
  Eigen::MatrixXd eigenvectors; // l x q, orthonormal columns
  Index samples = 0;            // m

  Index length() const noexcept { return mean.size(); }
  Index rank() const noexcept { return eigenvalues.size(); }

  friend bool operator==(const PcaModel& a, const PcaModel& b)
  {
    return a.samples == b.samples && identical(a.mean, b.mean) && identical(a.eigenvalues, b.eigenvalues) &&
           identical(a.eigenvectors, b.eigenvectors);
  }
};

// Eigenvalues at or below lambda_max * l * 2^-52 are treated as zero.
double rank_cutoff(double lambda_max, Index length);

// Flips each column so that its largest-magnitude entry is positive (lowest
// index wins among equal magnitudes).
void canonicalize_signs(Eigen::MatrixXd& vectors);

// Thin SVD of the centred data; lambda_i = sigma_i^2 / (m - 1). Throws
// NumericError on non-finite input and DomainError for m < 2.
PcaModel fit_pca(const DataMatrix& X);

// First r scores <v_i, x - mean>. Throws RangeError when r > rank() and
// ShapeError on a length mismatch.
ScoreVector project(const PcaModel& model, const DesignVector& x, Index r);

// mean + sum_i y_i v_i over the given scores.
DesignVector reconstruct(const PcaModel& model, const ScoreVector& y);

// Cumulative ratio of total variation of the first t eigenvalues.
double crv(const PcaModel& model, Index t);

// Smallest t with crv(model, t) >= threshold.
Index min_components(const PcaModel& model, double threshold);

} // namespace egpc

#endif // EGPC_PCA_HPP
