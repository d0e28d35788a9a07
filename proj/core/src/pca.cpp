// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "egpc/pca.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "egpc/error.hpp"
#include "svd.hpp"

namespace egpc
{

DesignVector vec(const PointCloud& cloud)
{
  const Index n = cloud.size();
  DesignVector v(3 * n);
  for (Index d = 0; d < 3; ++d) {
    v.segment(d * n, n) = cloud.points().col(d);
  }
  return v;
}

PointCloud unvec(const DesignVector& v)
{
  if (v.size() % 3 != 0) {
    throw ShapeError("unvec: length " + std::to_string(v.size()) + " is not divisible by 3");
  }
  const Index n = v.size() / 3;
  PointCloud cloud(n);
  for (Index d = 0; d < 3; ++d) {
    cloud.points().col(d) = v.segment(d * n, n);
  }
  return cloud;
}

CenteredData center(const DataMatrix& X)
{
  if (X.cols() < 2) {
    throw DomainError("center: at least two samples are required");
  }
  CenteredData out;
  out.mean = X.rowwise().mean();
  // Rounding in the mean would leave residue on constant rows.
  for (Index i = 0; i < X.rows(); ++i) {
    if ((X.row(i).array() == X(i, 0)).all()) {
      out.mean[i] = X(i, 0);
    }
  }
  out.centered = X.colwise() - out.mean;
  return out;
}

double rank_cutoff(double lambda_max, Index length)
{
  return lambda_max * static_cast<double>(length) * 0x1.0p-52;
}

void canonicalize_signs(Eigen::MatrixXd& vectors)
{
  for (Index j = 0; j < vectors.cols(); ++j) {
    Index best = 0;
    double best_abs = -1.0;
    for (Index i = 0; i < vectors.rows(); ++i) {
      const double a = std::abs(vectors(i, j));
      if (a > best_abs) {
        best_abs = a;
        best = i;
      }
    }
    if (vectors.rows() > 0 && vectors(best, j) < 0.0) {
      vectors.col(j) = -vectors.col(j);
    }
  }
}

PcaModel fit_pca(const DataMatrix& X)
{
  if (X.cols() < 2) {
    throw DomainError("fit_pca: at least two samples are required, got " + std::to_string(X.cols()));
  }
  if (X.rows() < 1) {
    throw ShapeError("fit_pca: empty design vectors");
  }
  if (!X.allFinite()) {
    throw NumericError("fit_pca: data matrix contains non-finite entries");
  }

  const Index l = X.rows();
  const Index m = X.cols();
  CenteredData c = center(X);

  PcaModel model;
  model.mean = std::move(c.mean);
  model.samples = m;

  const detail::LeftSingular svd = detail::left_singular(c.centered);
  const Eigen::VectorXd lambda = svd.values.array().square() / static_cast<double>(m - 1);

  Index q = 0;
  if (lambda.size() > 0 && lambda[0] > 0.0) {
    const double cutoff = rank_cutoff(lambda[0], l);
    const Index limit = std::min<Index>({lambda.size(), l, m - 1});
    while (q < limit && lambda[q] > cutoff) {
      ++q;
    }
  }

  model.eigenvalues = lambda.head(q);
  model.eigenvectors = svd.vectors.leftCols(q);
  canonicalize_signs(model.eigenvectors);
  return model;
}

ScoreVector project(const PcaModel& model, const DesignVector& x, Index r)
{
  if (x.size() != model.length()) {
    throw ShapeError("project: design vector has length " + std::to_string(x.size()) + ", model expects " +
                     std::to_string(model.length()));
  }
  if (r < 0 || r > model.rank()) {
    throw RangeError("project: r = " + std::to_string(r) + " outside [0, " + std::to_string(model.rank()) + "]");
  }
  return model.eigenvectors.leftCols(r).transpose() * (x - model.mean);
}

DesignVector reconstruct(const PcaModel& model, const ScoreVector& y)
{
  if (y.size() > model.rank()) {
    throw RangeError("reconstruct: " + std::to_string(y.size()) + " scores for a rank-" +
                     std::to_string(model.rank()) + " model");
  }
  return model.mean + model.eigenvectors.leftCols(y.size()) * y;
}

double crv(const PcaModel& model, Index t)
{
  const Index q = model.rank();
  if (q == 0 || !(model.eigenvalues.sum() > 0.0)) {
    throw UndefinedMeasureError("crv: the model has no variance");
  }
  if (t < 1 || t > q) {
    throw RangeError("crv: t = " + std::to_string(t) + " outside [1, " + std::to_string(q) + "]");
  }
  // Same summation order for numerator and denominator so that CRV_q == 1.
  double partial = 0.0;
  double total = 0.0;
  for (Index i = 0; i < q; ++i) {
    total += model.eigenvalues[i];
    if (i < t) {
      partial = total;
    }
  }
  return partial / total;
}

Index min_components(const PcaModel& model, double threshold)
{
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw DomainError("min_components: threshold must lie in (0, 1]");
  }
  const Index q = model.rank();
  if (q == 0 || !(model.eigenvalues.sum() > 0.0)) {
    throw UndefinedMeasureError("min_components: the model has no variance");
  }
  double total = 0.0;
  for (Index i = 0; i < q; ++i) {
    total += model.eigenvalues[i];
  }
  double partial = 0.0;
  for (Index t = 1; t <= q; ++t) {
    partial += model.eigenvalues[t - 1];
    if (partial / total >= threshold) {
      return t;
    }
  }
  return q;
}

} // namespace egpc
