// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EGPC_ESTIMATION_HPP
#define EGPC_ESTIMATION_HPP

#include <cstdint>

#include <Eigen/Core>

#include "egpc/geometry.hpp"
#include "egpc/pca.hpp"

namespace egpc
{

// k x m matrix whose columns are the parameter vectors paired with a DataMatrix.
using ParameterMatrix = Eigen::MatrixXd;

// Content hash of a fitted model; stored in parameter maps so that a map is
// never applied to a model it was not fitted against.
std::uint64_t fingerprint(const PcaModel& model);

//
// Linear map from PCA scores to design parameters:
//   p = param_mean + H V_r^T (x - mean_x).
//
struct ParameterMap
{
  Eigen::MatrixXd H; // k x r
  ParameterVector param_mean;
  Index r = 0;
  std::uint64_t model_ref = 0;

  Index k() const noexcept { return H.rows(); }

  friend bool operator==(const ParameterMap& a, const ParameterMap& b)
  {
    return a.r == b.r && a.model_ref == b.model_ref && identical(a.H, b.H) && identical(a.param_mean, b.param_mean);
  }
};

// H = P_mu X_mu^T V_r Lambda_r^-1 / (m - 1), the pseudoinverse solution of
// P_mu = H V_r^T X_mu restricted to the top r components. X must be the
// training matrix of model. Throws RangeError when r exceeds the stored
// component count and RankError when lambda_r is not above the rank cutoff.
ParameterMap fit_parameter_map(const PcaModel& model, const DataMatrix& X, const ParameterMatrix& P, Index r);

// param_mean + H project(model, x, r). Throws ShapeError when the map was
// fitted against a different model.
ParameterVector estimate(const ParameterMap& map, const PcaModel& model, const DesignVector& x);

//
// Per-point masses and weights of the joint PCA. The l x l matrices M and W
// repeat each entry once per coordinate block.
//
struct MassWeightConfig
{
  Eigen::VectorXd masses;
  Eigen::VectorXd weights;

  static MassWeightConfig identity(Index points);

  Index points() const noexcept { return masses.size(); }

  // Throws DomainError for non-positive or non-finite entries and ShapeError
  // when the two vectors differ in length.
  void validate() const;

  // Diagonal of M W as a length-3n vector in design-vector layout.
  Eigen::VectorXd diagonal() const;

  friend bool operator==(const MassWeightConfig& a, const MassWeightConfig& b)
  {
    return identical(a.masses, b.masses) && identical(a.weights, b.weights);
  }
};

//
// Joint PCA on stacked (geometry, parameter) vectors. Only the non-trivial
// blocks of the enlarged eigenvector matrix are stored: the geometry block V
// and the parameter block H. The remaining blocks vanish identically.
//
struct JointPcaModel
{
  Eigen::MatrixXd V;           // l x q, unit-length columns
  Eigen::MatrixXd H;           // k x q
  Eigen::VectorXd eigenvalues; // of C = X X^T M W / m, descending
  MassWeightConfig config;
  DesignVector mean_x;
  ParameterVector mean_p;
  Index samples = 0;

  Index rank() const noexcept { return eigenvalues.size(); }

  friend bool operator==(const JointPcaModel& a, const JointPcaModel& b)
  {
    return a.samples == b.samples && a.config == b.config && identical(a.V, b.V) && identical(a.H, b.H) &&
           identical(a.eigenvalues, b.eigenvalues) && identical(a.mean_x, b.mean_x) && identical(a.mean_p, b.mean_p);
  }
};

// Centres X and P, then solves X X^T M W V = m V Lambda through the symmetric
// similarity transform with (M W)^(1/2), and sets H = P X^T M W V Lambda^-1 / m.
// The enlarged (l + k) square matrices are never formed.
JointPcaModel fit_joint_pca(const DataMatrix& X, const ParameterMatrix& P, const MassWeightConfig& config);

// Latent coordinates of a centred design vector: the coefficients of its
// M W-orthogonal projection onto span(V), (V^T M W V)^-1 V^T M W x. For
// M W = I this reduces to V^T x.
Eigen::VectorXd joint_scores(const JointPcaModel& jmodel, const DesignVector& centered_x);

// mean_p + H joint_scores(centered_x). The input is centred with mean_x.
ParameterVector estimate_joint(const JointPcaModel& jmodel, const DesignVector& centered_x);

struct EquivalenceReport
{
  // max over probes of |p_joint - p_std|_inf / (1 + |p_std|_inf)
  double estimate_deviation = 0.0;
  // max entry of (H_S V_S^* - H_O V_O^T) V_O V_O^T over the largest entry of
  // H_O V_O^T, where V_S^* is the M W-adjoint used by estimate_joint.
  double operator_deviation = 0.0;
  // The same deviation when the joint route projects with the Euclidean
  // transpose V_S^T. Diagnostic only; does not enter the pass flag.
  double transpose_deviation = 0.0;
  Index standard_rank = 0;
  Index joint_rank = 0;
  Index trials = 0;
  double tolerance = 0.0;
  bool passed = false;
};

// Fits both routes on (X, P) and compares them on `trials` probe vectors drawn
// from the affine span of the training data. Probes are a pure function of
// probe_seed. Throws DomainError for tol < 0 or trials < 1.
EquivalenceReport verify_equivalence(const DataMatrix& X, const ParameterMatrix& P, const MassWeightConfig& config,
                                     Index trials, double tol, std::uint64_t probe_seed = 0);

// Random strictly positive configuration, masses and weights log-uniform in
// [0.5, 2).
MassWeightConfig random_mass_weight_config(Index points, std::uint64_t seed);

struct ErrorSummary
{
  Eigen::VectorXd mean_abs; // per parameter
  Eigen::VectorXd max_abs;  // per parameter
  Index samples = 0;
};

// Per-parameter mean and max of |estimate(x_j) - p_j| over the columns of
// (test_X, test_P). Throws DomainError on an empty test set.
ErrorSummary estimation_error(const ParameterMap& map, const PcaModel& model, const DataMatrix& test_X,
                              const ParameterMatrix& test_P);

} // namespace egpc

#endif // EGPC_ESTIMATION_HPP
