// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "egpc/estimation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "egpc/checksum.hpp"
#include "egpc/error.hpp"
#include "egpc/random.hpp"
#include "svd.hpp"

namespace egpc
{

namespace
{

void hash_value(Fnv1a64& h, std::uint64_t v)
{
  // Little-endian byte order regardless of host.
  std::byte bytes[8];
  for (int i = 0; i < 8; ++i) {
    bytes[i] = static_cast<std::byte>((v >> (8 * i)) & 0xffU);
  }
  h.update(bytes);
}

void hash_doubles(Fnv1a64& h, const double* data, Index count)
{
  for (Index i = 0; i < count; ++i) {
    hash_value(h, std::bit_cast<std::uint64_t>(data[i]));
  }
}

void require_training_shape(const PcaModel& model, const DataMatrix& X, const ParameterMatrix& P)
{
  if (X.rows() != model.length() || X.cols() != model.samples) {
    throw ShapeError("data matrix is " + std::to_string(X.rows()) + " x " + std::to_string(X.cols()) +
                     ", model was fitted on " + std::to_string(model.length()) + " x " +
                     std::to_string(model.samples));
  }
  if (P.cols() != X.cols()) {
    throw ShapeError("parameter matrix has " + std::to_string(P.cols()) + " columns, data matrix has " +
                     std::to_string(X.cols()));
  }
}

void require_matching_model(const ParameterMap& map, const PcaModel& model)
{
  if (map.model_ref != fingerprint(model)) {
    throw ShapeError("parameter map was fitted against a different PCA model");
  }
}

double max_abs_entry(const Eigen::MatrixXd& A)
{
  return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff();
}

} // namespace

std::uint64_t fingerprint(const PcaModel& model)
{
  Fnv1a64 h;
  hash_value(h, static_cast<std::uint64_t>(model.length()));
  hash_value(h, static_cast<std::uint64_t>(model.samples));
  hash_value(h, static_cast<std::uint64_t>(model.rank()));
  hash_doubles(h, model.mean.data(), model.mean.size());
  hash_doubles(h, model.eigenvalues.data(), model.eigenvalues.size());
  hash_doubles(h, model.eigenvectors.data(), model.eigenvectors.size());
  return h.digest();
}

ParameterMap fit_parameter_map(const PcaModel& model, const DataMatrix& X, const ParameterMatrix& P, Index r)
{
  require_training_shape(model, X, P);
  if (r < 1 || r > model.rank()) {
    throw RangeError("fit_parameter_map: r = " + std::to_string(r) + " outside [1, " +
                     std::to_string(model.rank()) + "]");
  }
  if (!(model.eigenvalues[r - 1] > rank_cutoff(model.eigenvalues[0], model.length()))) {
    throw RankError("fit_parameter_map: eigenvalue " + std::to_string(r) + " is below the rank cutoff");
  }

  const Index m = X.cols();
  ParameterMap map;
  map.r = r;
  map.param_mean = P.rowwise().mean();
  map.model_ref = fingerprint(model);

  const Eigen::MatrixXd centered_p = P.colwise() - map.param_mean;
  // Z_r^T = X_mu^T V_r, one row of scores per training sample.
  const Eigen::MatrixXd scores_t = (X.colwise() - model.mean).transpose() * model.eigenvectors.leftCols(r);
  const Eigen::VectorXd inv_lambda = model.eigenvalues.head(r).cwiseInverse();
  map.H = (centered_p * scores_t) * inv_lambda.asDiagonal();
  map.H /= static_cast<double>(m - 1);
  return map;
}

ParameterVector estimate(const ParameterMap& map, const PcaModel& model, const DesignVector& x)
{
  require_matching_model(map, model);
  return map.param_mean + map.H * project(model, x, map.r);
}

MassWeightConfig MassWeightConfig::identity(Index points)
{
  return {Eigen::VectorXd::Ones(points), Eigen::VectorXd::Ones(points)};
}

void MassWeightConfig::validate() const
{
  if (masses.size() != weights.size()) {
    throw ShapeError("mass/weight config: " + std::to_string(masses.size()) + " masses but " +
                     std::to_string(weights.size()) + " weights");
  }
  if (!masses.allFinite() || !weights.allFinite() || (masses.size() > 0 && masses.minCoeff() <= 0.0) ||
      (weights.size() > 0 && weights.minCoeff() <= 0.0)) {
    throw DomainError("mass/weight config: all masses and weights must be finite and strictly positive");
  }
}

Eigen::VectorXd MassWeightConfig::diagonal() const
{
  const Index n = masses.size();
  Eigen::VectorXd d(3 * n);
  const Eigen::VectorXd per_point = masses.cwiseProduct(weights);
  for (Index block = 0; block < 3; ++block) {
    d.segment(block * n, n) = per_point;
  }
  return d;
}

JointPcaModel fit_joint_pca(const DataMatrix& X, const ParameterMatrix& P, const MassWeightConfig& config)
{
  config.validate();
  if (3 * config.points() != X.rows()) {
    throw ShapeError("fit_joint_pca: config has " + std::to_string(config.points()) +
                     " points, design vectors have length " + std::to_string(X.rows()));
  }
  if (P.cols() != X.cols()) {
    throw ShapeError("fit_joint_pca: parameter and data matrices differ in sample count");
  }
  if (!X.allFinite() || !P.allFinite()) {
    throw NumericError("fit_joint_pca: non-finite input");
  }

  const Index l = X.rows();
  const Index m = X.cols();
  CenteredData cx = center(X);
  CenteredData cp = center(P);

  JointPcaModel jm;
  jm.config = config;
  jm.mean_x = std::move(cx.mean);
  jm.mean_p = std::move(cp.mean);
  jm.samples = m;

  // S = D^(1/2) X X^T D^(1/2) / m is symmetric and similar to C = X X^T D / m;
  // if S u = lambda u then C (D^(-1/2) u) = lambda D^(-1/2) u.
  const Eigen::VectorXd d = config.diagonal();
  const Eigen::VectorXd sqrt_d = d.cwiseSqrt();
  const Eigen::MatrixXd scaled = (sqrt_d.asDiagonal() * cx.centered) / std::sqrt(static_cast<double>(m));

  const detail::LeftSingular svd = detail::left_singular(scaled);
  const Eigen::VectorXd lambda = svd.values.array().square();

  Index q = 0;
  if (lambda.size() > 0 && lambda[0] > 0.0) {
    const double cutoff = rank_cutoff(lambda[0], l);
    const Index limit = std::min<Index>({lambda.size(), l, m - 1});
    while (q < limit && lambda[q] > cutoff) {
      ++q;
    }
  }

  jm.eigenvalues = lambda.head(q);
  jm.V = sqrt_d.cwiseInverse().asDiagonal() * svd.vectors.leftCols(q);
  jm.V.colwise().normalize();
  canonicalize_signs(jm.V);

  // C V = V Lambda must hold on every retained pair; a failure means the
  // transformed problem did not diagonalize C.
  const Eigen::MatrixXd dv = d.asDiagonal() * jm.V;
  const Eigen::MatrixXd cv = cx.centered * (cx.centered.transpose() * dv) / static_cast<double>(m);
  if (q > 0) {
    const Eigen::MatrixXd residual = cv - jm.V * jm.eigenvalues.asDiagonal();
    const double scale = jm.eigenvalues[0] * std::max(1.0, max_abs_entry(jm.V));
    if (!residual.allFinite() || max_abs_entry(residual) > 1e-8 * scale) {
      throw NumericError("fit_joint_pca: retained eigenpairs do not satisfy C V = V Lambda");
    }
  }

  // V_3 block: C_P V = H Lambda with C_P = P X^T M W / m.
  jm.H = (cp.centered * (cx.centered.transpose() * dv)) / static_cast<double>(m);
  jm.H = jm.H * jm.eigenvalues.cwiseInverse().asDiagonal();
  return jm;
}

Eigen::VectorXd joint_scores(const JointPcaModel& jmodel, const DesignVector& centered_x)
{
  if (centered_x.size() != jmodel.V.rows()) {
    throw ShapeError("joint_scores: design vector has length " + std::to_string(centered_x.size()) +
                     ", model expects " + std::to_string(jmodel.V.rows()));
  }
  const Eigen::VectorXd d = jmodel.config.diagonal();
  // V is M W-orthogonal, so V^T M W V is diagonal.
  const Eigen::MatrixXd dv = d.asDiagonal() * jmodel.V;
  const Eigen::VectorXd gram = (jmodel.V.cwiseProduct(dv)).colwise().sum().transpose();
  return (dv.transpose() * centered_x).cwiseQuotient(gram);
}

ParameterVector estimate_joint(const JointPcaModel& jmodel, const DesignVector& centered_x)
{
  return jmodel.mean_p + jmodel.H * joint_scores(jmodel, centered_x);
}

EquivalenceReport verify_equivalence(const DataMatrix& X, const ParameterMatrix& P, const MassWeightConfig& config,
                                     Index trials, double tol, std::uint64_t probe_seed)
{
  if (!(tol >= 0.0)) {
    throw DomainError("verify_equivalence: tolerance must be non-negative");
  }
  if (trials < 1) {
    throw DomainError("verify_equivalence: at least one probe is required");
  }

  EquivalenceReport report;
  report.trials = trials;
  report.tolerance = tol;

  const PcaModel model = fit_pca(X);
  const JointPcaModel jm = fit_joint_pca(X, P, config);
  report.standard_rank = model.rank();
  report.joint_rank = jm.rank();

  if (model.rank() == 0) {
    // No variance: both routes return the parameter mean.
    report.passed = jm.rank() == 0;
    return report;
  }
  const ParameterMap map = fit_parameter_map(model, X, P, model.rank());

  const Eigen::MatrixXd& vo = model.eigenvectors;
  const Eigen::MatrixXd op_standard = map.H * vo.transpose();
  const double op_scale = std::max(max_abs_entry(op_standard), 1e-300);

  const Eigen::VectorXd d = config.diagonal();
  const Eigen::MatrixXd dv = d.asDiagonal() * jm.V;
  const Eigen::VectorXd gram = (jm.V.cwiseProduct(dv)).colwise().sum().transpose();
  // Both joint operators restricted to span(V_O): (H_S A) V_O V_O^T.
  const Eigen::MatrixXd adjoint_on_span = gram.cwiseInverse().asDiagonal() * (dv.transpose() * vo);
  const Eigen::MatrixXd transpose_on_span = jm.V.transpose() * vo;
  const Eigen::MatrixXd op_joint = (jm.H * adjoint_on_span) * vo.transpose();
  const Eigen::MatrixXd op_joint_t = (jm.H * transpose_on_span) * vo.transpose();
  report.operator_deviation = max_abs_entry(op_joint - op_standard) / op_scale;
  report.transpose_deviation = max_abs_entry(op_joint_t - op_standard) / op_scale;

  const Index m = X.cols();
  const Eigen::MatrixXd centered = X.colwise() - model.mean;
  const double weight_scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (Index t = 0; t < trials; ++t) {
    CounterRng rng(probe_seed, static_cast<std::uint64_t>(t));
    Eigen::VectorXd w(m);
    for (Index j = 0; j < m; ++j) {
      w[j] = (2.0 * rng.uniform() - 1.0) * weight_scale;
    }
    const DesignVector x = model.mean + centered * w;
    const ParameterVector p_std = map.param_mean + map.H * project(model, x, map.r);
    const ParameterVector p_joint = estimate_joint(jm, x - jm.mean_x);
    const double dev = (p_joint - p_std).lpNorm<Eigen::Infinity>() / (1.0 + p_std.lpNorm<Eigen::Infinity>());
    report.estimate_deviation = std::max(report.estimate_deviation, dev);
  }

  report.passed = report.operator_deviation <= tol && report.estimate_deviation <= tol;
  return report;
}

MassWeightConfig random_mass_weight_config(Index points, std::uint64_t seed)
{
  const double lo = std::log(0.5);
  const double hi = std::log(2.0);
  MassWeightConfig c{Eigen::VectorXd(points), Eigen::VectorXd(points)};
  CounterRng masses(seed, 0);
  CounterRng weights(seed, 1);
  for (Index j = 0; j < points; ++j) {
    c.masses[j] = std::exp(lo + masses.uniform() * (hi - lo));
    c.weights[j] = std::exp(lo + weights.uniform() * (hi - lo));
  }
  return c;
}

ErrorSummary estimation_error(const ParameterMap& map, const PcaModel& model, const DataMatrix& test_X,
                              const ParameterMatrix& test_P)
{
  if (test_X.cols() == 0) {
    throw DomainError("estimation_error: empty test set");
  }
  if (test_P.cols() != test_X.cols() || test_P.rows() != map.k()) {
    throw ShapeError("estimation_error: test parameter matrix does not match the data or the map");
  }
  const Index k = map.k();
  ErrorSummary s;
  s.samples = test_X.cols();
  s.mean_abs = Eigen::VectorXd::Zero(k);
  s.max_abs = Eigen::VectorXd::Zero(k);
  require_matching_model(map, model);
  if (test_X.rows() != model.length()) {
    throw ShapeError("estimation_error: test design vectors do not match the model length");
  }
  const Eigen::MatrixXd estimates =
      (map.H * (model.eigenvectors.leftCols(map.r).transpose() * (test_X.colwise() - model.mean))).colwise() +
      map.param_mean;
  for (Index j = 0; j < test_X.cols(); ++j) {
    const Eigen::VectorXd err = (estimates.col(j) - test_P.col(j)).cwiseAbs();
    s.mean_abs += err;
    s.max_abs = s.max_abs.cwiseMax(err);
  }
  s.mean_abs /= static_cast<double>(s.samples);
  return s;
}

} // namespace egpc
