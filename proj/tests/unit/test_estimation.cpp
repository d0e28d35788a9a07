// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "egpc/dataset.hpp"
#include "egpc/error.hpp"
#include "egpc/estimation.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace egpc
{
namespace
{

using testing::Gen;
using testing::max_abs;

TEST(ParameterMap, OneParameterLinearClassByHand)
{
  // x = p u for a fixed unit u; the regression coefficient is +-1.
  Eigen::VectorXd u(6);
  u << 1, -2, 0, 3, 1, 1;
  u.normalize();
  const Eigen::Vector3d p(1.0, 2.0, 4.0);
  const DataMatrix X = u * p.transpose();
  const ParameterMatrix P = p.transpose();

  const auto model = fit_pca(X);
  ASSERT_EQ(model.rank(), 1);
  const auto map = fit_parameter_map(model, X, P, 1);
  EXPECT_NEAR(std::abs(map.H(0, 0)), 1.0, 1e-12);
  EXPECT_NEAR(map.param_mean[0], 7.0 / 3.0, 1e-15);
  for (Index j = 0; j < 3; ++j) {
    EXPECT_NEAR(estimate(map, model, X.col(j))[0], p[j], 1e-9);
  }
}

TEST(ParameterMap, ZeroParametersGiveZeroMap)
{
  Gen gen(4);
  const DataMatrix X = gen.matrix(9, 12);
  const auto model = fit_pca(X);
  const auto map = fit_parameter_map(model, X, ParameterMatrix::Zero(2, 12), 3);
  EXPECT_EQ(max_abs(map.H), 0.0);
  EXPECT_EQ(max_abs(estimate(map, model, gen.matrix(9, 1))), 0.0);
}

TEST(ParameterMap, RejectsBadComponentCountsAndForeignModels)
{
  Gen gen(5);
  const DataMatrix X = gen.low_rank(12, 10, 2);
  const ParameterMatrix P = gen.matrix(2, 10);
  const auto model = fit_pca(X);
  ASSERT_EQ(model.rank(), 2);
  EXPECT_THROW(fit_parameter_map(model, X, P, 0), RangeError);
  EXPECT_THROW(fit_parameter_map(model, X, P, 3), RangeError);
  EXPECT_THROW(fit_parameter_map(model, X, gen.matrix(2, 9), 1), ShapeError);

  const auto map = fit_parameter_map(model, X, P, 2);
  const auto other = fit_pca(gen.matrix(12, 10));
  EXPECT_THROW(estimate(map, other, X.col(0)), ShapeError);
  EXPECT_THROW(estimate(map, model, DesignVector::Zero(9)), ShapeError);
}

TEST(ParameterMap, MeanMapsToParameterMean)
{
  Gen gen(6);
  const DataMatrix X = gen.matrix(15, 30);
  const ParameterMatrix P = gen.matrix(3, 30);
  const auto model = fit_pca(X);
  const auto map = fit_parameter_map(model, X, P, 5);
  EXPECT_TRUE(identical(estimate(map, model, model.mean), map.param_mean));
}

TEST(ParameterMap, SimplifiedHelixTrainingSamplesReproduceTheirParameters)
{
  const auto ds = build_dataset(class_spec("simplified_helix"), 300, 21);
  const DataMatrix X = ds.data_matrix();
  const ParameterMatrix P = ds.parameter_matrix();
  const auto model = fit_pca(X);
  const auto map = fit_parameter_map(model, X, P, 2);
  for (Index j = 0; j < X.cols(); j += 17) {
    ASSERT_LT(max_abs(estimate(map, model, X.col(j)) - P.col(j)), 1e-8) << "sample " << j;
  }
}

TEST(ParameterMap, RectangleTestErrorAtParameterCount)
{
  const auto ds = build_dataset(class_spec("rectangle"), 2000, 7);
  const auto parts = split(ds, 0.9, 7);
  const DataMatrix X = ds.data_matrix(parts.train);
  const auto model = fit_pca(X);
  const auto map = fit_parameter_map(model, X, ds.parameter_matrix(parts.train), 2);
  const auto err = estimation_error(map, model, ds.data_matrix(parts.test), ds.parameter_matrix(parts.test));
  EXPECT_EQ(err.samples, 200);
  EXPECT_LT(err.mean_abs.maxCoeff(), 1e-8);
}

TEST(EstimationError, ZeroMapErrorMatchesUniformExpectation)
{
  const auto ds = build_dataset(class_spec("rectangle"), 2000, 13);
  const auto parts = split(ds, 0.9, 13);
  const DataMatrix X = ds.data_matrix(parts.train);
  const auto model = fit_pca(X);
  auto map = fit_parameter_map(model, X, ds.parameter_matrix(parts.train), 2);
  map.H.setZero();
  const auto err = estimation_error(map, model, ds.data_matrix(parts.test), ds.parameter_matrix(parts.test));
  for (Index j = 0; j < 2; ++j) {
    const double expected = oracle::expected_abs_deviation(0.0, 10.0, map.param_mean[j]);
    EXPECT_NEAR(err.mean_abs[j], expected, 0.1 * expected) << "parameter " << j;
    EXPECT_NEAR(expected, 2.5, 0.05);
  }
}

TEST(EstimationError, SingleSampleAndEmptySet)
{
  Gen gen(8);
  const DataMatrix X = gen.matrix(6, 10);
  const ParameterMatrix P = gen.matrix(2, 10);
  const auto model = fit_pca(X);
  const auto map = fit_parameter_map(model, X, P, 2);
  const DesignVector x = gen.matrix(6, 1);
  const ParameterVector p = gen.matrix(2, 1);
  const auto err = estimation_error(map, model, x, p);
  const Eigen::VectorXd expected = (estimate(map, model, x) - p).cwiseAbs();
  EXPECT_TRUE(identical(err.mean_abs, expected));
  EXPECT_TRUE(identical(err.max_abs, expected));
  EXPECT_THROW(estimation_error(map, model, DataMatrix(6, 0), ParameterMatrix(2, 0)), DomainError);
}

// Random training problem: tall low-rank, wide and full-rank shapes.
struct Problem
{
  DataMatrix X;
  ParameterMatrix P;
};

Problem random_problem(Gen& gen, int c)
{
  const Index l = 3 * gen.integer(1, 16);
  const Index m = gen.integer(3, 40);
  const Index k = gen.integer(1, 3);
  Problem pr;
  pr.X = (c % 2 == 0) ? gen.low_rank(l, m, gen.integer(1, 5)) : gen.matrix(l, m, gen.uniform(0.5, 5.0));
  pr.P = gen.matrix(k, m, 10.0);
  return pr;
}

TEST(EstimationProperty, FullMapEqualsDensePseudoinverse)
{
  for (int c = 0; c < 100; ++c) {
    Gen gen(0xe57 + static_cast<std::uint64_t>(c));
    const Problem pr = random_problem(gen, c);
    const auto model = fit_pca(pr.X);
    if (model.rank() == 0) {
      continue;
    }
    const auto map = fit_parameter_map(model, pr.X, pr.P, model.rank());
    const Eigen::MatrixXd op = map.H * model.eigenvectors.transpose();
    const Eigen::MatrixXd ref = oracle::pseudoinverse_operator(pr.X, pr.P);
    ASSERT_LE(max_abs(op - ref), 1e-9 * std::max(1.0, max_abs(ref))) << "case " << c;
  }
}

TEST(EstimationProperty, TruncatedMapEqualsCovarianceRoute)
{
  for (int c = 0; c < 100; ++c) {
    Gen gen(0x7c + static_cast<std::uint64_t>(c));
    const Problem pr = random_problem(gen, 1); // full rank: distinct eigenvalues
    const auto model = fit_pca(pr.X);
    const Index r = gen.integer(1, model.rank());
    const auto map = fit_parameter_map(model, pr.X, pr.P, r);
    const Eigen::MatrixXd op = map.H * model.eigenvectors.leftCols(r).transpose();
    const Eigen::MatrixXd ref = oracle::truncated_operator(pr.X, pr.P, r);
    ASSERT_LE(max_abs(op - ref), 1e-9 * std::max(1.0, max_abs(ref))) << "case " << c << " r=" << r;
  }
}

TEST(EstimationProperty, ShiftInvariance)
{
  for (int c = 0; c < 50; ++c) {
    Gen gen(0x5f + static_cast<std::uint64_t>(c));
    const Problem pr = random_problem(gen, c);
    const Eigen::VectorXd shift = gen.matrix(pr.X.rows(), 1, 20.0);
    const DataMatrix shifted = pr.X.colwise() + shift;
    const auto a = fit_pca(pr.X);
    const auto b = fit_pca(shifted);
    ASSERT_EQ(a.rank(), b.rank());
    if (a.rank() == 0) {
      continue;
    }
    const auto map_a = fit_parameter_map(a, pr.X, pr.P, a.rank());
    const auto map_b = fit_parameter_map(b, shifted, pr.P, b.rank());
    const DesignVector probe = gen.matrix(pr.X.rows(), 1, 5.0);
    const ParameterVector pa = estimate(map_a, a, probe);
    const ParameterVector pb = estimate(map_b, b, probe + shift);
    ASSERT_LE(max_abs(pa - pb), 1e-9 * (1.0 + max_abs(pa))) << "case " << c;
  }
}

TEST(EstimationProperty, AffineConsistency)
{
  for (int c = 0; c < 50; ++c) {
    Gen gen(0xaf + static_cast<std::uint64_t>(c));
    const Problem pr = random_problem(gen, c);
    const auto model = fit_pca(pr.X);
    if (model.rank() == 0) {
      continue;
    }
    const auto map = fit_parameter_map(model, pr.X, pr.P, gen.integer(1, model.rank()));
    const DesignVector x = gen.matrix(pr.X.rows(), 1, 5.0);
    const double alpha = gen.uniform(-3.0, 3.0);
    const ParameterVector lhs = estimate(map, model, model.mean + alpha * (x - model.mean)) - map.param_mean;
    const ParameterVector rhs = alpha * (estimate(map, model, x) - map.param_mean);
    ASSERT_LE(max_abs(lhs - rhs), 1e-9 * (1.0 + max_abs(rhs))) << "case " << c;
  }
}

TEST(MassWeightConfig, ValidationAndDiagonalLayout)
{
  MassWeightConfig c{Eigen::Vector2d(1.0, 2.0), Eigen::Vector2d(3.0, 0.5)};
  EXPECT_NO_THROW(c.validate());
  Eigen::VectorXd expected(6);
  expected << 3, 1, 3, 1, 3, 1;
  EXPECT_TRUE(identical(c.diagonal(), expected));

  c.masses[1] = 0.0;
  EXPECT_THROW(c.validate(), DomainError);
  c.masses[1] = -1.0;
  EXPECT_THROW(c.validate(), DomainError);
  c.masses[1] = std::nan("");
  EXPECT_THROW(c.validate(), DomainError);
  MassWeightConfig uneven{Eigen::Vector2d(1.0, 1.0), Eigen::Vector3d(1.0, 1.0, 1.0)};
  EXPECT_THROW(uneven.validate(), ShapeError);
}

TEST(MassWeightConfig, RandomConfigsStayInRange)
{
  const auto a = random_mass_weight_config(200, 9);
  EXPECT_TRUE(a == random_mass_weight_config(200, 9));
  EXPECT_FALSE(a == random_mass_weight_config(200, 10));
  for (const auto* v : {&a.masses, &a.weights}) {
    EXPECT_GE(v->minCoeff(), 0.5);
    EXPECT_LT(v->maxCoeff(), 2.0);
  }
}

TEST(JointPca, IdentityConfigRescalesTheStandardSpectrum)
{
  Gen gen(11);
  const DataMatrix X = gen.low_rank(24, 30, 4);
  const ParameterMatrix P = gen.matrix(2, 30);
  const auto model = fit_pca(X);
  const auto jm = fit_joint_pca(X, P, MassWeightConfig::identity(8));
  ASSERT_EQ(jm.rank(), model.rank());
  const double scale = 29.0 / 30.0;
  EXPECT_LE(max_abs(jm.eigenvalues - scale * model.eigenvalues), 1e-12 * model.eigenvalues[0]);
  EXPECT_LE(max_abs(jm.V - model.eigenvectors), 1e-10);
}

TEST(JointPca, ZeroParametersGiveZeroBlockAndMeanEstimate)
{
  Gen gen(12);
  const DataMatrix X = gen.matrix(12, 20);
  const auto jm = fit_joint_pca(X, ParameterMatrix::Zero(3, 20), gen.config(4));
  EXPECT_EQ(max_abs(jm.H), 0.0);

  const ParameterMatrix P = gen.matrix(3, 20);
  const auto jp = fit_joint_pca(X, P, gen.config(4));
  EXPECT_TRUE(identical(estimate_joint(jp, DesignVector::Zero(12)), jp.mean_p));
}

TEST(JointPca, RejectsMismatchedInputs)
{
  Gen gen(13);
  const DataMatrix X = gen.matrix(12, 20);
  EXPECT_THROW(fit_joint_pca(X, gen.matrix(2, 20), gen.config(5)), ShapeError);
  EXPECT_THROW(fit_joint_pca(X, gen.matrix(2, 19), gen.config(4)), ShapeError);
  auto bad = gen.config(4);
  bad.weights[2] = 0.0;
  EXPECT_THROW(fit_joint_pca(X, gen.matrix(2, 20), bad), DomainError);
  const auto jm = fit_joint_pca(X, gen.matrix(2, 20), gen.config(4));
  EXPECT_THROW(estimate_joint(jm, DesignVector::Zero(9)), ShapeError);
}

TEST(JointPcaProperty, EnlargedMatrixSpectrumAndBlockStructure)
{
  for (int c = 0; c < 60; ++c) {
    Gen gen(0xb10c + static_cast<std::uint64_t>(c));
    const Index l = 3 * gen.integer(1, 10);
    const Index k = gen.integer(1, 3);
    const Index m = gen.integer(3, 50);
    const DataMatrix X = (c % 2 == 0) ? gen.low_rank(l, m, gen.integer(1, 4)) : gen.matrix(l, m);
    const ParameterMatrix P = gen.matrix(k, m, 10.0);
    const auto config = gen.config(l / 3);
    const auto jm = fit_joint_pca(X, P, config);
    const Index q = jm.rank();
    SCOPED_TRACE(::testing::Message() << "case " << c << " l=" << l << " k=" << k << " m=" << m << " q=" << q);
    ASSERT_GE(q, 1);

    const Eigen::MatrixXd CL = oracle::enlarged_matrix(X, P, config);
    const auto spectrum = oracle::general_eigenvalues(CL);
    const double top = jm.eigenvalues[0];
    for (Index i = 0; i < q; ++i) {
      ASSERT_NEAR(spectrum[static_cast<std::size_t>(i)].real(), jm.eigenvalues[i], 1e-9 * jm.eigenvalues[i]);
      ASSERT_NEAR(spectrum[static_cast<std::size_t>(i)].imag(), 0.0, 1e-9 * top);
    }
    Index zeros = 0;
    for (std::size_t i = static_cast<std::size_t>(q); i < spectrum.size(); ++i) {
      zeros += std::abs(spectrum[i]) <= 1e-9 * top ? 1 : 0;
    }
    ASSERT_EQ(zeros, k + (l - q));

    // Each stacked (V, H) column is an eigenvector of C^L.
    for (Index i = 0; i < q; ++i) {
      Eigen::VectorXd v(l + k);
      v << jm.V.col(i), jm.H.col(i);
      ASSERT_LE(max_abs(CL * v - jm.eigenvalues[i] * v), 1e-9 * top * std::max(1.0, max_abs(v)));
    }
  }
}

TEST(JointPcaProperty, ScoresAreTheWeightedProjectionCoefficients)
{
  for (int c = 0; c < 40; ++c) {
    Gen gen(0x5c0 + static_cast<std::uint64_t>(c));
    const DataMatrix X = gen.low_rank(3 * gen.integer(2, 10), gen.integer(5, 30), gen.integer(1, 3));
    const auto jm = fit_joint_pca(X, gen.matrix(2, X.cols()), gen.config(X.rows() / 3));
    const Eigen::VectorXd w = gen.matrix(jm.rank(), 1);
    // A vector inside span(V) returns its own coefficients.
    ASSERT_LE(max_abs(joint_scores(jm, jm.V * w) - w), 1e-9 * (1.0 + max_abs(w))) << "case " << c;
  }
}

// Joint route formed explicitly: general eigendecomposition of X X^T M W / m
// and the operator H V^-1 of the square, invertible eigenvector matrix.
Eigen::MatrixXd explicit_joint_operator(const DataMatrix& X, const ParameterMatrix& P, const MassWeightConfig& config)
{
  const Eigen::MatrixXd Xc = oracle::centered(X);
  const Eigen::MatrixXd Pc = oracle::centered(P);
  const double m = static_cast<double>(X.cols());
  const Eigen::MatrixXd D = config.diagonal().asDiagonal();
  Eigen::EigenSolver<Eigen::MatrixXd> es(Xc * Xc.transpose() * D / m);
  const Eigen::MatrixXd V = es.eigenvectors().real();
  const Eigen::VectorXd lambda = es.eigenvalues().real();
  const Eigen::MatrixXd H = Pc * Xc.transpose() * D * V * lambda.cwiseInverse().asDiagonal() / m;
  return H * V.inverse();
}

TEST(Equivalence, SmallInstanceAgainstExplicitOperators)
{
  for (int c = 0; c < 20; ++c) {
    Gen gen(0xe9 + static_cast<std::uint64_t>(c));
    const DataMatrix X = gen.matrix(12, 40);
    const ParameterMatrix P = gen.matrix(2, 40, 10.0);
    const auto config = gen.config(4);

    const Eigen::MatrixXd standard = oracle::pseudoinverse_operator(X, P);
    const Eigen::MatrixXd joint = explicit_joint_operator(X, P, config);
    const double scale = max_abs(standard);
    ASSERT_LE(max_abs(joint - standard), 1e-10 * scale) << "oracles disagree, case " << c;

    const auto report = verify_equivalence(X, P, config, 100, 1e-10, static_cast<std::uint64_t>(c));
    EXPECT_TRUE(report.passed) << "case " << c << " op=" << report.operator_deviation
                               << " est=" << report.estimate_deviation;
    EXPECT_EQ(report.standard_rank, 12);
    EXPECT_EQ(report.joint_rank, 12);

    // The library's joint operator, applied to unit vectors, matches the
    // explicit one.
    const auto jm = fit_joint_pca(X, P, config);
    Eigen::MatrixXd lib(2, 12);
    for (Index i = 0; i < 12; ++i) {
      lib.col(i) = jm.H * joint_scores(jm, Eigen::VectorXd::Unit(12, i));
    }
    ASSERT_LE(max_abs(lib - joint), 1e-10 * scale) << "case " << c;
  }
}

TEST(Equivalence, IdentityConfigAgreesToRoundOff)
{
  Gen gen(14);
  const DataMatrix X = gen.low_rank(30, 50, 3);
  const ParameterMatrix P = gen.matrix(2, 50);
  const auto report = verify_equivalence(X, P, MassWeightConfig::identity(10), 50, 1e-10);
  EXPECT_TRUE(report.passed);
  EXPECT_LT(report.operator_deviation, 1e-12);
}

TEST(Equivalence, RectangleWithRandomConfigPasses)
{
  const auto ds = build_dataset(class_spec("rectangle"), 400, 3);
  const auto report = verify_equivalence(ds.data_matrix(), ds.parameter_matrix(),
                                         random_mass_weight_config(200, 3), 100, 1e-10, 3);
  EXPECT_TRUE(report.passed) << "op=" << report.operator_deviation << " est=" << report.estimate_deviation;
  EXPECT_EQ(report.standard_rank, 2);
  EXPECT_EQ(report.joint_rank, 2);
}

TEST(Equivalence, ConstantDataAndArgumentChecks)
{
  const DataMatrix X = Eigen::VectorXd::LinSpaced(6, 1.0, 6.0).replicate(1, 5);
  Gen gen(15);
  const auto report = verify_equivalence(X, gen.matrix(2, 5), gen.config(2), 10, 1e-10);
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(report.standard_rank, 0);
  EXPECT_THROW(verify_equivalence(X, gen.matrix(2, 5), gen.config(2), 0, 1e-10), DomainError);
  EXPECT_THROW(verify_equivalence(X, gen.matrix(2, 5), gen.config(2), 10, -1.0), DomainError);
}

} // namespace
} // namespace egpc
