// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EGPC_GEOMETRY_HPP
#define EGPC_GEOMETRY_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace egpc
{

using Index = Eigen::Index;

// The k generating design parameters of one geometry instance.
using ParameterVector = Eigen::VectorXd;

// Shape-checked exact equality of two dense Eigen objects.
template <class A, class B>
bool identical(const Eigen::DenseBase<A>& a, const Eigen::DenseBase<B>& b)
{
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.derived().array() == b.derived().array()).all();
}

// Half-open sampling interval [lo, hi).
struct Interval
{
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const noexcept { return v >= lo && v < hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class GeometryKind : std::uint32_t
{
  Rectangle = 1,
  Cuboid = 2,
  Helix = 3,
  SimplifiedHelix = 4,
  FanBlade = 5,
  Tube = 6,
};

//
// Definition of a geometry class: its generator, parameter names and sampling
// ranges, and the point count shared by every instance.
//
struct GeometryClassSpec
{
  std::string name;
  GeometryKind kind = GeometryKind::Rectangle;
  std::vector<std::string> parameter_names;
  std::vector<Interval> ranges;
  Index n_points = 200;
  std::vector<std::pair<std::string, double>> fixed_constants;

  Index k() const noexcept { return static_cast<Index>(ranges.size()); }

  // Throws DomainError when the spec violates its invariants (range count,
  // degenerate interval, point count).
  void validate() const;

  friend bool operator==(const GeometryClassSpec&, const GeometryClassSpec&) = default;
};

// Names accepted by class_spec(), in canonical order: the three classes that
// keep their shape under centering first, then the three that do not.
const std::vector<std::string>& class_names();

// Built-in class definition. Throws DomainError for an unknown name.
GeometryClassSpec class_spec(std::string_view name, Index n_points = 200);

//
// n x 3 point cloud. Row i is point i; the row index carries the
// correspondence between instances of one class.
//
class PointCloud
{
public:
  using Points = Eigen::Matrix<double, Eigen::Dynamic, 3>;

  PointCloud() = default;
  explicit PointCloud(Index n) : points_(Points::Zero(n, 3)) {}
  explicit PointCloud(Points points) : points_(std::move(points)) {}

  Index size() const noexcept { return points_.rows(); }
  const Points& points() const noexcept { return points_; }
  Points& points() noexcept { return points_; }

  auto row(Index i) const { return points_.row(i); }
  auto row(Index i) { return points_.row(i); }

  bool all_finite() const { return points_.allFinite(); }

  friend bool operator==(const PointCloud& a, const PointCloud& b)
  {
    return identical(a.points_, b.points_);
  }

private:
  Points points_;
};

struct GeometrySample
{
  PointCloud cloud;
  ParameterVector params;
};

// count parameter vectors, coordinate j of draw i drawn uniformly from
// spec.ranges[j]. The draw is a pure function of (seed, i, j).
std::vector<ParameterVector> sample_parameters(const GeometryClassSpec& spec, std::uint64_t seed, Index count);

// Perimeter of [-a/2, a/2] x [-b/2, b/2] x {0}; n/4 points per edge, running
// counter-clockwise from the corner (-a/2, -b/2). n must be divisible by 4.
PointCloud generate_rectangle(double a, double b, Index n);

// Surface of the origin-centred box with edge lengths (a, b, c). Points are a
// fixed unit-cube template (cell centres of a per-face grid) scaled per axis.
PointCloud generate_cuboid(double a, double b, double c, Index n);

// Point i = (r cos(2 pi turns s_i), r sin(2 pi turns s_i), h s_i) with
// s_i = i / (n - 1).
PointCloud generate_helix(double r, double h, double turns, Index n);

// generate_helix with five turns.
PointCloud generate_simplified_helix(double r, double h, Index n);

// Loft from a circle to a rounded rectangle. Parameter order is given by
// class_spec("tube").parameter_names.
PointCloud generate_tube(const ParameterVector& params, Index n);

// Twisted, swept and leaned blade with a cambered profile. Parameter order is
// given by class_spec("fan_blade").parameter_names.
PointCloud generate_fan_blade(const ParameterVector& params, Index n);

// Dispatch on spec.kind. Does not require params to lie inside the sampling
// ranges, only inside the generator's domain.
PointCloud generate(const GeometryClassSpec& spec, const ParameterVector& params);

// Number of rings/sections used by the lofted generators for n points.
Index section_count(Index n);

} // namespace egpc

#endif // EGPC_GEOMETRY_HPP
