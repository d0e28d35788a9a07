// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#include "egpc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "egpc/error.hpp"
#include "egpc/random.hpp"

namespace egpc
{

namespace
{

constexpr double kPi = std::numbers::pi;
constexpr double kSimplifiedHelixTurns = 5.0;

// Largest value of sqrt(u) (1 - u) on [0, 1], attained at u = 1/3.
constexpr double kThicknessShapeMax = 0.38490017945975052;

void require_points(Index n, Index minimum, const char* what)
{
  if (n < minimum) {
    throw DomainError(std::string(what) + ": point count " + std::to_string(n) + " is below " +
                      std::to_string(minimum));
  }
}

void require_non_negative(double v, const char* what)
{
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be finite and non-negative, got " + std::to_string(v));
  }
}

void require_positive(double v, const char* what)
{
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be finite and positive, got " + std::to_string(v));
  }
}

void require_param_count(const ParameterVector& p, Index k, const char* what)
{
  if (p.size() != k) {
    throw ShapeError(std::string(what) + " expects " + std::to_string(k) + " parameters, got " +
                     std::to_string(p.size()));
  }
  if (!p.allFinite()) {
    throw DomainError(std::string(what) + ": parameters must be finite");
  }
}

// Fixed ring template shared by the lofted classes: point i sits on section
// i / per_section at angular slot i % per_section.
struct SectionLayout
{
  Index sections;
  Index per_section;

  double axial(Index i) const
  {
    return static_cast<double>(i / per_section) / static_cast<double>(sections - 1);
  }
  double angle(Index i) const
  {
    return 2.0 * kPi * static_cast<double>(i % per_section) / static_cast<double>(per_section);
  }
};

SectionLayout section_layout(Index n)
{
  const Index per = (n + section_count(n) - 1) / section_count(n);
  return {(n + per - 1) / per, per};
}

// Distance from the centre to the boundary of a rounded rectangle along
// direction (cos t, sin t). The rounded rectangle is the Minkowski sum of the
// inner box [-ia, ia] x [-ib, ib] and a disc of radius rc.
Eigen::Vector2d rounded_rectangle_point(double half_w, double half_h, double rc, double t)
{
  const double dx = std::cos(t);
  const double dy = std::sin(t);
  const double ax = std::abs(dx);
  const double ay = std::abs(dy);
  const double ia = half_w - rc;
  const double ib = half_h - rc;

  double dist;
  if (ax > 0.0 && (half_w / ax) * ay <= ib) {
    dist = half_w / ax;
  } else if (ay > 0.0 && (half_h / ay) * ax <= ia) {
    dist = half_h / ay;
  } else {
    const double dc = ax * ia + ay * ib;
    const double cc = ia * ia + ib * ib;
    dist = dc + std::sqrt(std::max(0.0, dc * dc - cc + rc * rc));
  }
  return {dist * dx, dist * dy};
}

} // namespace

Index section_count(Index n)
{
  const auto s = static_cast<Index>(std::lround(std::sqrt(static_cast<double>(n) / 2.0)));
  return std::max<Index>(2, s);
}

void GeometryClassSpec::validate() const
{
  if (name.empty()) {
    throw DomainError("geometry class spec has no name");
  }
  const auto kind_code = static_cast<std::uint32_t>(kind);
  if (kind_code < static_cast<std::uint32_t>(GeometryKind::Rectangle) ||
      kind_code > static_cast<std::uint32_t>(GeometryKind::Tube)) {
    throw DomainError("geometry class '" + name + "' has unknown generator kind " + std::to_string(kind_code));
  }
  if (ranges.empty()) {
    throw DomainError("geometry class '" + name + "' has no parameters");
  }
  if (parameter_names.size() != ranges.size()) {
    throw DomainError("geometry class '" + name + "': " + std::to_string(parameter_names.size()) +
                      " parameter names for " + std::to_string(ranges.size()) + " ranges");
  }
  for (std::size_t j = 0; j < ranges.size(); ++j) {
    const auto& r = ranges[j];
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo < r.hi)) {
      throw DomainError("geometry class '" + name + "': range of '" + parameter_names[j] +
                        "' is degenerate");
    }
  }
  if (n_points < 4) {
    throw DomainError("geometry class '" + name + "': n_points must be at least 4");
  }
  if (kind == GeometryKind::Rectangle && n_points % 4 != 0) {
    throw DomainError("geometry class '" + name + "': n_points must be divisible by 4");
  }
}

const std::vector<std::string>& class_names()
{
  static const std::vector<std::string> names{"rectangle", "cuboid",    "simplified_helix",
                                              "helix",     "fan_blade", "tube"};
  return names;
}

GeometryClassSpec class_spec(std::string_view name, Index n_points)
{
  GeometryClassSpec s;
  s.name = std::string(name);
  s.n_points = n_points;

  if (name == "rectangle") {
    s.kind = GeometryKind::Rectangle;
    s.parameter_names = {"a", "b"};
    s.ranges = {{0.0, 10.0}, {0.0, 10.0}};
  } else if (name == "cuboid") {
    s.kind = GeometryKind::Cuboid;
    s.parameter_names = {"a", "b", "c"};
    s.ranges = {{0.0, 10.0}, {0.0, 10.0}, {0.0, 10.0}};
  } else if (name == "helix") {
    s.kind = GeometryKind::Helix;
    s.parameter_names = {"r", "h", "turns"};
    s.ranges = {{0.0, 10.0}, {0.0, 10.0}, {0.0, 5.0}};
  } else if (name == "simplified_helix") {
    s.kind = GeometryKind::SimplifiedHelix;
    s.parameter_names = {"r", "h"};
    s.ranges = {{0.0, 10.0}, {0.0, 10.0}};
    s.fixed_constants = {{"turns", kSimplifiedHelixTurns}};
  } else if (name == "fan_blade") {
    s.kind = GeometryKind::FanBlade;
    s.parameter_names = {"root_chord",  "tip_chord", "root_thickness", "tip_thickness",
                         "root_camber", "tip_camber", "root_twist",    "tip_twist",
                         "span",        "sweep",      "lean",          "hub_radius"};
    s.ranges = {{2.0, 4.0},   {1.0, 3.0},  {0.08, 0.16}, {0.03, 0.08}, {0.0, 0.08}, {0.0, 0.06},
                {0.2, 0.8},   {-0.6, 0.2}, {4.0, 12.0},  {-2.0, 2.0},  {-1.0, 1.0}, {0.5, 2.0}};
  } else if (name == "tube") {
    s.kind = GeometryKind::Tube;
    s.parameter_names = {"circle_x",    "circle_y",   "circle_z", "circle_radius", "rect_x",
                         "rect_y",      "rect_z",     "rect_width", "rect_height", "length",
                         "corner_radius", "bend_x",   "bend_y",   "twist"};
    s.ranges = {{-1.0, 1.0}, {-1.0, 1.0}, {0.0, 2.0},  {0.5, 1.5},   {-1.0, 1.0},
                {-1.0, 1.0}, {0.0, 0.5},  {1.0, 3.0},  {1.0, 3.0},   {2.0, 10.0},
                {0.05, 0.5}, {-2.0, 2.0}, {-2.0, 2.0}, {-0.8, 0.8}};
  } else {
    std::string known;
    for (const auto& n : class_names()) {
      known += (known.empty() ? "" : ", ") + n;
    }
    throw DomainError("unknown geometry class '" + std::string(name) + "' (known: " + known + ")");
  }
  s.validate();
  return s;
}

std::vector<ParameterVector> sample_parameters(const GeometryClassSpec& spec, std::uint64_t seed, Index count)
{
  spec.validate();
  if (count < 1) {
    throw DomainError("sample_parameters: count must be positive");
  }
  const Index k = spec.k();
  std::vector<ParameterVector> out(static_cast<std::size_t>(count), ParameterVector(k));
  for (Index i = 0; i < count; ++i) {
    auto& p = out[static_cast<std::size_t>(i)];
    for (Index j = 0; j < k; ++j) {
      const auto& r = spec.ranges[static_cast<std::size_t>(j)];
      const double u = to_unit_interval(
          hash_counters(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)));
      double v = r.lo + u * (r.hi - r.lo);
      if (v >= r.hi) {
        v = std::nextafter(r.hi, r.lo);
      }
      p[j] = v;
    }
  }
  return out;
}

PointCloud generate_rectangle(double a, double b, Index n)
{
  require_non_negative(a, "rectangle length a");
  require_non_negative(b, "rectangle width b");
  require_points(n, 4, "generate_rectangle");
  if (n % 4 != 0) {
    throw DomainError("generate_rectangle: point count must be divisible by 4");
  }

  static constexpr double corners[5][2] = {{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}, {-0.5, -0.5}};
  const Index per_edge = n / 4;
  PointCloud cloud(n);
  for (Index e = 0; e < 4; ++e) {
    for (Index j = 0; j < per_edge; ++j) {
      const double f = static_cast<double>(j) / static_cast<double>(per_edge);
      const double ux = corners[e][0] + f * (corners[e + 1][0] - corners[e][0]);
      const double uy = corners[e][1] + f * (corners[e + 1][1] - corners[e][1]);
      cloud.row(e * per_edge + j) << a * ux, b * uy, 0.0;
    }
  }
  return cloud;
}

PointCloud generate_cuboid(double a, double b, double c, Index n)
{
  require_non_negative(a, "cuboid length a");
  require_non_negative(b, "cuboid width b");
  require_non_negative(c, "cuboid height c");
  require_points(n, 4, "generate_cuboid");

  const double scale[3] = {a, b, c};
  PointCloud cloud(n);
  Index next = 0;
  // Faces +x, -x, +y, -y, +z, -z; the first n % 6 faces get one extra point.
  for (Index face = 0; face < 6; ++face) {
    const Index count = n / 6 + (face < n % 6 ? 1 : 0);
    if (count == 0) {
      continue;
    }
    const Index axis = face / 2;
    const double side = (face % 2 == 0) ? 0.5 : -0.5;
    const Index u_axis = (axis == 0) ? 1 : 0;
    const Index v_axis = (axis == 2) ? 1 : 2;
    const auto cols = static_cast<Index>(std::ceil(std::sqrt(static_cast<double>(count))));
    const Index rows = (count + cols - 1) / cols;
    for (Index j = 0; j < count; ++j) {
      double unit[3];
      unit[axis] = side;
      unit[u_axis] = (static_cast<double>(j % cols) + 0.5) / static_cast<double>(cols) - 0.5;
      unit[v_axis] = (static_cast<double>(j / cols) + 0.5) / static_cast<double>(rows) - 0.5;
      cloud.row(next++) << scale[0] * unit[0], scale[1] * unit[1], scale[2] * unit[2];
    }
  }
  return cloud;
}

PointCloud generate_helix(double r, double h, double turns, Index n)
{
  require_non_negative(r, "helix radius r");
  require_non_negative(h, "helix height h");
  require_non_negative(turns, "helix turn count");
  require_points(n, 2, "generate_helix");

  PointCloud cloud(n);
  for (Index i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(n - 1);
    const double angle = 2.0 * kPi * turns * s;
    cloud.row(i) << r * std::cos(angle), r * std::sin(angle), h * s;
  }
  return cloud;
}

PointCloud generate_simplified_helix(double r, double h, Index n)
{
  return generate_helix(r, h, kSimplifiedHelixTurns, n);
}

PointCloud generate_tube(const ParameterVector& p, Index n)
{
  require_param_count(p, 14, "generate_tube");
  require_points(n, 4, "generate_tube");
  const Eigen::Vector2d circle_center{p[0], p[1]};
  const double circle_z = p[2];
  const double radius = p[3];
  const Eigen::Vector2d rect_center{p[4], p[5]};
  const double rect_z = p[6];
  const double width = p[7];
  const double height = p[8];
  const double length = p[9];
  const double corner = p[10];
  const Eigen::Vector2d bend{p[11], p[12]};
  const double twist = p[13];

  require_positive(radius, "tube circle radius");
  require_positive(width, "tube rectangle width");
  require_positive(height, "tube rectangle height");
  require_non_negative(length, "tube length");
  require_non_negative(corner, "tube corner radius");
  if (corner > 0.5 * std::min(width, height)) {
    throw DomainError("tube corner radius exceeds half the rectangle's smaller side");
  }
  if (!(1.0 + 2.0 * rect_z >= 0.0)) {
    throw DomainError("tube rect_z below -1/2 folds the loft back on itself");
  }

  const SectionLayout layout = section_layout(n);
  PointCloud cloud(n);
  for (Index i = 0; i < n; ++i) {
    const double s = layout.axial(i);
    const double t = layout.angle(i);
    const Eigen::Vector2d on_circle{radius * std::cos(t), radius * std::sin(t)};
    const Eigen::Vector2d on_rect = rounded_rectangle_point(0.5 * width, 0.5 * height, corner, t);
    const Eigen::Vector2d section = (1.0 - s) * on_circle + s * on_rect;
    const double c = std::cos(s * twist);
    const double sn = std::sin(s * twist);
    const Eigen::Vector2d center = (1.0 - s) * circle_center + s * rect_center + std::sin(kPi * s) * bend;
    // The rectangle end sits at circle_z + length (1 + rect_z); rect_z is an
    // axial overshoot in units of the tube length, phased in quadratically.
    cloud.row(i) << center.x() + c * section.x() - sn * section.y(),
        center.y() + sn * section.x() + c * section.y(), circle_z + length * s * (1.0 + s * rect_z);
  }
  return cloud;
}

PointCloud generate_fan_blade(const ParameterVector& p, Index n)
{
  require_param_count(p, 12, "generate_fan_blade");
  require_points(n, 4, "generate_fan_blade");
  const double root_chord = p[0];
  const double tip_chord = p[1];
  const double root_thickness = p[2];
  const double tip_thickness = p[3];
  const double root_camber = p[4];
  const double tip_camber = p[5];
  const double root_twist = p[6];
  const double tip_twist = p[7];
  const double span = p[8];
  const double sweep = p[9];
  const double lean = p[10];
  const double hub_radius = p[11];

  require_positive(root_chord, "fan blade root chord");
  require_positive(tip_chord, "fan blade tip chord");
  require_non_negative(root_thickness, "fan blade root thickness");
  require_non_negative(tip_thickness, "fan blade tip thickness");
  require_non_negative(span, "fan blade span");
  require_non_negative(hub_radius, "fan blade hub radius");

  const SectionLayout layout = section_layout(n);
  PointCloud cloud(n);
  for (Index i = 0; i < n; ++i) {
    const double s = layout.axial(i);
    const double phi = layout.angle(i);
    const double chord = (1.0 - s) * root_chord + s * tip_chord;
    const double thickness = (1.0 - s) * root_thickness + s * tip_thickness;
    const double camber = (1.0 - s) * root_camber + s * tip_camber;
    const double twist = (1.0 - s) * root_twist + s * tip_twist;

    // Closed profile: cosine-spaced chord station u, upper side for phi < pi.
    const double u = 0.5 * (1.0 - std::cos(phi));
    const double side = phi < kPi ? 1.0 : -1.0;
    const double camber_line = camber * 4.0 * u * (1.0 - u);
    const double half_thickness = 0.5 * thickness * std::sqrt(u) * (1.0 - u) / kThicknessShapeMax;
    const double px = (u - 0.25) * chord;
    const double py = chord * (camber_line + side * half_thickness);

    const double c = std::cos(twist);
    const double sn = std::sin(twist);
    cloud.row(i) << c * px - sn * py + sweep * s * s, sn * px + c * py + lean * s * s, hub_radius + s * span;
  }
  return cloud;
}

PointCloud generate(const GeometryClassSpec& spec, const ParameterVector& params)
{
  require_param_count(params, spec.k(), spec.name.c_str());
  const Index n = spec.n_points;
  switch (spec.kind) {
  case GeometryKind::Rectangle:
    return generate_rectangle(params[0], params[1], n);
  case GeometryKind::Cuboid:
    return generate_cuboid(params[0], params[1], params[2], n);
  case GeometryKind::Helix:
    return generate_helix(params[0], params[1], params[2], n);
  case GeometryKind::SimplifiedHelix:
    return generate_simplified_helix(params[0], params[1], n);
  case GeometryKind::FanBlade:
    return generate_fan_blade(params, n);
  case GeometryKind::Tube:
    return generate_tube(params, n);
  }
  throw DomainError("geometry class '" + spec.name + "' has an unknown generator kind");
}

} // namespace egpc
