#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "macroblock/error.hpp"

namespace macroblock {

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Point2D&, const Point2D&) = default;
};

constexpr Point2D operator+(Point2D a, Point2D b) { return {a.x + b.x, a.y + b.y}; }
constexpr Point2D operator-(Point2D a, Point2D b) { return {a.x - b.x, a.y - b.y}; }
constexpr Point2D operator*(double s, Point2D p) { return {s * p.x, s * p.y}; }

constexpr double dot(Point2D a, Point2D b) { return a.x * b.x + a.y * b.y; }
// z-component of the 3-D cross product; positive when b is counter-clockwise of a.
constexpr double cross(Point2D a, Point2D b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2D p) { return std::hypot(p.x, p.y); }
inline double distance(Point2D a, Point2D b) { return norm(b - a); }

inline Point2D polar_point(double radius, double angle) {
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

namespace geometry_tolerance {
// Absolute, in squared-distance units.
inline constexpr double collinear = 1e-9;
// Paths shorter than this are treated as zero length.
inline constexpr double zero_length = 1e-12;
}  // namespace geometry_tolerance

// Signed shoelace area; positive for counter-clockwise vertex order.
inline double signed_area(std::span<const Point2D> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(vertices[i], vertices[(i + 1) % n]);
  }
  return 0.5 * twice;
}

// A counter-clockwise convex polygon. Construction validates the vertex list.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Point2D> vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) throw Error("convex polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i) {
      const Point2D& p = vertices_[i];
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw Error("convex polygon has a non-finite vertex");
      }
      const Point2D e = vertices_[(i + 1) % n] - p;
      if (dot(e, e) <= geometry_tolerance::zero_length * geometry_tolerance::zero_length) {
        throw Error("convex polygon has repeated vertices");
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Point2D& a = vertices_[i];
      const Point2D& b = vertices_[(i + 1) % n];
      const Point2D& c = vertices_[(i + 2) % n];
      if (cross(b - a, c - b) < -geometry_tolerance::collinear) {
        throw Error("polygon is not convex and counter-clockwise");
      }
    }
    if (signed_area(vertices_) <= 0.0) {
      throw Error("polygon is not convex and counter-clockwise");
    }
  }

  std::span<const Point2D> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  double area() const { return signed_area(vertices_); }

 private:
  std::vector<Point2D> vertices_;
};

namespace detail {

struct PathFrame {
  Point2D origin;
  Point2D direction;  // unit vector from tx to rx
  double length;
};

inline PathFrame path_frame(Point2D tx, Point2D rx, double width) {
  if (!(width > 0.0)) throw Error("blockage width must be positive");
  const Point2D d = rx - tx;
  const double length = norm(d);
  if (length <= geometry_tolerance::zero_length) throw Error("zero-length path");
  return {tx, (1.0 / length) * d, length};
}

}  // namespace detail

// Region in which a blockage center blocks the path tx -> rx: the rectangle
// spanning the segment, extending width/2 to either side.
inline ConvexPolygon path_rectangle(Point2D tx, Point2D rx, double width) {
  const auto frame = detail::path_frame(tx, rx, width);
  const Point2D normal{-frame.direction.y, frame.direction.x};
  const Point2D half = (0.5 * width) * normal;
  return ConvexPolygon({tx - half, rx - half, rx + half, tx + half});
}

// Membership test for path_rectangle(tx, rx, width) with the path frame
// precomputed, for repeated queries against one path.
class PathRegion {
 public:
  PathRegion(Point2D tx, Point2D rx, double width)
      : frame_(detail::path_frame(tx, rx, width)), half_width_(0.5 * width) {}

  // Boundary points count as inside.
  bool contains(Point2D center) const {
    const Point2D rel = center - frame_.origin;
    const double along = dot(rel, frame_.direction);
    if (along < 0.0 || along > frame_.length) return false;
    return std::abs(cross(frame_.direction, rel)) <= half_width_;
  }

  double length() const { return frame_.length; }

 private:
  detail::PathFrame frame_;
  double half_width_;
};

// True iff a blockage centered at `center` blocks the path tx -> rx.
inline bool blocks(Point2D center, Point2D tx, Point2D rx, double width) {
  return PathRegion(tx, rx, width).contains(center);
}

// Area of a ∩ b by clipping b against every edge of a (Sutherland-Hodgman),
// then the shoelace formula.
inline double convex_intersection_area(const ConvexPolygon& a, const ConvexPolygon& b) {
  std::vector<Point2D> current(b.vertices().begin(), b.vertices().end());
  std::vector<Point2D> next;
  next.reserve(current.size() + a.size());

  const auto clip_vertices = a.vertices();
  const std::size_t n = clip_vertices.size();
  for (std::size_t e = 0; e < n && !current.empty(); ++e) {
    const Point2D p0 = clip_vertices[e];
    const Point2D edge = clip_vertices[(e + 1) % n] - p0;
    // Signed distance (scaled by |edge|); >= 0 is the inner side.
    auto side = [&](Point2D q) { return cross(edge, q - p0); };

    next.clear();
    const std::size_t m = current.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Point2D s = current[i];
      const Point2D t = current[(i + 1) % m];
      const double ds = side(s);
      const double dt = side(t);
      if (ds >= 0.0) next.push_back(s);
      if ((ds >= 0.0) != (dt >= 0.0)) {
        const double u = ds / (ds - dt);
        next.push_back(s + u * (t - s));
      }
    }
    current.swap(next);
  }

  const double area = signed_area(current);
  return std::clamp(area, 0.0, std::min(a.area(), b.area()));
}

}  // namespace macroblock
