#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "flv/solver.hpp"

namespace flv::geometry {

using Point = std::array<double, 2>;

/// Sign of the orientation determinant of (a, b, c): +1 counter-clockwise,
/// -1 clockwise, 0 collinear. Exact for all finite double inputs.
[[nodiscard]] int orient(const Point& a, const Point& b, const Point& c);

struct Crossing {
  std::size_t first = 0;   // segment index i (points i, i+1)
  std::size_t second = 0;  // segment index j > i + 1
  Point point{};
  friend bool operator==(const Crossing& x, const Crossing& y) {
    return x.first == y.first && x.second == y.second;
  }
};

struct IntersectionReport {
  std::vector<Crossing> crossings;  // transversal, sorted by (first, second)
  std::size_t degenerate = 0;       // touching or collinear contacts, not counted
};

/// Proper crossing test for segments pq and rs.
enum class Contact { None, Proper, Degenerate };
[[nodiscard]] Contact segment_contact(const Point& p, const Point& q, const Point& r, const Point& s);

/// All transversal crossings between non-adjacent segments of the polyline,
/// using a uniform-grid bucket index over segment bounding boxes.
[[nodiscard]] IntersectionReport self_intersections(std::span<const Point> polyline);

/// All-pairs reference for self_intersections.
[[nodiscard]] IntersectionReport self_intersections_brute_force(std::span<const Point> polyline);

/// (component x, component y) projection of a trajectory.
[[nodiscard]] std::vector<Point> project(const Trajectory& traj, std::size_t x = 0, std::size_t y = 1);

/// Self-intersections of the projected trajectory. Returns no crossings for
/// trajectories with fewer than 4 points.
[[nodiscard]] IntersectionReport detect_self_intersection(const Trajectory& traj, std::size_t x = 0,
                                                         std::size_t y = 1);

}  // namespace flv::geometry
