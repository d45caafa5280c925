#include "flv/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "flv/errors.hpp"

namespace flv::geometry {

namespace {

// Error-free transformations (Knuth two-sum, fma two-product).
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bv = s - a;
  const double av = s - bv;
  e = (a - av) + (b - bv);
}

inline void two_product(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

// Sign of the exact sum of `terms`, accumulated as a non-overlapping expansion.
int exact_sign(std::span<const double> terms) {
  std::vector<double> expansion;
  expansion.reserve(terms.size() * 2);
  for (double b : terms) {
    double q = b;
    std::size_t out = 0;
    for (double e : expansion) {
      double sum = 0.0, err = 0.0;
      two_sum(q, e, sum, err);
      if (err != 0.0) {
        expansion[out++] = err;
      }
      q = sum;
    }
    expansion.resize(out);
    if (q != 0.0) {
      expansion.push_back(q);
    }
  }
  if (expansion.empty()) {
    return 0;
  }
  return expansion.back() > 0.0 ? 1 : -1;
}

}  // namespace

int orient(const Point& a, const Point& b, const Point& c) {
  const double left = (b[0] - a[0]) * (c[1] - a[1]);
  const double right = (b[1] - a[1]) * (c[0] - a[0]);
  const double det = left - right;
  // Shewchuk's first-stage bound, with headroom for the rounded differences.
  const double bound = 4.0e-16 * (std::abs(left) + std::abs(right));
  if (det > bound) return 1;
  if (-det > bound) return -1;

  // Expanded form: bx cy - bx ay - ax cy - by cx + by ax + ay cx.
  const std::array<std::array<double, 2>, 6> products = {{{b[0], c[1]},
                                                         {-b[0], a[1]},
                                                         {-a[0], c[1]},
                                                         {-b[1], c[0]},
                                                         {b[1], a[0]},
                                                         {a[1], c[0]}}};
  std::array<double, 12> terms{};
  for (std::size_t k = 0; k < products.size(); ++k) {
    two_product(products[k][0], products[k][1], terms[2 * k], terms[2 * k + 1]);
  }
  return exact_sign(terms);
}

namespace {

bool within(double v, double lo, double hi) {
  return std::min(lo, hi) <= v && v <= std::max(lo, hi);
}

// c is collinear with pq; does it lie on the closed segment?
bool on_segment(const Point& p, const Point& q, const Point& c) {
  return within(c[0], p[0], q[0]) && within(c[1], p[1], q[1]);
}

Point crossing_point(const Point& p, const Point& q, const Point& r, const Point& s) {
  const double dx1 = q[0] - p[0], dy1 = q[1] - p[1];
  const double dx2 = s[0] - r[0], dy2 = s[1] - r[1];
  const double denom = dx1 * dy2 - dy1 * dx2;
  const double t = ((r[0] - p[0]) * dy2 - (r[1] - p[1]) * dx2) / denom;
  return {p[0] + t * dx1, p[1] + t * dy1};
}

void test_pair(std::span<const Point> pl, std::size_t i, std::size_t j, IntersectionReport& out) {
  switch (segment_contact(pl[i], pl[i + 1], pl[j], pl[j + 1])) {
    case Contact::Proper:
      out.crossings.push_back({i, j, crossing_point(pl[i], pl[i + 1], pl[j], pl[j + 1])});
      break;
    case Contact::Degenerate:
      ++out.degenerate;
      break;
    case Contact::None:
      break;
  }
}

}  // namespace

Contact segment_contact(const Point& p, const Point& q, const Point& r, const Point& s) {
  const int o1 = orient(p, q, r);
  const int o2 = orient(p, q, s);
  const int o3 = orient(r, s, p);
  const int o4 = orient(r, s, q);
  if (o1 * o2 < 0 && o3 * o4 < 0) {
    return Contact::Proper;
  }
  if ((o1 == 0 && on_segment(p, q, r)) || (o2 == 0 && on_segment(p, q, s)) ||
      (o3 == 0 && on_segment(r, s, p)) || (o4 == 0 && on_segment(r, s, q))) {
    return Contact::Degenerate;
  }
  return Contact::None;
}

IntersectionReport self_intersections_brute_force(std::span<const Point> polyline) {
  IntersectionReport out;
  if (polyline.size() < 4) {
    return out;
  }
  const std::size_t segments = polyline.size() - 1;
  for (std::size_t i = 0; i < segments; ++i) {
    for (std::size_t j = i + 2; j < segments; ++j) {
      test_pair(polyline, i, j, out);
    }
  }
  return out;
}

IntersectionReport self_intersections(std::span<const Point> polyline) {
  IntersectionReport out;
  if (polyline.size() < 4) {
    return out;
  }
  const std::size_t segments = polyline.size() - 1;

  double xmin = polyline[0][0], xmax = xmin, ymin = polyline[0][1], ymax = ymin;
  for (const Point& p : polyline) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1])) {
      throw InputError("self_intersections: non-finite polyline vertex");
    }
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
  }
  const auto cells = static_cast<std::size_t>(
      std::clamp(std::sqrt(static_cast<double>(segments)), 1.0, 1024.0));
  const double wx = (xmax - xmin) / static_cast<double>(cells);
  const double wy = (ymax - ymin) / static_cast<double>(cells);
  auto cell_of = [cells](double v, double lo, double w) -> std::size_t {
    if (!(w > 0.0)) return 0;
    const double k = std::floor((v - lo) / w);
    return static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(cells - 1)));
  };

  struct CellRange {
    std::size_t x0, x1, y0, y1;
  };
  std::vector<CellRange> ranges(segments);
  std::vector<std::vector<std::size_t>> buckets(cells * cells);
  for (std::size_t s = 0; s < segments; ++s) {
    const Point& a = polyline[s];
    const Point& b = polyline[s + 1];
    CellRange r{cell_of(std::min(a[0], b[0]), xmin, wx), cell_of(std::max(a[0], b[0]), xmin, wx),
                cell_of(std::min(a[1], b[1]), ymin, wy), cell_of(std::max(a[1], b[1]), ymin, wy)};
    ranges[s] = r;
    for (std::size_t cx = r.x0; cx <= r.x1; ++cx) {
      for (std::size_t cy = r.y0; cy <= r.y1; ++cy) {
        buckets[cx * cells + cy].push_back(s);
      }
    }
  }

  for (std::size_t cx = 0; cx < cells; ++cx) {
    for (std::size_t cy = 0; cy < cells; ++cy) {
      const auto& bucket = buckets[cx * cells + cy];
      for (std::size_t u = 0; u < bucket.size(); ++u) {
        for (std::size_t v = u + 1; v < bucket.size(); ++v) {
          const std::size_t i = bucket[u];
          const std::size_t j = bucket[v];
          if (j <= i + 1) {
            continue;
          }
          // Each pair is tested once, in the lowest cell shared by both ranges.
          const CellRange& ri = ranges[i];
          const CellRange& rj = ranges[j];
          if (cx != std::max(ri.x0, rj.x0) || cy != std::max(ri.y0, rj.y0)) {
            continue;
          }
          test_pair(polyline, i, j, out);
        }
      }
    }
  }
  std::sort(out.crossings.begin(), out.crossings.end(), [](const Crossing& x, const Crossing& y) {
    return x.first != y.first ? x.first < y.first : x.second < y.second;
  });
  return out;
}

std::vector<Point> project(const Trajectory& traj, std::size_t x, std::size_t y) {
  if (x >= traj.dimension() || y >= traj.dimension()) {
    throw InputError("project: component index out of range");
  }
  std::vector<Point> out;
  out.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto s = traj.state(k);
    out.push_back({s[x], s[y]});
  }
  return out;
}

IntersectionReport detect_self_intersection(const Trajectory& traj, std::size_t x, std::size_t y) {
  const auto pl = project(traj, x, y);
  return self_intersections(pl);
}

}  // namespace flv::geometry
