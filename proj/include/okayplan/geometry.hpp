#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace okayplan::geom {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline bool finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline double dist(const Point& a, const Point& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

struct Segment {
  Point a;
  Point b;
};

/// Interior waypoints of a candidate path; start and target are supplied at
/// evaluation time and are not stored.
using Path = std::vector<Point>;

/// A polygon together with its instantaneous velocity (meters per tick).
struct MovingPolygon {
  std::vector<Point> vertices;
  Point velocity;
};

// Collinearity tolerance for the orientation test. Coordinates are
// meter-scale, so exact predicates are not needed.
inline constexpr double kOrientTol = 1e-9;

inline double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// -1 / 0 / +1 with the tolerance band collapsed to 0.
inline int orient(const Point& o, const Point& a, const Point& b) {
  double c = cross(o, a, b);
  if (c > kOrientTol) return 1;
  if (c < -kOrientTol) return -1;
  return 0;
}

inline bool on_segment_collinear(const Point& a, const Point& b, const Point& p) {
  return std::min(a.x, b.x) - kOrientTol <= p.x && p.x <= std::max(a.x, b.x) + kOrientTol &&
         std::min(a.y, b.y) - kOrientTol <= p.y && p.y <= std::max(a.y, b.y) + kOrientTol;
}

/// Closed-segment intersection. Endpoint touching and collinear overlap count
/// as intersection; degenerate segments intersect nothing.
inline bool segments_intersect(const Segment& s, const Segment& t) {
  const Point &p1 = s.a, &p2 = s.b, &q1 = t.a, &q2 = t.b;
  if ((p1.x == p2.x && p1.y == p2.y) || (q1.x == q2.x && q1.y == q2.y)) return false;
  // cheap reject on bounding boxes
  if (std::max(p1.x, p2.x) < std::min(q1.x, q2.x) - kOrientTol) return false;
  if (std::max(q1.x, q2.x) < std::min(p1.x, p2.x) - kOrientTol) return false;
  if (std::max(p1.y, p2.y) < std::min(q1.y, q2.y) - kOrientTol) return false;
  if (std::max(q1.y, q2.y) < std::min(p1.y, p2.y) - kOrientTol) return false;

  int d1 = orient(p1, p2, q1);
  int d2 = orient(p1, p2, q2);
  int d3 = orient(q1, q2, p1);
  int d4 = orient(q1, q2, p2);
  if (d1 != d2 && d3 != d4) return true;
  if (d1 == 0 && on_segment_collinear(p1, p2, q1)) return true;
  if (d2 == 0 && on_segment_collinear(p1, p2, q2)) return true;
  if (d3 == 0 && on_segment_collinear(q1, q2, p1)) return true;
  if (d4 == 0 && on_segment_collinear(q1, q2, p2)) return true;
  return false;
}

/// Total length of start -> waypoints -> target. Throws std::invalid_argument
/// on non-finite coordinates.
double path_length(std::span<const Point> waypoints, const Point& start,
                   const Point& target);

/// Number of intersecting (path segment, obstacle segment) pairs; each
/// crossing pair counts once.
int count_path_segment_hits(std::span<const Segment> path_segments,
                            std::span<const Segment> obstacle_segments);

/// Expands a path into its polyline segments start -> w1 -> ... -> target.
std::vector<Segment> path_to_segments(std::span<const Point> waypoints,
                                      const Point& start, const Point& target);

/// One segment per vertex of each moving polygon, directed along the
/// polygon's velocity with length iota * |v|. Zero-velocity polygons
/// contribute nothing.
std::vector<Segment> kinematic_segments(std::span<const MovingPolygon> obstacles,
                                        double iota);

/// Crossing-number containment; points on the boundary count as inside.
bool point_in_polygon(const Point& p, std::span<const Point> vertices);

}  // namespace okayplan::geom
