#include "okayplan/geometry.hpp"

#include <stdexcept>

namespace okayplan::geom {

double path_length(std::span<const Point> waypoints, const Point& start,
                   const Point& target) {
  if (!finite(start) || !finite(target))
    throw std::invalid_argument("path_length: non-finite endpoint");
  double total = 0.0;
  Point prev = start;
  for (const Point& w : waypoints) {
    if (!finite(w)) throw std::invalid_argument("path_length: non-finite waypoint");
    total += dist(prev, w);
    prev = w;
  }
  total += dist(prev, target);
  return total;
}

int count_path_segment_hits(std::span<const Segment> path_segments,
                            std::span<const Segment> obstacle_segments) {
  int hits = 0;
  for (const Segment& p : path_segments)
    for (const Segment& o : obstacle_segments)
      if (segments_intersect(p, o)) ++hits;
  return hits;
}

std::vector<Segment> path_to_segments(std::span<const Point> waypoints,
                                      const Point& start, const Point& target) {
  std::vector<Segment> segs;
  segs.reserve(waypoints.size() + 1);
  Point prev = start;
  for (const Point& w : waypoints) {
    segs.push_back({prev, w});
    prev = w;
  }
  segs.push_back({prev, target});
  return segs;
}

std::vector<Segment> kinematic_segments(std::span<const MovingPolygon> obstacles,
                                        double iota) {
  std::vector<Segment> segs;
  for (const MovingPolygon& ob : obstacles) {
    double speed = std::hypot(ob.velocity.x, ob.velocity.y);
    if (speed == 0.0) continue;
    double sx = iota * ob.velocity.x;
    double sy = iota * ob.velocity.y;
    for (const Point& v : ob.vertices)
      segs.push_back({v, {v.x + sx, v.y + sy}});
  }
  return segs;
}

bool point_in_polygon(const Point& p, std::span<const Point> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) return false;
  // boundary counts as inside
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point &a = vertices[j], &b = vertices[i];
    if (orient(a, b, p) == 0 && on_segment_collinear(a, b, p)) return true;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point &a = vertices[j], &b = vertices[i];
    if ((a.y > p.y) != (b.y > p.y)) {
      double xint = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < xint) inside = !inside;
    }
  }
  return inside;
}

}  // namespace okayplan::geom
