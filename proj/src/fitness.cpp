#include "okayplan/fitness.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace okayplan::fitness {

void SegmentSet::assign(std::span<const geom::Segment> segs) {
  const std::size_t n = segs.size();
  if (n > kMaxEnvSegments)
    throw std::invalid_argument("SegmentSet: too many segments");
  ax.resize(n); ay.resize(n); bx.resize(n); by.resize(n);
  lox.resize(n); loy.resize(n); hix.resize(n); hiy.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    ax[i] = segs[i].a.x; ay[i] = segs[i].a.y;
    bx[i] = segs[i].b.x; by[i] = segs[i].b.y;
    lox[i] = std::min(ax[i], bx[i]) - geom::kOrientTol;
    hix[i] = std::max(ax[i], bx[i]) + geom::kOrientTol;
    loy[i] = std::min(ay[i], by[i]) - geom::kOrientTol;
    hiy[i] = std::max(ay[i], by[i]) + geom::kOrientTol;
  }
}

std::vector<geom::Segment> SegmentSet::to_segments() const {
  std::vector<geom::Segment> segs(size());
  for (std::size_t i = 0; i < size(); ++i)
    segs[i] = {{ax[i], ay[i]}, {bx[i], by[i]}};
  return segs;
}

FitnessContext FitnessContext::make(const geom::Point& start, const geom::Point& target,
                                    std::span<const geom::Segment> obstacle_segs,
                                    std::span<const geom::Segment> kinematic_segs,
                                    double eta) {
  FitnessContext ctx;
  ctx.start = start;
  ctx.target = target;
  ctx.obstacle_segments.assign(obstacle_segs);
  ctx.kinematic_segments.assign(kinematic_segs);
  ctx.eta = eta > kEtaFloor ? eta : kEtaFloor;
  return ctx;
}

namespace {

inline int count_hits_segment(const geom::Point& a, const geom::Point& b,
                              const SegmentSet& segs) {
  const double plox = std::min(a.x, b.x), phix = std::max(a.x, b.x);
  const double ploy = std::min(a.y, b.y), phiy = std::max(a.y, b.y);
  const std::size_t n = segs.size();
  int hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    // single predictable branch: most segments fail the bbox overlap test
    if ((segs.hix[i] >= plox) & (segs.lox[i] <= phix) & (segs.hiy[i] >= ploy) &
        (segs.loy[i] <= phiy)) {
      geom::Segment o{{segs.ax[i], segs.ay[i]}, {segs.bx[i], segs.by[i]}};
      if (geom::segments_intersect({a, b}, o)) ++hits;
    }
  }
  return hits;
}

inline double penalty_pow(int count, double exponent) {
  if (count > kCountCap) count = kCountCap;
  return std::pow(static_cast<double>(count), exponent);
}

// Shared kernel for one particle. Waypoints given as strided x/y views.
inline double eval_one(std::span<const double> xs, std::span<const double> ys,
                       const FitnessContext& ctx, const GppParams& params,
                       bool kinematic_term) {
  const std::size_t m = xs.size();
  double length = 0.0;
  geom::Point prev = ctx.start;
  int q = 0, p = 0;
  for (std::size_t i = 0; i <= m; ++i) {
    geom::Point cur = i < m ? geom::Point{xs[i], ys[i]} : ctx.target;
    if (!geom::finite(cur)) return std::numeric_limits<double>::infinity();
    length += geom::dist(prev, cur);
    q += count_hits_segment(prev, cur, ctx.obstacle_segments);
    if (kinematic_term) p += count_hits_segment(prev, cur, ctx.kinematic_segments);
    prev = cur;
  }
  double penalty = params.alpha * penalty_pow(q, params.beta);
  if (kinematic_term) penalty += params.mu * penalty_pow(p, params.nu);
  return length + ctx.eta * penalty;
}

}  // namespace

int count_hits(std::span<const geom::Point> waypoints, const geom::Point& start,
               const geom::Point& target, const SegmentSet& segs) {
  int hits = 0;
  geom::Point prev = start;
  for (std::size_t i = 0; i <= waypoints.size(); ++i) {
    geom::Point cur = i < waypoints.size() ? waypoints[i] : target;
    hits += count_hits_segment(prev, cur, segs);
    prev = cur;
  }
  return hits;
}

double evaluate_path(std::span<const geom::Point> waypoints,
                     const FitnessContext& ctx, const GppParams& params) {
  std::vector<double> xs(waypoints.size()), ys(waypoints.size());
  for (std::size_t i = 0; i < waypoints.size(); ++i) {
    xs[i] = waypoints[i].x;
    ys[i] = waypoints[i].y;
  }
  return eval_one(xs, ys, ctx, params, params.mu != 0.0);
}

void evaluate_batch(std::span<const double> positions, int count, int dims,
                    const FitnessContext& ctx, const GppParams& params,
                    std::span<double> out) {
  const int half = dims / 2;
  const bool kin = params.mu != 0.0;
  for (int i = 0; i < count; ++i) {
    std::span<const double> row = positions.subspan(static_cast<std::size_t>(i) * dims, dims);
    out[i] = eval_one(row.first(half), row.subspan(half, half), ctx, params, kin);
  }
}

void evaluate_static(std::span<const double> positions, int count, int dims,
                     const FitnessContext& ctx, const GppParams& params,
                     std::span<double> out) {
  GppParams p = params;
  p.mu = 0.0;
  evaluate_batch(positions, count, dims, ctx, p, out);
}

std::vector<geom::Point> decode_waypoints(std::span<const double> row) {
  const std::size_t half = row.size() / 2;
  std::vector<geom::Point> pts(half);
  for (std::size_t i = 0; i < half; ++i) pts[i] = {row[i], row[half + i]};
  return pts;
}

}  // namespace okayplan::fitness
