#pragma once

#include <span>
#include <vector>

#include "okayplan/geometry.hpp"

namespace okayplan::fitness {

/// GPP objective weights: alpha/beta shape the static-collision penalty,
/// mu/nu the kinematic penalty, iota the kinematic segment length scale.
struct GppParams {
  double alpha = 4.0;
  double beta = 1.0;
  double mu = 3.9827;
  double nu = 6.0;
  double iota = 5.2032;
};

enum class NormMode { dynamic, fixed_initial };

// Upper bound on segments per set, sized for the evaluation hot loop's
// stack-local candidate buffer. assign() rejects larger inputs.
inline constexpr std::size_t kMaxEnvSegments = 4096;

// Obstacle/kinematic segments flattened with precomputed bounding boxes;
// rebuilt once per planning tick, read by every particle evaluation.
struct SegmentSet {
  std::vector<double> ax, ay, bx, by;
  std::vector<double> lox, loy, hix, hiy;

  void assign(std::span<const geom::Segment> segs);
  std::size_t size() const { return ax.size(); }
  std::vector<geom::Segment> to_segments() const;
};

struct FitnessContext {
  geom::Point start;
  geom::Point target;
  SegmentSet obstacle_segments;
  SegmentSet kinematic_segments;
  double eta = 1.0;

  static FitnessContext make(const geom::Point& start, const geom::Point& target,
                             std::span<const geom::Segment> obstacle_segs,
                             std::span<const geom::Segment> kinematic_segs,
                             double eta);
};

// Floor applied to eta when start == target; the episode has already arrived
// by then but the objective must stay finite.
inline constexpr double kEtaFloor = 1e-6;

// Intersection counts are capped before exponentiation so the fitness
// saturates instead of overflowing.
inline constexpr int kCountCap = 1000000;

/// Counts hits of the polyline start->waypoints->target against a segment set.
int count_hits(std::span<const geom::Point> waypoints, const geom::Point& start,
               const geom::Point& target, const SegmentSet& segs);

/// Fitness of a single decoded path: L + eta * (alpha*Q^beta + mu*P^nu).
/// Non-finite waypoints yield +infinity.
double evaluate_path(std::span<const geom::Point> waypoints,
                     const FitnessContext& ctx, const GppParams& params);

/// Batched evaluation over particle positions laid out as count x dims, with
/// the first dims/2 entries of each row holding x coordinates and the rest y.
/// Bit-exact to element-wise evaluate_path.
void evaluate_batch(std::span<const double> positions, int count, int dims,
                    const FitnessContext& ctx, const GppParams& params,
                    std::span<double> out);

/// Ablated objective: the kinematic term removed (mu treated as 0).
void evaluate_static(std::span<const double> positions, int count, int dims,
                     const FitnessContext& ctx, const GppParams& params,
                     std::span<double> out);

/// Decodes one position row [x1..x_{D/2}, y1..y_{D/2}] into waypoints.
std::vector<geom::Point> decode_waypoints(std::span<const double> row);

}  // namespace okayplan::fitness
