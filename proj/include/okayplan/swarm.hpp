#pragma once

#include <span>
#include <vector>

#include "okayplan/rng.hpp"

namespace okayplan::swarm {

/// Per-group search parameters theta_g.
struct GroupParams {
  double c1 = 1.0;
  double c2 = 2.0;
  double c3 = 1.0;
  double omega_init = 0.9;
  double omega_end = 0.9;
  double v_limit = 0.1;
};

/// Per-dimension search box.
struct Bounds {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Multi-group swarm: positions/velocities are groups x particles x dims,
/// row-major. Minimization semantics throughout.
struct SwarmState {
  int groups = 0;
  int particles = 0;
  int dims = 0;
  int iteration = 0;

  std::vector<double> x;           // G*N*D
  std::vector<double> v;           // G*N*D
  std::vector<double> pbest_pos;   // G*N*D
  std::vector<double> pbest_val;   // G*N
  std::vector<double> gbest_pos;   // G*D
  std::vector<double> gbest_val;   // G
  std::vector<double> tbest_pos;   // D
  double tbest_val = 0.0;

  Bounds bounds;

  static SwarmState make(int groups, int particles, int dims, Bounds bounds);

  std::size_t idx(int g, int n, int d = 0) const {
    return (static_cast<std::size_t>(g) * particles + n) * dims + d;
  }
};

/// Linear inertia schedule from omega_init (k=0) to omega_end (k=T).
double inertia(const GroupParams& gp, int k, int max_iterations);

/// One velocity/position update pass. R1/R2/R3 are fresh uniform(0,1) draws
/// per particle per dimension, taken from the group's own stream. Velocities
/// saturate at +/- v_limit*(hi-lo); positions saturate at the bounds.
void update_swarm(SwarmState& state, std::span<const GroupParams> params,
                  int max_iterations, std::span<Rng> group_rngs);

/// Strict-improvement best updating.
void update_bests_standard(SwarmState& state, std::span<const double> fitness);

/// Relaxation-based updating: positions move when f < R(lambda,1)*U with a
/// fresh draw per comparison; values still require strict improvement.
void update_bests_relaxed(SwarmState& state, std::span<const double> fitness,
                          double lambda, RandomSource& rng);

}  // namespace okayplan::swarm
