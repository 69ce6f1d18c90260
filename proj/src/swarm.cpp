#include "okayplan/swarm.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace okayplan::swarm {

SwarmState SwarmState::make(int groups, int particles, int dims, Bounds bounds) {
  if (bounds.lo.size() != static_cast<std::size_t>(dims) ||
      bounds.hi.size() != static_cast<std::size_t>(dims))
    throw std::invalid_argument("SwarmState: bounds/dims mismatch");
  SwarmState s;
  s.groups = groups;
  s.particles = particles;
  s.dims = dims;
  s.bounds = std::move(bounds);
  const std::size_t total = static_cast<std::size_t>(groups) * particles * dims;
  const double inf = std::numeric_limits<double>::infinity();
  s.x.assign(total, 0.0);
  s.v.assign(total, 0.0);
  s.pbest_pos.assign(total, 0.0);
  s.pbest_val.assign(static_cast<std::size_t>(groups) * particles, inf);
  s.gbest_pos.assign(static_cast<std::size_t>(groups) * dims, 0.0);
  s.gbest_val.assign(groups, inf);
  s.tbest_pos.assign(dims, 0.0);
  s.tbest_val = inf;
  return s;
}

double inertia(const GroupParams& gp, int k, int max_iterations) {
  if (max_iterations <= 0) throw std::invalid_argument("inertia: max_iterations <= 0");
  return gp.omega_init -
         (gp.omega_init - gp.omega_end) * static_cast<double>(k) / max_iterations;
}

void update_swarm(SwarmState& state, std::span<const GroupParams> params,
                  int max_iterations, std::span<Rng> group_rngs) {
  if (params.size() != static_cast<std::size_t>(state.groups) ||
      group_rngs.size() != static_cast<std::size_t>(state.groups))
    throw std::invalid_argument("update_swarm: group count mismatch");

  const int D = state.dims;
  for (int g = 0; g < state.groups; ++g) {
    const GroupParams& gp = params[g];
    Rng& rng = group_rngs[g];
    const double omega = inertia(gp, state.iteration, max_iterations);
    const double* gbest = &state.gbest_pos[static_cast<std::size_t>(g) * D];
    for (int n = 0; n < state.particles; ++n) {
      const std::size_t base = state.idx(g, n);
      for (int d = 0; d < D; ++d) {
        const std::size_t i = base + d;
        const double r1 = rng.uniform01();
        const double r2 = rng.uniform01();
        const double r3 = rng.uniform01();
        double vel = omega * state.v[i] +
                     gp.c1 * r1 * (state.pbest_pos[i] - state.x[i]) +
                     gp.c2 * r2 * (gbest[d] - state.x[i]) +
                     gp.c3 * r3 * (state.tbest_pos[d] - state.x[i]);
        const double vcap = gp.v_limit * (state.bounds.hi[d] - state.bounds.lo[d]);
        vel = std::clamp(vel, -vcap, vcap);
        state.v[i] = vel;
        state.x[i] = std::clamp(state.x[i] + vel, state.bounds.lo[d], state.bounds.hi[d]);
      }
    }
  }
  ++state.iteration;
}

void update_bests_standard(SwarmState& state, std::span<const double> fitness) {
  const int D = state.dims;
  for (int g = 0; g < state.groups; ++g) {
    for (int n = 0; n < state.particles; ++n) {
      const std::size_t pi = static_cast<std::size_t>(g) * state.particles + n;
      const double f = fitness[pi];
      const double* xp = &state.x[state.idx(g, n)];
      if (f < state.pbest_val[pi]) {
        state.pbest_val[pi] = f;
        std::copy(xp, xp + D, &state.pbest_pos[state.idx(g, n)]);
      }
      if (f < state.gbest_val[g]) {
        state.gbest_val[g] = f;
        std::copy(xp, xp + D, &state.gbest_pos[static_cast<std::size_t>(g) * D]);
      }
      if (f < state.tbest_val) {
        state.tbest_val = f;
        std::copy(xp, xp + D, state.tbest_pos.data());
      }
    }
  }
}

void update_bests_relaxed(SwarmState& state, std::span<const double> fitness,
                          double lambda, RandomSource& rng) {
  if (lambda <= 0.0) throw std::invalid_argument("update_bests_relaxed: lambda <= 0");
  const int D = state.dims;
  // R(lambda,1): uniform between lambda and 1 (order-insensitive); for
  // lambda == 1 this is exactly 1 and the rule degenerates to Algorithm 1.
  auto relax = [&] { return lambda + (1.0 - lambda) * rng.uniform01(); };
  for (int g = 0; g < state.groups; ++g) {
    for (int n = 0; n < state.particles; ++n) {
      const std::size_t pi = static_cast<std::size_t>(g) * state.particles + n;
      const double f = fitness[pi];
      const double* xp = &state.x[state.idx(g, n)];
      if (f < relax() * state.pbest_val[pi])
        std::copy(xp, xp + D, &state.pbest_pos[state.idx(g, n)]);
      if (f < state.pbest_val[pi]) state.pbest_val[pi] = f;
      if (f < relax() * state.gbest_val[g])
        std::copy(xp, xp + D, &state.gbest_pos[static_cast<std::size_t>(g) * D]);
      if (f < state.gbest_val[g]) state.gbest_val[g] = f;
      if (f < relax() * state.tbest_val)
        std::copy(xp, xp + D, state.tbest_pos.data());
      if (f < state.tbest_val) state.tbest_val = f;
    }
  }
}

}  // namespace okayplan::swarm
