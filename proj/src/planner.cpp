#include "okayplan/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "okayplan/params_io.hpp"

namespace okayplan::plan {

PlannerConfig PlannerConfig::defaults() {
  PlannerConfig cfg;
  params::HyperParams p = params::default_params();
  cfg.gpp = p.gpp;
  cfg.group_params = p.theta;
  return cfg;
}

namespace {

swarm::Bounds world_bounds(int dims, double width, double height) {
  swarm::Bounds b;
  b.lo.assign(dims, 0.0);
  b.hi.resize(dims);
  const int half = dims / 2;
  for (int d = 0; d < dims; ++d) b.hi[d] = d < half ? width : height;
  return b;
}

void fill_straight_line(double* row, int dims, const geom::Point& start,
                        const geom::Point& target) {
  const int m = dims / 2;
  for (int j = 0; j < m; ++j) {
    double t = static_cast<double>(j + 1) / (m + 1);
    row[j] = start.x + t * (target.x - start.x);
    row[m + j] = start.y + t * (target.y - start.y);
  }
}

void fill_from_path(double* row, int dims, const geom::Path& path) {
  const int m = dims / 2;
  for (int j = 0; j < m; ++j) {
    row[j] = path[j].x;
    row[m + j] = path[j].y;
  }
}

}  // namespace

void dpi_initialize(swarm::SwarmState& state, const std::optional<geom::Path>& prev,
                    const geom::Point& start, const geom::Point& target,
                    std::span<Rng> group_rngs) {
  const int m = state.dims / 2;
  if (prev && static_cast<int>(prev->size()) != m)
    throw std::invalid_argument("dpi_initialize: prev waypoint count mismatch");
  const geom::Point center{(start.x + target.x) / 2.0, (start.y + target.y) / 2.0};
  const double radius = geom::dist(start, target) / 2.0;

  for (int g = 0; g < state.groups; ++g) {
    Rng& rng = group_rngs[g];
    double* first = &state.x[state.idx(g, 0)];
    if (prev)
      fill_from_path(first, state.dims, *prev);
    else
      fill_straight_line(first, state.dims, start, target);
    // one particle always carries the current straight line; its waypoints sit
    // on the disk diameter, and it keeps pursuit efficient once the inherited
    // path has gone stale behind the moving start point
    int deterministic = 1;
    if (state.particles > 1) {
      fill_straight_line(&state.x[state.idx(g, 1)], state.dims, start, target);
      deterministic = 2;
    }
    for (int n = deterministic; n < state.particles; ++n) {
      double* row = &state.x[state.idx(g, n)];
      for (int j = 0; j < m; ++j) {
        double r = radius * std::sqrt(rng.uniform01());
        double ang = 2.0 * std::numbers::pi * rng.uniform01();
        double px = center.x + r * std::cos(ang);
        double py = center.y + r * std::sin(ang);
        row[j] = std::clamp(px, state.bounds.lo[j], state.bounds.hi[j]);
        row[m + j] = std::clamp(py, state.bounds.lo[m + j], state.bounds.hi[m + j]);
      }
    }
  }
}

void pi_initialize(swarm::SwarmState& state, const std::optional<geom::Path>& prev,
                   double gamma, double rho, std::span<Rng> group_rngs) {
  if (gamma <= 0.0 || gamma >= 1.0)
    throw std::invalid_argument("pi_initialize: gamma must be in (0,1)");
  if (rho < 0.0) throw std::invalid_argument("pi_initialize: rho < 0");
  const int m = state.dims / 2;
  const int prioritized = prev ? static_cast<int>(gamma * state.particles) : 0;

  for (int g = 0; g < state.groups; ++g) {
    Rng& rng = group_rngs[g];
    for (int n = 0; n < state.particles; ++n) {
      double* row = &state.x[state.idx(g, n)];
      if (n < prioritized) {
        for (int j = 0; j < m; ++j) {
          row[j] = std::clamp(rng.uniform((*prev)[j].x - rho, (*prev)[j].x + rho),
                              state.bounds.lo[j], state.bounds.hi[j]);
          row[m + j] = std::clamp(rng.uniform((*prev)[j].y - rho, (*prev)[j].y + rho),
                                  state.bounds.lo[m + j], state.bounds.hi[m + j]);
        }
      } else {
        for (int d = 0; d < state.dims; ++d)
          row[d] = rng.uniform(state.bounds.lo[d], state.bounds.hi[d]);
      }
    }
  }
}

OkayPlanner::OkayPlanner(PlannerConfig cfg, std::uint64_t seed, ThreadPool* pool)
    : cfg_(std::move(cfg)), seed_(seed), pool_(pool) {
  if (cfg_.dims % 2 != 0) throw std::invalid_argument("PlannerConfig: dims must be even");
  if (static_cast<int>(cfg_.group_params.size()) != cfg_.groups)
    throw std::invalid_argument("PlannerConfig: group_params size != groups");
  reset();
}

void OkayPlanner::reset() {
  group_rngs_.clear();
  for (int g = 0; g < cfg_.groups; ++g)
    group_rngs_.emplace_back(Rng::derive(seed_, 0x91, g));
  prev_best_.reset();
  initial_eta_ = -1.0;
}

PlanResult OkayPlanner::plan(const env::Observation& obs) {
  const auto t0 = std::chrono::steady_clock::now();

  double eta = geom::dist(obs.start, obs.target);
  if (cfg_.norm_mode == fitness::NormMode::fixed_initial) {
    if (initial_eta_ < 0.0) initial_eta_ = eta;
    eta = initial_eta_;
  }
  const auto obstacle_segs = obs.obstacle_segments();
  const auto kin_segs = geom::kinematic_segments(obs.obstacles, cfg_.gpp.iota);
  const auto ctx =
      fitness::FitnessContext::make(obs.start, obs.target, obstacle_segs, kin_segs, eta);

  auto state = swarm::SwarmState::make(cfg_.groups, cfg_.particles, cfg_.dims,
                                       world_bounds(cfg_.dims, obs.width, obs.height));
  switch (cfg_.init_mode) {
    case InitMode::dpi:
      dpi_initialize(state, prev_best_, obs.start, obs.target, group_rngs_);
      break;
    case InitMode::pi:
      pi_initialize(state, prev_best_, cfg_.pi_gamma, cfg_.pi_rho, group_rngs_);
      break;
    case InitMode::random_uniform:
      pi_initialize(state, std::nullopt, 0.5, 0.0, group_rngs_);
      break;
  }
  // zero initial velocities: motion comes from the best-attraction terms, so
  // particles seeded near good paths refine instead of scattering
  std::fill(state.v.begin(), state.v.end(), 0.0);

  std::vector<double> fit(static_cast<std::size_t>(cfg_.groups) * cfg_.particles);
  const std::size_t group_stride = static_cast<std::size_t>(cfg_.particles) * cfg_.dims;
  auto evaluate_all = [&] {
    auto eval_group = [&](int g) {
      fitness::evaluate_batch(
          std::span<const double>(&state.x[g * group_stride], group_stride),
          cfg_.particles, cfg_.dims, ctx, cfg_.gpp,
          std::span<double>(&fit[static_cast<std::size_t>(g) * cfg_.particles],
                            cfg_.particles));
    };
    if (pool_)
      pool_->run_indexed(cfg_.groups, eval_group);
    else
      for (int g = 0; g < cfg_.groups; ++g) eval_group(g);
  };

  int iterations = 0;
  for (int k = 0; k < cfg_.max_iterations; ++k) {
    evaluate_all();
    swarm::update_bests_standard(state, fit);
    iterations = k + 1;
    if (iterations >= cfg_.min_iterations) {
      auto wp = fitness::decode_waypoints(state.tbest_pos);
      bool clear =
          fitness::count_hits(wp, obs.start, obs.target, ctx.obstacle_segments) == 0;
      if (clear && cfg_.gpp.mu != 0.0)
        clear =
            fitness::count_hits(wp, obs.start, obs.target, ctx.kinematic_segments) == 0;
      if (clear) break;
    }
    swarm::update_swarm(state, cfg_.group_params, cfg_.max_iterations, group_rngs_);
  }

  PlanResult res;
  res.path = fitness::decode_waypoints(state.tbest_pos);
  res.fitness = state.tbest_val;
  res.iterations = iterations;
  res.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  prev_best_ = res.path;
  return res;
}

std::unique_ptr<PathPlanner> make_okayplanner(const PlannerConfig& cfg,
                                              std::uint64_t seed, ThreadPool* pool) {
  return std::make_unique<OkayPlanner>(cfg, seed, pool);
}

EpisodeMetrics run_episode(const env::Scenario& scenario, PathPlanner& planner,
                           const TraceSink& trace) {
  planner.reset();
  env::Episode ep(scenario);
  std::vector<double> times;
  while (ep.status() == env::Status::running) {
    env::Observation obs = ep.observe();
    PlanResult res = planner.plan(obs);
    times.push_back(res.wall_time_s);
    int tick_before = ep.tick();
    ep.step(res.path);
    if (trace) {
      TickRecord rec;
      rec.tick = tick_before;
      rec.usv = obs.start;
      rec.target = obs.target;
      rec.path = res.path;
      rec.obstacles = std::move(obs.obstacles);
      rec.fitness = res.fitness;
      rec.status_after = ep.status();
      trace(rec);
    }
  }

  EpisodeMetrics m;
  m.status = ep.status();
  m.arrived = m.status == env::Status::arrived;
  m.travel_distance = ep.travel_distance();
  m.ticks = ep.tick();
  m.fitness = m.arrived ? -1.0 / m.travel_distance : 0.0;
  if (!times.empty()) {
    double sum = 0.0;
    for (double t : times) sum += t;
    m.mean_plan_time_s = sum / times.size();
    double var = 0.0;
    for (double t : times) var += (t - m.mean_plan_time_s) * (t - m.mean_plan_time_s);
    m.std_plan_time_s = std::sqrt(var / times.size());
  }
  return m;
}

}  // namespace okayplan::plan
