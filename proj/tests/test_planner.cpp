#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "okayplan/environment.hpp"
#include "okayplan/fitness.hpp"
#include "okayplan/planner.hpp"

using namespace okayplan;
using geom::Point;

namespace {

swarm::Bounds world_box(int dims, double w, double h) {
  swarm::Bounds b;
  b.lo.assign(dims, 0.0);
  b.hi.resize(dims);
  for (int d = 0; d < dims; ++d) b.hi[d] = d < dims / 2 ? w : h;
  return b;
}

std::vector<Rng> group_streams(int groups, std::uint64_t seed) {
  std::vector<Rng> rngs;
  for (int g = 0; g < groups; ++g) rngs.emplace_back(Rng::derive(seed, 0x91, g));
  return rngs;
}

// small but real planner shape so unit tests stay fast
plan::PlannerConfig small_config() {
  plan::PlannerConfig cfg = plan::PlannerConfig::defaults();
  cfg.particles = 40;
  cfg.max_iterations = 30;
  cfg.min_iterations = 5;
  return cfg;
}

env::Observation open_observation(Point start, Point target) {
  env::Observation obs;
  obs.start = start;
  obs.target = target;
  obs.width = 366.0;
  obs.height = 366.0;
  return obs;
}

}  // namespace

TEST_SUITE("planner") {

TEST_CASE("dpi: first tick seeds the straight line and the containment disk") {
  const int G = 8, N = 20, D = 16, m = D / 2;
  auto state = swarm::SwarmState::make(G, N, D, world_box(D, 366, 366));
  auto rngs = group_streams(G, 4);
  Point start{0, 0}, target{10, 0};
  plan::dpi_initialize(state, std::nullopt, start, target, rngs);

  const Point center{5, 0};
  const double radius = 5.0;
  for (int g = 0; g < G; ++g) {
    // particle 0: equal subdivisions of start -> target
    for (int j = 0; j < m; ++j) {
      double t = double(j + 1) / (m + 1);
      CHECK(state.x[state.idx(g, 0, j)] == doctest::Approx(10.0 * t).epsilon(1e-12));
      CHECK(state.x[state.idx(g, 0, m + j)] == 0.0);
    }
    for (int n = 1; n < N; ++n)
      for (int j = 0; j < m; ++j) {
        Point wp{state.x[state.idx(g, n, j)], state.x[state.idx(g, n, m + j)]};
        CHECK(geom::dist(wp, center) <= radius + 1e-9);
      }
  }
}

TEST_CASE("dpi: previous best is inherited bit-exactly in G particles") {
  const int G = 8, N = 20, D = 16, m = D / 2;
  auto state = swarm::SwarmState::make(G, N, D, world_box(D, 366, 366));
  auto rngs = group_streams(G, 4);
  Point start{40, 40}, target{300, 320};

  // a bent previous path, distinct from the straight line
  geom::Path prev;
  Rng r(6);
  for (int j = 0; j < m; ++j)
    prev.push_back({r.uniform(50, 250), r.uniform(50, 250)});
  plan::dpi_initialize(state, prev, start, target, rngs);

  int inherited = 0;
  for (int g = 0; g < G; ++g)
    for (int n = 0; n < N; ++n) {
      bool equal = true;
      for (int j = 0; j < m && equal; ++j)
        equal = state.x[state.idx(g, n, j)] == prev[j].x &&
                state.x[state.idx(g, n, m + j)] == prev[j].y;
      if (equal) ++inherited;
    }
  CHECK(inherited == G);
  for (int g = 0; g < G; ++g)
    for (int j = 0; j < m; ++j) {
      CHECK(state.x[state.idx(g, 0, j)] == prev[j].x);
      CHECK(state.x[state.idx(g, 0, m + j)] == prev[j].y);
    }
}

TEST_CASE("dpi: waypoint count mismatch is rejected") {
  auto state = swarm::SwarmState::make(2, 4, 16, world_box(16, 366, 366));
  auto rngs = group_streams(2, 1);
  geom::Path bad(3, Point{1, 1});
  CHECK_THROWS_AS(plan::dpi_initialize(state, bad, {0, 0}, {10, 0}, rngs),
                  std::invalid_argument);
}

TEST_CASE("pi: prioritized fraction stays in the band, rest in bounds") {
  const int G = 4, N = 170, D = 16, m = D / 2;
  auto state = swarm::SwarmState::make(G, N, D, world_box(D, 366, 366));
  auto rngs = group_streams(G, 12);
  geom::Path prev;
  Rng r(3);
  for (int j = 0; j < m; ++j) prev.push_back({r.uniform(50, 300), r.uniform(50, 300)});

  const double gamma = 0.5, rho = 20.0;
  plan::pi_initialize(state, prev, gamma, rho, rngs);
  const int prioritized = int(gamma * N);
  CHECK(prioritized == 85);

  for (int g = 0; g < G; ++g)
    for (int n = 0; n < N; ++n)
      for (int j = 0; j < m; ++j) {
        double x = state.x[state.idx(g, n, j)];
        double y = state.x[state.idx(g, n, m + j)];
        CHECK(x >= 0.0);
        CHECK(x <= 366.0);
        CHECK(y >= 0.0);
        CHECK(y <= 366.0);
        if (n < prioritized) {
          CHECK(std::abs(x - prev[j].x) <= rho + 1e-9);
          CHECK(std::abs(y - prev[j].y) <= rho + 1e-9);
        }
      }
}

TEST_CASE("pi: zero interval pins prioritized particles to the previous path") {
  const int G = 2, N = 10, D = 8, m = D / 2;
  auto state = swarm::SwarmState::make(G, N, D, world_box(D, 366, 366));
  auto rngs = group_streams(G, 2);
  geom::Path prev{{10, 10}, {20, 20}, {30, 30}, {40, 40}};
  plan::pi_initialize(state, prev, 0.5, 0.0, rngs);
  for (int g = 0; g < G; ++g)
    for (int n = 0; n < 5; ++n)
      for (int j = 0; j < m; ++j) {
        CHECK(state.x[state.idx(g, n, j)] == prev[j].x);
        CHECK(state.x[state.idx(g, n, m + j)] == prev[j].y);
      }
}

TEST_CASE("pi: gamma outside (0,1) is rejected") {
  auto state = swarm::SwarmState::make(2, 4, 8, world_box(8, 366, 366));
  auto rngs = group_streams(2, 1);
  CHECK_THROWS_AS(plan::pi_initialize(state, std::nullopt, 1.5, 20.0, rngs),
                  std::invalid_argument);
}

TEST_CASE("empty world: planned path is near the straight-line optimum") {
  plan::OkayPlanner planner(small_config(), 3);
  auto obs = open_observation({20, 20}, {340, 330});
  plan::PlanResult res = planner.plan(obs);
  double straight = geom::dist(obs.start, obs.target);
  CHECK(res.fitness <= straight * 1.01);
  CHECK(res.fitness >= straight - 1e-9);
  CHECK(res.iterations >= small_config().min_iterations);
}

TEST_CASE("plan is deterministic for a fixed seed") {
  auto obs = open_observation({20, 20}, {340, 330});
  plan::OkayPlanner a(small_config(), 17), b(small_config(), 17);
  plan::PlanResult ra = a.plan(obs), rb = b.plan(obs);
  CHECK(ra.fitness == rb.fitness);
  CHECK(ra.iterations == rb.iterations);
  REQUIRE(ra.path.size() == rb.path.size());
  for (std::size_t i = 0; i < ra.path.size(); ++i) {
    CHECK(ra.path[i].x == rb.path[i].x);
    CHECK(ra.path[i].y == rb.path[i].y);
  }
}

TEST_CASE("reported fitness re-evaluates exactly on the returned path") {
  plan::PlannerConfig cfg = small_config();
  plan::OkayPlanner planner(cfg, 8);
  auto obs = open_observation({30, 180}, {330, 180});
  obs.obstacles.push_back({{{150, 140}, {210, 140}, {210, 220}, {150, 220}}, {0, 2}});
  plan::PlanResult res = planner.plan(obs);

  double eta = geom::dist(obs.start, obs.target);
  auto ctx = fitness::FitnessContext::make(
      obs.start, obs.target, obs.obstacle_segments(),
      geom::kinematic_segments(obs.obstacles, cfg.gpp.iota), eta);
  CHECK(res.fitness == fitness::evaluate_path(res.path, ctx, cfg.gpp));
}

TEST_CASE("moving obstacle ahead: plan clears body and forecast segments") {
  plan::PlannerConfig cfg = small_config();
  plan::OkayPlanner planner(cfg, 21);
  auto obs = open_observation({30, 180}, {330, 180});
  // block the straight line with a mover heading across it
  obs.obstacles.push_back({{{160, 150}, {200, 150}, {200, 210}, {160, 210}}, {0, 4}});
  plan::PlanResult res = planner.plan(obs);

  auto obstacle_segs = obs.obstacle_segments();
  auto kin_segs = geom::kinematic_segments(obs.obstacles, cfg.gpp.iota);
  auto path_segs = geom::path_to_segments(res.path, obs.start, obs.target);
  CHECK(geom::count_path_segment_hits(path_segs, obstacle_segs) == 0);
  CHECK(geom::count_path_segment_hits(path_segs, kin_segs) == 0);
}

TEST_CASE("run_episode: arrival metrics are internally consistent") {
  env::Scenario scn = env::make_scenario("simple", 0, OKAYPLAN_CONFIG_DIR);
  plan::PlannerConfig cfg = plan::PlannerConfig::defaults();
  plan::OkayPlanner planner(cfg, Rng::derive(0, 0x60a1));

  int trace_ticks = 0;
  plan::EpisodeMetrics m = plan::run_episode(
      scn, planner, [&](const plan::TickRecord& rec) {
        CHECK(rec.tick == trace_ticks);
        ++trace_ticks;
      });

  CHECK(m.status == env::Status::arrived);
  CHECK(m.arrived);
  CHECK(m.ticks == trace_ticks);
  CHECK(m.travel_distance == doctest::Approx(6.0 * m.ticks).epsilon(1e-9));
  CHECK(m.fitness == doctest::Approx(-1.0 / m.travel_distance).epsilon(1e-12));
  CHECK(m.mean_plan_time_s > 0.0);
}

TEST_CASE("config validation") {
  plan::PlannerConfig cfg = plan::PlannerConfig::defaults();
  cfg.dims = 15;
  CHECK_THROWS_AS(plan::OkayPlanner(cfg, 0), std::invalid_argument);
  cfg = plan::PlannerConfig::defaults();
  cfg.group_params.pop_back();
  CHECK_THROWS_AS(plan::OkayPlanner(cfg, 0), std::invalid_argument);
}

}  // TEST_SUITE
