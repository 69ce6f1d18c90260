#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "okayplan/environment.hpp"

using namespace okayplan;
using geom::Point;

namespace {

env::Scenario open_water(Point start, Point target, double target_speed = 0.0) {
  env::Scenario s;
  s.width = 366.0;
  s.height = 366.0;
  s.start = start;
  s.target = target;
  s.usv_velocity = 6.0;
  s.target_velocity = target_speed;
  s.seed = 1;
  return s;
}

}  // namespace

TEST_SUITE("environment") {

TEST_CASE("preset scenarios are deterministic per (preset, seed)") {
  auto a = env::make_scenario("simple", 0, OKAYPLAN_CONFIG_DIR);
  auto b = env::make_scenario("simple", 0, OKAYPLAN_CONFIG_DIR);
  CHECK(env::scenario_to_json(a) == env::scenario_to_json(b));
}

TEST_CASE("different seeds realize different obstacle states") {
  auto a = env::make_scenario("simple", 3, OKAYPLAN_CONFIG_DIR);
  auto b = env::make_scenario("simple", 4, OKAYPLAN_CONFIG_DIR);
  CHECK(env::scenario_to_json(a) != env::scenario_to_json(b));
}

TEST_CASE("complex preset speeds stay within the published cap") {
  auto s = env::make_scenario("complex", 7, OKAYPLAN_CONFIG_DIR);
  CHECK(s.width == 366.0);
  CHECK(s.height == 366.0);
  CHECK(s.usv_velocity == 6.0);
  CHECK(s.target_velocity == 3.0);
  bool any_dynamic = false;
  for (const env::Obstacle& ob : s.obstacles) {
    double speed = std::hypot(ob.velocity.x, ob.velocity.y);
    CHECK(speed <= 5.6 + 1e-9);
    if (ob.dynamic) {
      any_dynamic = true;
      CHECK(ob.speed_cap <= 5.6 + 1e-9);
    } else {
      CHECK(speed == 0.0);
    }
  }
  CHECK(any_dynamic);
}

TEST_CASE("unknown preset is rejected") {
  CHECK_THROWS_AS(env::make_scenario("medium", 0, OKAYPLAN_CONFIG_DIR),
                  std::invalid_argument);
}

TEST_CASE("usv advances exactly its velocity of arc length per tick") {
  env::Episode ep(open_water({0, 0}, {300, 0}));
  std::vector<Point> straight{{150, 0}};
  ep.step(straight);
  CHECK(ep.usv().x == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(ep.usv().y == 0.0);
  CHECK(ep.travel_distance() == 6.0);
  ep.step(straight);
  CHECK(ep.usv().x == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(ep.travel_distance() == 12.0);
}

TEST_CASE("usv follows the polyline through corners") {
  env::Episode ep(open_water({0, 0}, {4, 100}));
  // 4 m up the first hop, then 2 m along the second
  std::vector<Point> path{{0, 4}, {4, 4}};
  ep.step(path);
  CHECK(ep.usv().x == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ep.usv().y == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("entering an obstacle collides") {
  env::Scenario s = open_water({0, 0}, {300, 0});
  s.obstacles.push_back({{{3, -10}, {30, -10}, {30, 10}, {3, 10}}, {0, 0}});
  env::Episode ep(s);
  ep.step(std::vector<Point>{{150, 0}});
  CHECK(ep.status() == env::Status::collided);
}

TEST_CASE("arrival within the radius, with travel bookkeeping") {
  env::Episode ep(open_water({0, 0}, {10, 0}));
  std::vector<Point> straight{{5, 0}};
  ep.step(straight);  // at x=6, 4 m from the target
  CHECK(ep.status() == env::Status::arrived);
  CHECK(ep.travel_distance() == doctest::Approx(6.0 * ep.tick()).epsilon(1e-9));
  CHECK_THROWS_AS(ep.step(straight), std::logic_error);
}

TEST_CASE("timeout after max_ticks") {
  env::Scenario s = open_water({0, 0}, {300, 0});
  s.max_ticks = 3;
  env::Episode ep(s);
  while (ep.status() == env::Status::running) ep.step(std::vector<Point>{{0, 200}});
  CHECK(ep.status() == env::Status::timeout);
  CHECK(ep.tick() == 3);
}

TEST_CASE("observe reports the usv as the planning start") {
  env::Scenario s = env::make_scenario("simple", 0, OKAYPLAN_CONFIG_DIR);
  env::Episode ep(s);
  env::Observation obs = ep.observe();
  CHECK(obs.start.x == s.start.x);
  CHECK(obs.start.y == s.start.y);
  CHECK(obs.target.x == s.target.x);
  REQUIRE(obs.obstacles.size() == s.obstacles.size());
  for (std::size_t i = 0; i < obs.obstacles.size(); ++i) {
    CHECK(obs.obstacles[i].velocity.x == ep.obstacles()[i].velocity.x);
    CHECK(obs.obstacles[i].velocity.y == ep.obstacles()[i].velocity.y);
  }

  ep.step(std::vector<Point>{obs.target});
  env::Observation after = ep.observe();
  CHECK(after.start.x == ep.usv().x);
  CHECK(after.start.y == ep.usv().y);
  CHECK(geom::dist(obs.start, after.start) == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("obstacles and target never leave the world") {
  env::Scenario s = env::make_scenario("complex", 5, OKAYPLAN_CONFIG_DIR);
  env::Episode ep(s);
  std::vector<Point> loiter{{s.start.x, s.start.y}};
  for (int t = 0; t < 200 && ep.status() == env::Status::running; ++t) {
    ep.step(loiter);
    for (const env::Obstacle& ob : ep.obstacles())
      for (const Point& v : ob.vertices) {
        CHECK(v.x >= -1e-9);
        CHECK(v.x <= s.width + 1e-9);
        CHECK(v.y >= -1e-9);
        CHECK(v.y <= s.height + 1e-9);
      }
    CHECK(ep.target().x >= 0.0);
    CHECK(ep.target().x <= s.width);
    CHECK(ep.target().y >= 0.0);
    CHECK(ep.target().y <= s.height);
  }
}

TEST_CASE("target keeps its commanded speed in open water") {
  env::Scenario s = open_water({0, 0}, {200, 200}, 3.0);
  env::Episode ep(s);
  Point before = ep.target();
  ep.step(std::vector<Point>{{100, 100}});
  CHECK(geom::dist(before, ep.target()) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("episode replay is bit-identical for the same seed") {
  auto run = [] {
    env::Scenario s = env::make_scenario("complex", 9, OKAYPLAN_CONFIG_DIR);
    env::Episode ep(s);
    std::vector<double> sig;
    for (int t = 0; t < 50 && ep.status() == env::Status::running; ++t) {
      ep.step(std::vector<Point>{{200, 200}});
      sig.push_back(ep.target().x);
      sig.push_back(ep.target().y);
      for (const env::Obstacle& ob : ep.obstacles()) sig.push_back(ob.vertices[0].x);
    }
    return sig;
  };
  CHECK(run() == run());
}

TEST_CASE("scenario json round trips through the loader") {
  const char* text = R"({
    "width": 100, "height": 80,
    "start": [5, 5], "target": [90, 70],
    "usv_velocity": 6.0, "target_velocity": 3.0,
    "max_ticks": 250, "arrival_radius": 4.5,
    "obstacles": [
      {"vertices": [[10,10],[20,10],[20,20],[10,20]]},
      {"vertices": [[40,40],[50,40],[50,50],[40,50]],
       "speed_range": [1.0, 2.0], "motion_mode": "random"}
    ]
  })";
  env::Scenario s = env::load_scenario_json(text, 12);
  CHECK(s.width == 100.0);
  CHECK(s.height == 80.0);
  CHECK(s.max_ticks == 250);
  CHECK(s.arrival_radius == 4.5);
  REQUIRE(s.obstacles.size() == 2);
  CHECK_FALSE(s.obstacles[0].dynamic);
  CHECK(s.obstacles[1].dynamic);
  CHECK(s.obstacles[1].motion_mode == env::MotionMode::random);
  double speed = std::hypot(s.obstacles[1].velocity.x, s.obstacles[1].velocity.y);
  CHECK(speed >= 1.0 - 1e-9);
  CHECK(speed <= 2.0 + 1e-9);

  env::Scenario again = env::load_scenario_json(text, 12);
  CHECK(env::scenario_to_json(s) == env::scenario_to_json(again));
}

TEST_CASE("degenerate obstacle polygons are rejected") {
  const char* text = R"({
    "width": 100, "height": 80, "start": [5,5], "target": [90,70],
    "usv_velocity": 6.0, "target_velocity": 3.0,
    "obstacles": [{"vertices": [[10,10],[20,10]]}]
  })";
  CHECK_THROWS_AS(env::load_scenario_json(text, 0), std::invalid_argument);
}

}  // TEST_SUITE
