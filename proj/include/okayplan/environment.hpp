#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "okayplan/geometry.hpp"
#include "okayplan/rng.hpp"

namespace okayplan::env {

enum class MotionMode { consistent, random };

struct Obstacle {
  std::vector<geom::Point> vertices;  // simple polygon, >= 3 vertices
  geom::Point velocity;               // meters per tick; zero for static
  MotionMode motion_mode = MotionMode::consistent;
  bool dynamic = false;
  double speed_cap = 0.0;  // upper bound for random re-draws
};

struct Scenario {
  double width = 366.0;
  double height = 366.0;
  std::vector<Obstacle> obstacles;
  geom::Point start;
  geom::Point target;
  double target_velocity = 3.0;  // meters per tick
  double usv_velocity = 6.0;     // meters per tick
  std::uint64_t seed = 0;
  int max_ticks = 500;
  double arrival_radius = 6.0;
};

enum class Status { running, arrived, collided, timeout };

const char* status_name(Status s);

/// Immutable snapshot handed to planners each tick. `start` is the USV's
/// current position (replanning always restarts from it).
struct Observation {
  geom::Point start;
  geom::Point target;
  double width = 0.0;
  double height = 0.0;
  std::vector<geom::MovingPolygon> obstacles;

  std::vector<geom::Segment> obstacle_segments() const;
};

/// Loads a preset layout file (<config_dir>/<preset>.json) and realizes it
/// deterministically for the given seed: obstacle speeds are drawn from each
/// obstacle's speed range, headings uniformly.
Scenario make_scenario(const std::string& preset, std::uint64_t seed,
                       const std::string& config_dir = {});

Scenario load_scenario_file(const std::string& path, std::uint64_t seed);
Scenario load_scenario_json(const std::string& json_text, std::uint64_t seed);
std::string scenario_to_json(const Scenario& s);

/// Directory holding the shipped preset files; OKAYPLAN_CONFIG_DIR overrides
/// the compiled-in default.
std::string default_config_dir();

/// Single-owner episode simulation. Obstacles reflect at the world bounds;
/// random movers re-draw their velocity after every move; the target follows
/// a seeded random walk at constant speed. Collision is point-in-polygon on
/// the USV point, checked after all bodies have moved.
class Episode {
 public:
  explicit Episode(Scenario scenario);

  Observation observe() const;

  /// Advances one tick: the USV moves usv_velocity meters of arc length along
  /// start->waypoints->target, then the target and obstacles move, then the
  /// terminal conditions are checked (collided > arrived > timeout).
  /// Throws std::logic_error when called on a terminal state.
  void step(std::span<const geom::Point> path_waypoints);

  Status status() const { return status_; }
  int tick() const { return tick_; }
  double travel_distance() const { return travel_; }
  const geom::Point& usv() const { return usv_; }
  const geom::Point& target() const { return target_; }
  const Scenario& scenario() const { return scn_; }
  const std::vector<Obstacle>& obstacles() const { return scn_.obstacles; }

 private:
  Scenario scn_;
  geom::Point usv_;
  geom::Point target_;
  double target_heading_;
  int tick_ = 0;
  double travel_ = 0.0;
  Status status_ = Status::running;
  Rng rng_;
};

}  // namespace okayplan::env
