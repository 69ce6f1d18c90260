#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "okayplan/planner.hpp"

namespace okayplan::baselines {

/// Occupancy grid rasterized from the current obstacle polygons; a cell is
/// occupied iff it intersects any polygon.
struct GridMap {
  double resolution = 2.0;
  int cols = 0;
  int rows = 0;
  std::vector<std::uint8_t> occupied;  // row-major, rows * cols

  bool at(int cx, int cy) const {
    return occupied[static_cast<std::size_t>(cy) * cols + cx] != 0;
  }
  geom::Point cell_center(int cx, int cy) const {
    return {(cx + 0.5) * resolution, (cy + 0.5) * resolution};
  }

  static GridMap rasterize(const env::Observation& obs, double resolution);
};

/// 8-connected shortest path, corner cutting forbidden. Dijkstra is the
/// zero-heuristic special case. Returns the cell-center polyline and its
/// metric cost, or nullopt when start/target are blocked or disconnected.
struct GridPath {
  std::vector<geom::Point> polyline;
  double cost = 0.0;
};
std::optional<GridPath> astar_plan(const GridMap& grid, const geom::Point& start,
                                   const geom::Point& target, bool use_heuristic);

struct RrtConfig {
  double step_size = 10.0;
  double goal_bias = 0.1;
  int max_samples = 2000;
  double rewire_radius = 20.0;  // RRT* only
};

/// Plain RRT and RRT*. Both place identical nodes for the same seed; RRT*
/// additionally optimizes parents, so its returned cost never exceeds RRT's.
std::optional<GridPath> rrt_plan(const env::Observation& obs, const geom::Point& start,
                                 const geom::Point& target, bool star,
                                 const RrtConfig& cfg, Rng& rng);

/// Arc-length resampling to a fixed waypoint count (metric parity with the
/// D/2-waypoint encoding).
geom::Path resample_polyline(std::span<const geom::Point> polyline, int waypoints);

struct BaselineConfig {
  double grid_resolution = 2.0;
  RrtConfig rrt;
  int waypoints = 8;
};

/// algorithm in {astar, dijkstra, rrt, rrt_star}. On planning failure the
/// previous path is kept (straight line before the first success).
std::unique_ptr<plan::PathPlanner> make_baseline(const std::string& algorithm,
                                                 const BaselineConfig& cfg,
                                                 std::uint64_t seed);

struct ComparisonRow {
  std::string algorithm;
  std::uint64_t seed;
  double fitness;
  bool arrived;
  double travel_distance_m;
  double mean_plan_time_s;
  double std_plan_time_s;
};

/// One episode per (algorithm, seed). Algorithms named okayplan* run the full
/// planner (okayplan, okayplan_no_okaop, okayplan_no_dyn_norm, okayplan_no_dpi,
/// okayplan_no_relax use their ablated configs).
struct ComparisonSpec {
  std::vector<std::string> algorithms;
  std::string preset;
  std::string config_dir;
  std::vector<std::uint64_t> seeds;
  plan::PlannerConfig okayplan_cfg;
  std::optional<plan::PlannerConfig> no_relax_cfg;  // params evolved at lambda=1
  BaselineConfig baseline_cfg;
};
std::vector<ComparisonRow> run_comparison(const ComparisonSpec& spec, ThreadPool& pool);

/// Maps an algorithm name to a ready planner; shared by bench and tests.
std::unique_ptr<plan::PathPlanner> make_named_planner(const std::string& algorithm,
                                                      const ComparisonSpec& spec,
                                                      std::uint64_t seed,
                                                      ThreadPool* pool);

}  // namespace okayplan::baselines
