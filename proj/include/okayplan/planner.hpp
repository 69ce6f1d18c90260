#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "okayplan/environment.hpp"
#include "okayplan/fitness.hpp"
#include "okayplan/parallel.hpp"
#include "okayplan/swarm.hpp"

namespace okayplan::plan {

enum class InitMode { dpi, pi, random_uniform };

struct PlannerConfig {
  int groups = 8;
  int particles = 170;
  int dims = 16;          // waypoints = dims/2
  int max_iterations = 50;
  // early exit needs a collision- and kinematics-clear best path plus this
  // many iterations of length refinement
  int min_iterations = 10;
  fitness::GppParams gpp;
  std::vector<swarm::GroupParams> group_params;  // theta_1..theta_G
  InitMode init_mode = InitMode::dpi;
  double pi_gamma = 0.3;  // non-paper defaults, config-exposed
  double pi_rho = 20.0;
  fitness::NormMode norm_mode = fitness::NormMode::dynamic;

  static PlannerConfig defaults();
};

struct PlanResult {
  geom::Path path;
  double fitness = 0.0;
  int iterations = 0;
  double wall_time_s = 0.0;
};

/// Per-tick planner interface shared by OkayPlan and the baselines.
class PathPlanner {
 public:
  virtual ~PathPlanner() = default;
  virtual PlanResult plan(const env::Observation& obs) = 0;
  virtual void reset() = 0;
  virtual std::string name() const = 0;
};

/// Particle 0 of every group inherits prev (or the straight start->target
/// line with equally spaced waypoints on the first tick); the rest scatter
/// uniformly inside the disk spanned by start and target.
void dpi_initialize(swarm::SwarmState& state, const std::optional<geom::Path>& prev,
                    const geom::Point& start, const geom::Point& target,
                    std::span<Rng> group_rngs);

/// Legacy mechanism: floor(gamma*N) particles per group in the axis-aligned
/// band of half-width rho around prev's waypoints, the rest uniform over the
/// search box. Falls back to all-uniform when prev is absent.
void pi_initialize(swarm::SwarmState& state, const std::optional<geom::Path>& prev,
                   double gamma, double rho, std::span<Rng> group_rngs);

/// The application-phase OkayPlan loop.
class OkayPlanner : public PathPlanner {
 public:
  OkayPlanner(PlannerConfig cfg, std::uint64_t seed, ThreadPool* pool = nullptr);

  PlanResult plan(const env::Observation& obs) override;
  void reset() override;
  std::string name() const override { return "okayplan"; }

  const PlannerConfig& config() const { return cfg_; }
  const std::optional<geom::Path>& previous_best() const { return prev_best_; }

 private:
  PlannerConfig cfg_;
  std::uint64_t seed_;
  std::vector<Rng> group_rngs_;
  std::optional<geom::Path> prev_best_;
  double initial_eta_ = -1.0;
  ThreadPool* pool_;
};

struct EpisodeMetrics {
  double fitness = 0.0;  // 0 unless arrived, then -1/delta
  double travel_distance = 0.0;
  bool arrived = false;
  env::Status status = env::Status::running;
  int ticks = 0;
  double mean_plan_time_s = 0.0;
  double std_plan_time_s = 0.0;
};

/// Receives one record per executed tick; used for trace files and rendering.
struct TickRecord {
  int tick;
  geom::Point usv;
  geom::Point target;
  geom::Path path;
  std::vector<geom::MovingPolygon> obstacles;
  double fitness;
  env::Status status_after;
};
using TraceSink = std::function<void(const TickRecord&)>;

/// observe -> plan -> step until terminal.
EpisodeMetrics run_episode(const env::Scenario& scenario, PathPlanner& planner,
                           const TraceSink& trace = {});

std::unique_ptr<PathPlanner> make_okayplanner(const PlannerConfig& cfg,
                                              std::uint64_t seed,
                                              ThreadPool* pool = nullptr);

}  // namespace okayplan::plan
