#pragma once

#include <string>
#include <vector>

#include "okayplan/params_io.hpp"
#include "okayplan/planner.hpp"

namespace okayplan::hsef {

/// Search box for each of the 53 hyperparameter components. The defaults
/// cover the published values with room to move; they are ours, not
/// published numbers.
swarm::Bounds default_xi_bounds(int groups);

struct EvolutionConfig {
  int h_groups = 8;
  int h_particles = 10;
  double lambda = 0.4;          // (0,1] for this negative-fitness problem
  int generations = 300;
  std::string preset = "simple";
  std::string config_dir;
  std::vector<std::uint64_t> episode_seeds = {0, 1, 2};
  std::uint64_t seed = 0;       // evolution seed
  int max_ticks = 0;            // episode tick cap override; 0 keeps the preset's
  /// L-SEPSO shape/budget used while scoring candidates.
  plan::PlannerConfig planner_base = plan::PlannerConfig::defaults();
  /// H-SEPSO's own search parameters (shipped defaults, user-editable).
  std::vector<swarm::GroupParams> h_search_params;
  swarm::Bounds xi_bounds;
  /// Optional progress hook, called once per generation.
  std::function<void(const struct GenerationStats&)> on_generation;

  static EvolutionConfig defaults();
};

struct GenerationStats {
  int generation;
  double mean_fitness;  // over the whole population, this generation
  double best_fitness;  // U^Tbest so far
};

struct EvolutionResult {
  params::HyperParams best;
  double best_fitness = 0.0;
  std::vector<GenerationStats> history;
};

/// Mean Eq.-13 score of full episodes over the configured seeds: 0 on
/// collision or timeout, -1/delta on arrival. Always <= 0. `eval_salt`
/// decorrelates the planner stream between re-evaluations of the same xi.
double score_xi(const params::HyperParams& xi, const EvolutionConfig& cfg,
                std::uint64_t eval_salt, ThreadPool* pool = nullptr);

/// H-SEPSO over the flat 53-vector with relaxation-based best updating.
EvolutionResult evolve(const EvolutionConfig& cfg, ThreadPool* pool = nullptr);

struct GridSearchRow {
  double lambda;
  std::uint64_t seed;
  int generation;
  double mean_fitness;
  double best_fitness;
};

/// One evolve() per (lambda, evolution seed); rows ordered lambda-major.
std::vector<GridSearchRow> lambda_grid_search(std::span<const double> lambdas,
                                              std::span<const std::uint64_t> seeds,
                                              const EvolutionConfig& base,
                                              ThreadPool* pool = nullptr);

}  // namespace okayplan::hsef
