#include "okayplan/hsef.hpp"

#include <stdexcept>

namespace okayplan::hsef {

swarm::Bounds default_xi_bounds(int groups) {
  swarm::Bounds b;
  auto push = [&](double lo, double hi) {
    b.lo.push_back(lo);
    b.hi.push_back(hi);
  };
  push(0.0, 10.0);  // alpha
  push(1.0, 8.0);   // beta
  push(0.0, 10.0);  // mu
  push(1.0, 8.0);   // nu
  push(0.0, 10.0);  // iota
  for (int g = 0; g < groups; ++g) {
    push(1.0, 2.0);   // c1
    push(1.0, 2.0);   // c2
    push(1.0, 2.0);   // c3
    push(0.1, 0.9);   // omega_init
    push(0.1, 0.9);   // omega_end
    push(0.1, 0.8);   // v_limit
  }
  return b;
}

EvolutionConfig EvolutionConfig::defaults() {
  EvolutionConfig cfg;
  cfg.h_search_params = params::default_params().theta;
  cfg.xi_bounds = default_xi_bounds(cfg.planner_base.groups);
  return cfg;
}

double score_xi(const params::HyperParams& xi, const EvolutionConfig& cfg,
                std::uint64_t eval_salt, ThreadPool* pool) {
  plan::PlannerConfig pcfg = cfg.planner_base;
  if (static_cast<int>(xi.theta.size()) != pcfg.groups)
    throw std::invalid_argument("score_xi: xi group count != planner groups");
  pcfg.gpp = xi.gpp;
  pcfg.group_params = xi.theta;

  const int n = static_cast<int>(cfg.episode_seeds.size());
  std::vector<double> scores(n, 0.0);
  auto eval_one = [&](int i) {
    std::uint64_t scn_seed = cfg.episode_seeds[i];
    env::Scenario scn = env::make_scenario(cfg.preset, scn_seed, cfg.config_dir);
    if (cfg.max_ticks > 0) scn.max_ticks = cfg.max_ticks;
    plan::OkayPlanner planner(pcfg, Rng::derive(cfg.seed, eval_salt, scn_seed));
    plan::EpisodeMetrics m = plan::run_episode(scn, planner);
    scores[i] = m.fitness;  // 0 on collide/timeout, -1/delta on arrival
  };
  if (pool)
    pool->run_indexed(n, eval_one);
  else
    for (int i = 0; i < n; ++i) eval_one(i);

  double sum = 0.0;
  for (double s : scores) sum += s;
  return sum / n;
}

EvolutionResult evolve(const EvolutionConfig& cfg, ThreadPool* pool) {
  if (cfg.lambda <= 0.0 || cfg.lambda > 1.0)
    throw std::invalid_argument("evolve: lambda must be in (0,1]");
  if (static_cast<int>(cfg.h_search_params.size()) != cfg.h_groups)
    throw std::invalid_argument("evolve: h_search_params size != h_groups");
  const int dims = 5 + cfg.planner_base.groups * 6;
  if (cfg.xi_bounds.lo.size() != static_cast<std::size_t>(dims))
    throw std::invalid_argument("evolve: xi_bounds size mismatch");

  auto state = swarm::SwarmState::make(cfg.h_groups, cfg.h_particles, dims,
                                       cfg.xi_bounds);
  std::vector<Rng> group_rngs;
  for (int g = 0; g < cfg.h_groups; ++g)
    group_rngs.emplace_back(Rng::derive(cfg.seed, 0xa5e, g));
  Rng relax_rng(Rng::derive(cfg.seed, 0x51));

  for (int g = 0; g < cfg.h_groups; ++g) {
    Rng& rng = group_rngs[g];
    for (int n = 0; n < cfg.h_particles; ++n) {
      double* xrow = &state.x[state.idx(g, n)];
      double* vrow = &state.v[state.idx(g, n)];
      for (int d = 0; d < dims; ++d) {
        xrow[d] = rng.uniform(state.bounds.lo[d], state.bounds.hi[d]);
        double vcap = cfg.h_search_params[g].v_limit *
                      (state.bounds.hi[d] - state.bounds.lo[d]);
        vrow[d] = rng.uniform(-vcap, vcap);
      }
    }
  }

  EvolutionResult result;
  const int pop = cfg.h_groups * cfg.h_particles;
  std::vector<double> scores(pop);
  for (int gen = 0; gen < cfg.generations; ++gen) {
    auto score_particle = [&](int i) {
      std::span<const double> row(&state.x[static_cast<std::size_t>(i) * dims], dims);
      params::HyperParams xi =
          params::HyperParams::from_flat(row, cfg.planner_base.groups);
      scores[i] = score_xi(xi, cfg, Rng::derive(0x9e, gen, i));
    };
    if (pool)
      pool->run_indexed(pop, score_particle);
    else
      for (int i = 0; i < pop; ++i) score_particle(i);

    swarm::update_bests_relaxed(state, scores, cfg.lambda, relax_rng);

    double mean = 0.0;
    for (double s : scores) mean += s;
    mean /= pop;
    GenerationStats stats{gen, mean, state.tbest_val};
    result.history.push_back(stats);
    if (cfg.on_generation) cfg.on_generation(stats);

    swarm::update_swarm(state, cfg.h_search_params, cfg.generations, group_rngs);
  }

  result.best = params::HyperParams::from_flat(state.tbest_pos, cfg.planner_base.groups);
  result.best_fitness = state.tbest_val;
  return result;
}

std::vector<GridSearchRow> lambda_grid_search(std::span<const double> lambdas,
                                              std::span<const std::uint64_t> seeds,
                                              const EvolutionConfig& base,
                                              ThreadPool* pool) {
  std::vector<GridSearchRow> rows;
  for (double lambda : lambdas) {
    for (std::uint64_t seed : seeds) {
      EvolutionConfig cfg = base;
      cfg.lambda = lambda;
      cfg.seed = seed;
      EvolutionResult res = evolve(cfg, pool);
      for (const GenerationStats& s : res.history)
        rows.push_back({lambda, seed, s.generation, s.mean_fitness, s.best_fitness});
    }
  }
  return rows;
}

}  // namespace okayplan::hsef
