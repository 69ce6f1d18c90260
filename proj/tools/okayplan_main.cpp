#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "json.hpp"
#include "okayplan/baselines.hpp"
#include "okayplan/cli_util.hpp"
#include "okayplan/hsef.hpp"
#include "okayplan/render.hpp"

namespace fs = std::filesystem;
using namespace okayplan;

namespace {

constexpr const char* kVersion = "0.1.0";

void write_manifest(const std::string& out_dir, const std::string& command,
                    const std::map<std::string, std::string>& args) {
  nlohmann::json j;
  j["command"] = command;
  j["args"] = args;
  j["version"] = kVersion;
  auto now = std::chrono::system_clock::now();
  j["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                       now.time_since_epoch())
                       .count();
  std::ofstream out(out_dir + "/manifest.json");
  out << j.dump(2) << "\n";
}

plan::PlannerConfig build_planner_config(const std::string& params_file, bool no_okaop,
                                         bool no_dyn_norm, bool no_dpi, double gamma,
                                         double rho, int particles, int iterations) {
  plan::PlannerConfig cfg = plan::PlannerConfig::defaults();
  if (!params_file.empty()) {
    params::HyperParams p = params::load_file(params_file);
    cfg.gpp = p.gpp;
    cfg.group_params = p.theta;
    cfg.groups = static_cast<int>(p.theta.size());
  }
  if (particles > 0) cfg.particles = particles;
  if (iterations > 0) cfg.max_iterations = iterations;
  if (no_okaop) cfg.gpp.mu = 0.0;
  if (no_dyn_norm) cfg.norm_mode = fitness::NormMode::fixed_initial;
  if (no_dpi) cfg.init_mode = plan::InitMode::pi;
  cfg.pi_gamma = gamma;
  cfg.pi_rho = rho;
  return cfg;
}

int cmd_plan(const std::string& preset, const std::string& scenario_file,
             std::uint64_t seed, const plan::PlannerConfig& cfg,
             const std::string& out_dir, const std::string& config_dir,
             const std::map<std::string, std::string>& manifest_args) {
  env::Scenario scn = scenario_file.empty()
                          ? env::make_scenario(preset, seed, config_dir)
                          : env::load_scenario_file(scenario_file, seed);
  fs::create_directories(out_dir);
  std::ofstream trace(out_dir + "/trace.jsonl");
  plan::OkayPlanner planner(cfg, Rng::derive(seed, 0x60a1));
  plan::EpisodeMetrics m = plan::run_episode(
      scn, planner,
      [&](const plan::TickRecord& rec) { trace << render::record_to_jsonl(rec) << "\n"; });
  write_manifest(out_dir, "plan", manifest_args);

  std::printf("status:               %s\n", env::status_name(m.status));
  std::printf("fitness:              %.6g\n", m.fitness);
  std::printf("arrived_travel_dist:  %.6g m\n", m.arrived ? m.travel_distance : 0.0);
  std::printf("arrival:              %s\n", m.arrived ? "yes" : "no");
  std::printf("time_per_planning:    %.6f s (std %.6f)\n", m.mean_plan_time_s,
              m.std_plan_time_s);
  std::printf("ticks:                %d\n", m.ticks);
  std::printf("trace:                %s/trace.jsonl\n", out_dir.c_str());
  return 0;
}

void write_comparison_csv(const std::string& path,
                          const std::vector<baselines::ComparisonRow>& rows) {
  std::ofstream out(path);
  out << "# schema: okayplan/comparison v1\n";
  out << "algorithm,seed,fitness,arrived,travel_distance_m,mean_plan_time_s,"
         "std_plan_time_s\n";
  char line[256];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%s,%llu,%.10g,%d,%.10g,%.6f,%.6f\n",
                  r.algorithm.c_str(), static_cast<unsigned long long>(r.seed),
                  r.fitness, r.arrived ? 1 : 0, r.travel_distance_m,
                  r.mean_plan_time_s, r.std_plan_time_s);
    out << line;
  }
}

void print_summary(const std::vector<baselines::ComparisonRow>& rows) {
  std::map<std::string, std::vector<const baselines::ComparisonRow*>> by_alg;
  for (const auto& r : rows) by_alg[r.algorithm].push_back(&r);
  std::printf("%-22s %12s %14s %18s %10s\n", "algorithm", "fitness", "arrival_rate",
              "arrived_dist_m", "time_s");
  for (const auto& [alg, rs] : by_alg) {
    double fit = 0, dist = 0, t = 0;
    int arrived = 0;
    for (const auto* r : rs) {
      fit += r->fitness;
      t += r->mean_plan_time_s;
      if (r->arrived) {
        dist += r->travel_distance_m;
        ++arrived;
      }
    }
    std::printf("%-22s %12.6g %14.3f %18.6g %10.4f\n", alg.c_str(), fit / rs.size(),
                static_cast<double>(arrived) / rs.size(),
                arrived ? dist / arrived : 0.0, t / rs.size());
  }
}

void write_history_csv(const std::string& path,
                       const std::vector<hsef::GridSearchRow>& rows) {
  std::ofstream out(path);
  out << "# schema: okayplan/history v1\n";
  out << "lambda,seed,generation,mean_fitness,best_fitness\n";
  char line[160];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%.10g,%llu,%d,%.10g,%.10g\n", r.lambda,
                  static_cast<unsigned long long>(r.seed), r.generation,
                  r.mean_fitness, r.best_fitness);
    out << line;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OkayPlan: real-time global path planning in dynamic 2D worlds"};
  app.require_subcommand(1);

  std::string preset = "simple", scenario_file, params_file, out_dir, config_dir;
  std::string seeds_spec = "0..99", algos_spec = "okayplan,astar,rrt,rrt_star";
  std::string lambdas_spec, trace_file, params_norelax;
  std::string episode_seeds_spec = "0..2";
  std::uint64_t seed = 0;
  double gamma = 0.3, rho = 20.0, lambda = 0.4;
  double width = 366.0, height = 366.0, iota = 5.2032;
  int jobs = 0, generations = 300, particles = 0, iterations = 0;
  int h_groups = 8, h_particles = 10, max_ticks = 0;
  bool no_okaop = false, no_dyn_norm = false, no_dpi = false, ablations = false;

  auto add_planner_flags = [&](CLI::App* cmd) {
    cmd->add_option("--params", params_file, "hyperparameter file (JSON)");
    cmd->add_flag("--no-okaop", no_okaop, "ablation: kinematic penalty off (mu=0)");
    cmd->add_flag("--no-dyn-norm", no_dyn_norm, "ablation: freeze eta at episode start");
    cmd->add_flag("--no-dpi", no_dpi, "ablation: legacy PI initialization");
    cmd->add_option("--gamma", gamma, "PI prioritized fraction");
    cmd->add_option("--rho", rho, "PI band half-width (m)");
    cmd->add_option("--particles", particles, "particles per group");
    cmd->add_option("--iterations", iterations, "max iterations per planning");
    cmd->add_option("--config-dir", config_dir, "preset config directory");
  };

  CLI::App* cplan = app.add_subcommand("plan", "run one episode and dump its trace");
  cplan->add_option("--preset", preset, "simple|complex");
  cplan->add_option("--scenario", scenario_file, "scenario file (overrides preset)");
  cplan->add_option("--seed", seed, "scenario seed");
  cplan->add_option("--out", out_dir, "output directory")->default_val("out_plan");
  add_planner_flags(cplan);

  CLI::App* cbench = app.add_subcommand("bench", "comparison/ablation sweep");
  cbench->add_option("--preset", preset, "simple|complex");
  cbench->add_option("--seeds", seeds_spec, "seed range a..b or list");
  cbench->add_option("--algos", algos_spec, "comma list of algorithms");
  cbench->add_flag("--ablations", ablations, "run full + the four ablation rows");
  cbench->add_option("--params-norelax", params_norelax,
                     "params evolved with lambda=1 (for the no-relax row)");
  cbench->add_option("--jobs", jobs, "worker count (OKAYPLAN_THREADS overrides)");
  cbench->add_option("--out", out_dir, "output directory")->default_val("out_bench");
  add_planner_flags(cbench);

  CLI::App* cevolve = app.add_subcommand("evolve", "offline hyperparameter evolution");
  cevolve->add_option("--lambda", lambda, "relaxation parameter in (0,1]");
  cevolve->add_option("--generations", generations, "generation budget");
  cevolve->add_option("--preset", preset, "simple|complex");
  cevolve->add_option("--seed", seed, "evolution seed");
  cevolve->add_option("--episode-seeds", episode_seeds_spec,
                      "scenario seeds per evaluation");
  cevolve->add_option("--h-groups", h_groups, "H-SEPSO groups");
  cevolve->add_option("--h-particles", h_particles, "H-SEPSO particles per group");
  cevolve->add_option("--max-ticks", max_ticks, "episode tick cap override");
  cevolve->add_option("--jobs", jobs, "worker count");
  cevolve->add_option("--out", out_dir, "output directory")->default_val("out_evolve");
  add_planner_flags(cevolve);

  CLI::App* cgrid = app.add_subcommand("lambda-grid", "grid search over lambda");
  cgrid->add_option("--lambdas", lambdas_spec, "comma list of lambda values")
      ->default_val("0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0");
  cgrid->add_option("--seeds", seeds_spec, "evolution seeds")->default_val("0..4");
  cgrid->add_option("--generations", generations, "generations per evolution");
  cgrid->add_option("--preset", preset, "simple|complex");
  cgrid->add_option("--episode-seeds", episode_seeds_spec,
                    "scenario seeds per evaluation");
  cgrid->add_option("--jobs", jobs, "worker count");
  cgrid->add_option("--max-ticks", max_ticks, "episode tick cap override");
  cgrid->add_option("--out", out_dir, "output directory")->default_val("out_grid");
  add_planner_flags(cgrid);

  CLI::App* crender = app.add_subcommand("render", "SVG frames from an episode trace");
  crender->add_option("trace", trace_file, "trace.jsonl file")->required();
  crender->add_option("--out", out_dir, "output directory")->default_val("out_render");
  crender->add_option("--width", width, "world width (m)");
  crender->add_option("--height", height, "world height (m)");
  crender->add_option("--iota", iota, "kinematic segment scale for drawing");

  CLI11_PARSE(app, argc, argv);

  try {
    std::map<std::string, std::string> margs = {
        {"preset", preset},       {"params", params_file},
        {"seeds", seeds_spec},    {"config_dir", config_dir},
        {"out", out_dir},
    };

    if (*cplan) {
      margs["seed"] = std::to_string(seed);
      margs["no_okaop"] = no_okaop ? "1" : "0";
      margs["no_dyn_norm"] = no_dyn_norm ? "1" : "0";
      margs["no_dpi"] = no_dpi ? "1" : "0";
      plan::PlannerConfig cfg = build_planner_config(
          params_file, no_okaop, no_dyn_norm, no_dpi, gamma, rho, particles, iterations);
      return cmd_plan(preset, scenario_file, seed, cfg, out_dir, config_dir, margs);
    }

    ThreadPool pool(ThreadPool::resolve_jobs(jobs));

    if (*cbench) {
      baselines::ComparisonSpec spec;
      spec.preset = preset;
      spec.config_dir = config_dir;
      spec.seeds = cli::parse_seed_range(seeds_spec);
      spec.okayplan_cfg = build_planner_config(params_file, no_okaop, no_dyn_norm,
                                               no_dpi, gamma, rho, particles, iterations);
      if (ablations) {
        spec.algorithms = {"okayplan", "okayplan_no_okaop", "okayplan_no_dyn_norm",
                           "okayplan_no_dpi", "okayplan_no_relax"};
        std::string norelax = params_norelax;
        if (norelax.empty())
          norelax = (config_dir.empty() ? env::default_config_dir() : config_dir) +
                    "/params_lambda1.json";
        plan::PlannerConfig cfg = spec.okayplan_cfg;
        params::HyperParams p = params::load_file(norelax);
        cfg.gpp = p.gpp;
        cfg.group_params = p.theta;
        spec.no_relax_cfg = cfg;
        margs["params_norelax"] = norelax;
      } else {
        spec.algorithms = cli::split_list(algos_spec);
        margs["algos"] = algos_spec;
      }
      auto rows = baselines::run_comparison(spec, pool);
      fs::create_directories(out_dir);
      write_comparison_csv(out_dir + "/comparison.csv", rows);
      write_manifest(out_dir, "bench", margs);
      print_summary(rows);
      return 0;
    }

    if (*cevolve || *cgrid) {
      hsef::EvolutionConfig cfg = hsef::EvolutionConfig::defaults();
      cfg.preset = preset;
      cfg.config_dir = config_dir;
      cfg.generations = generations;
      cfg.h_groups = h_groups;
      cfg.h_particles = h_particles;
      cfg.planner_base = build_planner_config(params_file, false, false, false, gamma,
                                              rho, particles, iterations);
      cfg.max_ticks = max_ticks;
      cfg.episode_seeds = cli::parse_seed_range(episode_seeds_spec);
      cfg.on_generation = [](const hsef::GenerationStats& s) {
        std::fprintf(stderr, "gen %4d  mean %.6g  best %.6g\n", s.generation,
                     s.mean_fitness, s.best_fitness);
      };
      fs::create_directories(out_dir);

      if (*cevolve) {
        cfg.lambda = lambda;
        cfg.seed = seed;
        margs["lambda"] = std::to_string(lambda);
        margs["generations"] = std::to_string(generations);
        hsef::EvolutionResult res = hsef::evolve(cfg, &pool);
        params::save_file(res.best, out_dir + "/params.json");
        std::vector<hsef::GridSearchRow> rows;
        for (const auto& h : res.history)
          rows.push_back({cfg.lambda, cfg.seed, h.generation, h.mean_fitness,
                          h.best_fitness});
        write_history_csv(out_dir + "/history.csv", rows);
        write_manifest(out_dir, "evolve", margs);
        std::printf("best fitness: %.6g\nparams: %s/params.json\n", res.best_fitness,
                    out_dir.c_str());
        return 0;
      }

      auto lambdas = cli::parse_double_list(lambdas_spec);
      for (double l : lambdas)
        if (l <= 0.0 || l > 1.0)
          throw std::invalid_argument("lambda out of (0,1]: " + std::to_string(l));
      auto evo_seeds = cli::parse_seed_range(seeds_spec);
      margs["lambdas"] = lambdas_spec;
      margs["generations"] = std::to_string(generations);
      auto rows = hsef::lambda_grid_search(lambdas, evo_seeds, cfg, &pool);
      write_history_csv(out_dir + "/history.csv", rows);
      write_manifest(out_dir, "lambda-grid", margs);
      return 0;
    }

    if (*crender) {
      render::RenderOptions opt;
      opt.kinematic_iota = iota;
      int frames = render::render_trace(trace_file, out_dir, width, height, opt);
      std::printf("wrote %d frames to %s\n", frames, out_dir.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
