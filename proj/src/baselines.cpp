#include "okayplan/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace okayplan::baselines {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

GridMap GridMap::rasterize(const env::Observation& obs, double resolution) {
  GridMap g;
  g.resolution = resolution;
  g.cols = std::max(1, static_cast<int>(std::ceil(obs.width / resolution)));
  g.rows = std::max(1, static_cast<int>(std::ceil(obs.height / resolution)));
  g.occupied.assign(static_cast<std::size_t>(g.cols) * g.rows, 0);

  for (const geom::MovingPolygon& poly : obs.obstacles) {
    double lox = poly.vertices[0].x, hix = lox, loy = poly.vertices[0].y, hiy = loy;
    for (const geom::Point& v : poly.vertices) {
      lox = std::min(lox, v.x); hix = std::max(hix, v.x);
      loy = std::min(loy, v.y); hiy = std::max(hiy, v.y);
    }
    int c0 = std::clamp(static_cast<int>(std::floor(lox / resolution)), 0, g.cols - 1);
    int c1 = std::clamp(static_cast<int>(std::floor(hix / resolution)), 0, g.cols - 1);
    int r0 = std::clamp(static_cast<int>(std::floor(loy / resolution)), 0, g.rows - 1);
    int r1 = std::clamp(static_cast<int>(std::floor(hiy / resolution)), 0, g.rows - 1);
    const std::size_t n = poly.vertices.size();
    for (int cy = r0; cy <= r1; ++cy) {
      for (int cx = c0; cx <= c1; ++cx) {
        std::size_t cell = static_cast<std::size_t>(cy) * g.cols + cx;
        if (g.occupied[cell]) continue;
        double x0 = cx * resolution, x1 = (cx + 1) * resolution;
        double y0 = cy * resolution, y1 = (cy + 1) * resolution;
        bool hit = geom::point_in_polygon({(x0 + x1) / 2, (y0 + y1) / 2}, poly.vertices);
        if (!hit) {
          geom::Segment edges[4] = {{{x0, y0}, {x1, y0}}, {{x1, y0}, {x1, y1}},
                                    {{x1, y1}, {x0, y1}}, {{x0, y1}, {x0, y0}}};
          for (std::size_t i = 0; i < n && !hit; ++i) {
            geom::Segment pe{poly.vertices[i], poly.vertices[(i + 1) % n]};
            for (const geom::Segment& ce : edges)
              if (geom::segments_intersect(pe, ce)) { hit = true; break; }
          }
        }
        if (hit) g.occupied[cell] = 1;
      }
    }
  }
  return g;
}

std::optional<GridPath> astar_plan(const GridMap& grid, const geom::Point& start,
                                   const geom::Point& target, bool use_heuristic) {
  auto to_cell = [&](const geom::Point& p, int& cx, int& cy) {
    cx = std::clamp(static_cast<int>(std::floor(p.x / grid.resolution)), 0, grid.cols - 1);
    cy = std::clamp(static_cast<int>(std::floor(p.y / grid.resolution)), 0, grid.rows - 1);
  };
  int sx, sy, tx, ty;
  to_cell(start, sx, sy);
  to_cell(target, tx, ty);
  if (grid.at(sx, sy) || grid.at(tx, ty)) return std::nullopt;

  const double res = grid.resolution;
  const double diag = res * std::numbers::sqrt2;
  const std::size_t total = static_cast<std::size_t>(grid.cols) * grid.rows;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> gcost(total, kInf);
  std::vector<int> parent(total, -1);
  auto id = [&](int x, int y) { return static_cast<std::size_t>(y) * grid.cols + x; };
  auto heuristic = [&](int x, int y) {
    if (!use_heuristic) return 0.0;
    int dx = std::abs(x - tx), dy = std::abs(y - ty);
    int dmin = std::min(dx, dy);
    return diag * dmin + res * (std::max(dx, dy) - dmin);  // octile, admissible
  };

  using QItem = std::pair<double, std::size_t>;  // (f, cell)
  std::priority_queue<QItem, std::vector<QItem>, std::greater<>> open;
  gcost[id(sx, sy)] = 0.0;
  open.push({heuristic(sx, sy), id(sx, sy)});

  const int dxs[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  const int dys[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  while (!open.empty()) {
    auto [f, cell] = open.top();
    open.pop();
    int cx = static_cast<int>(cell % grid.cols);
    int cy = static_cast<int>(cell / grid.cols);
    if (f > gcost[cell] + heuristic(cx, cy) + 1e-12) continue;  // stale entry
    if (cx == tx && cy == ty) break;
    for (int k = 0; k < 8; ++k) {
      int nx = cx + dxs[k], ny = cy + dys[k];
      if (nx < 0 || nx >= grid.cols || ny < 0 || ny >= grid.rows) continue;
      if (grid.at(nx, ny)) continue;
      bool diagonal = dxs[k] != 0 && dys[k] != 0;
      if (diagonal && (grid.at(cx + dxs[k], cy) || grid.at(cx, cy + dys[k]))) continue;
      double ng = gcost[cell] + (diagonal ? diag : res);
      std::size_t nid = id(nx, ny);
      if (ng < gcost[nid] - 1e-12) {
        gcost[nid] = ng;
        parent[nid] = static_cast<int>(cell);
        open.push({ng + heuristic(nx, ny), nid});
      }
    }
  }
  if (gcost[id(tx, ty)] == kInf) return std::nullopt;

  GridPath path;
  path.cost = gcost[id(tx, ty)];
  std::vector<geom::Point> rev;
  for (int cur = static_cast<int>(id(tx, ty)); cur != -1; cur = parent[cur])
    rev.push_back(grid.cell_center(cur % grid.cols, cur / grid.cols));
  path.polyline.push_back(start);
  path.polyline.insert(path.polyline.end(), rev.rbegin(), rev.rend());
  path.polyline.push_back(target);
  return path;
}

namespace {

bool edge_free(const geom::Point& a, const geom::Point& b,
               const std::vector<geom::Segment>& obstacle_edges,
               const std::vector<geom::MovingPolygon>& polys) {
  geom::Segment e{a, b};
  for (const geom::Segment& s : obstacle_edges)
    if (geom::segments_intersect(e, s)) return false;
  for (const geom::MovingPolygon& p : polys)
    if (geom::point_in_polygon(b, p.vertices)) return false;
  return true;
}

}  // namespace

std::optional<GridPath> rrt_plan(const env::Observation& obs, const geom::Point& start,
                                 const geom::Point& target, bool star,
                                 const RrtConfig& cfg, Rng& rng) {
  struct Node {
    geom::Point p;
    int parent;
    double cost;
  };
  const auto edges = obs.obstacle_segments();
  for (const geom::MovingPolygon& p : obs.obstacles)
    if (geom::point_in_polygon(start, p.vertices)) return std::nullopt;

  std::vector<Node> nodes{{start, -1, 0.0}};
  auto finish = [&](int goal_parent, double goal_cost) {
    GridPath path;
    path.cost = goal_cost;
    std::vector<geom::Point> rev{target};
    for (int cur = goal_parent; cur != -1; cur = nodes[cur].parent)
      rev.push_back(nodes[cur].p);
    path.polyline.assign(rev.rbegin(), rev.rend());
    return path;
  };

  for (int it = 0; it < cfg.max_samples; ++it) {
    // identical draw order for rrt and rrt_star so the node sets match
    double bias = rng.uniform01();
    double ux = rng.uniform01();
    double uy = rng.uniform01();
    geom::Point sample = bias < cfg.goal_bias
                             ? target
                             : geom::Point{ux * obs.width, uy * obs.height};

    int nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      double d = geom::dist(nodes[i].p, sample);
      if (d < best) { best = d; nearest = static_cast<int>(i); }
    }
    geom::Point np = sample;
    if (best > cfg.step_size) {
      double t = cfg.step_size / best;
      np = {nodes[nearest].p.x + t * (sample.x - nodes[nearest].p.x),
            nodes[nearest].p.y + t * (sample.y - nodes[nearest].p.y)};
    }
    if (!edge_free(nodes[nearest].p, np, edges, obs.obstacles)) continue;

    int parent = nearest;
    double cost = nodes[nearest].cost + geom::dist(nodes[nearest].p, np);
    if (star) {
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        double d = geom::dist(nodes[i].p, np);
        if (d > cfg.rewire_radius) continue;
        double c = nodes[i].cost + d;
        if (c < cost && edge_free(nodes[i].p, np, edges, obs.obstacles)) {
          cost = c;
          parent = static_cast<int>(i);
        }
      }
    }
    nodes.push_back({np, parent, cost});
    const int ni = static_cast<int>(nodes.size()) - 1;
    if (star) {
      for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        double d = geom::dist(np, nodes[i].p);
        if (d > cfg.rewire_radius) continue;
        double c = cost + d;
        if (c < nodes[i].cost && edge_free(np, nodes[i].p, edges, obs.obstacles)) {
          nodes[i].parent = ni;
          nodes[i].cost = c;
        }
      }
    }
    double dg = geom::dist(np, target);
    if (dg <= cfg.step_size && edge_free(np, target, edges, obs.obstacles))
      return finish(ni, cost + dg);
  }
  return std::nullopt;
}

geom::Path resample_polyline(std::span<const geom::Point> polyline, int waypoints) {
  geom::Path out(waypoints);
  if (polyline.empty()) return out;
  double total = 0.0;
  for (std::size_t i = 1; i < polyline.size(); ++i)
    total += geom::dist(polyline[i - 1], polyline[i]);
  if (total == 0.0) {
    std::fill(out.begin(), out.end(), polyline.front());
    return out;
  }
  std::size_t seg = 1;
  double walked = 0.0;
  for (int j = 0; j < waypoints; ++j) {
    double want = total * (j + 1) / (waypoints + 1);
    while (seg < polyline.size() - 1 &&
           walked + geom::dist(polyline[seg - 1], polyline[seg]) < want) {
      walked += geom::dist(polyline[seg - 1], polyline[seg]);
      ++seg;
    }
    double hop = geom::dist(polyline[seg - 1], polyline[seg]);
    double t = hop == 0.0 ? 0.0 : (want - walked) / hop;
    out[j] = {polyline[seg - 1].x + t * (polyline[seg].x - polyline[seg - 1].x),
              polyline[seg - 1].y + t * (polyline[seg].y - polyline[seg - 1].y)};
  }
  return out;
}

namespace {

class GridPlanner final : public plan::PathPlanner {
 public:
  GridPlanner(bool heuristic, BaselineConfig cfg)
      : heuristic_(heuristic), cfg_(cfg) {}

  plan::PlanResult plan(const env::Observation& obs) override {
    auto t0 = std::chrono::steady_clock::now();
    plan::PlanResult res;
    GridMap grid = GridMap::rasterize(obs, cfg_.grid_resolution);
    auto gp = astar_plan(grid, obs.start, obs.target, heuristic_);
    if (gp)
      prev_ = resample_polyline(gp->polyline, cfg_.waypoints);
    else if (!prev_)
      prev_ = resample_polyline(std::vector<geom::Point>{obs.start, obs.target},
                                cfg_.waypoints);
    res.path = *prev_;
    res.fitness = geom::path_length(res.path, obs.start, obs.target);
    res.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
  }

  void reset() override { prev_.reset(); }
  std::string name() const override { return heuristic_ ? "astar" : "dijkstra"; }

 private:
  bool heuristic_;
  BaselineConfig cfg_;
  std::optional<geom::Path> prev_;
};

class RrtBasePlanner final : public plan::PathPlanner {
 public:
  RrtBasePlanner(bool star, BaselineConfig cfg, std::uint64_t seed)
      : star_(star), cfg_(cfg), seed_(seed), rng_(seed) {}

  plan::PlanResult plan(const env::Observation& obs) override {
    auto t0 = std::chrono::steady_clock::now();
    plan::PlanResult res;
    auto gp = rrt_plan(obs, obs.start, obs.target, star_, cfg_.rrt, rng_);
    if (gp)
      prev_ = resample_polyline(gp->polyline, cfg_.waypoints);
    else if (!prev_)
      prev_ = resample_polyline(std::vector<geom::Point>{obs.start, obs.target},
                                cfg_.waypoints);
    res.path = *prev_;
    res.fitness = geom::path_length(res.path, obs.start, obs.target);
    res.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
  }

  void reset() override {
    prev_.reset();
    rng_ = Rng(seed_);
  }
  std::string name() const override { return star_ ? "rrt_star" : "rrt"; }

 private:
  bool star_;
  BaselineConfig cfg_;
  std::uint64_t seed_;
  Rng rng_;
  std::optional<geom::Path> prev_;
};

}  // namespace

std::unique_ptr<plan::PathPlanner> make_baseline(const std::string& algorithm,
                                                 const BaselineConfig& cfg,
                                                 std::uint64_t seed) {
  if (algorithm == "astar") return std::make_unique<GridPlanner>(true, cfg);
  if (algorithm == "dijkstra") return std::make_unique<GridPlanner>(false, cfg);
  if (algorithm == "rrt") return std::make_unique<RrtBasePlanner>(false, cfg, seed);
  if (algorithm == "rrt_star") return std::make_unique<RrtBasePlanner>(true, cfg, seed);
  throw std::invalid_argument("unknown baseline: " + algorithm);
}

std::unique_ptr<plan::PathPlanner> make_named_planner(const std::string& algorithm,
                                                      const ComparisonSpec& spec,
                                                      std::uint64_t seed,
                                                      ThreadPool* pool) {
  std::uint64_t planner_seed = Rng::derive(seed, fnv1a(algorithm), 0x60a1);
  if (algorithm == "okayplan")
    return plan::make_okayplanner(spec.okayplan_cfg, planner_seed, pool);
  if (algorithm == "okayplan_no_okaop") {
    plan::PlannerConfig cfg = spec.okayplan_cfg;
    cfg.gpp.mu = 0.0;
    return plan::make_okayplanner(cfg, planner_seed, pool);
  }
  if (algorithm == "okayplan_no_dyn_norm") {
    plan::PlannerConfig cfg = spec.okayplan_cfg;
    cfg.norm_mode = fitness::NormMode::fixed_initial;
    return plan::make_okayplanner(cfg, planner_seed, pool);
  }
  if (algorithm == "okayplan_no_dpi") {
    plan::PlannerConfig cfg = spec.okayplan_cfg;
    cfg.init_mode = plan::InitMode::pi;
    return plan::make_okayplanner(cfg, planner_seed, pool);
  }
  if (algorithm == "okayplan_no_relax") {
    if (!spec.no_relax_cfg)
      throw std::invalid_argument("okayplan_no_relax requires lambda=1 params");
    return plan::make_okayplanner(*spec.no_relax_cfg, planner_seed, pool);
  }
  return make_baseline(algorithm, spec.baseline_cfg, planner_seed);
}

std::vector<ComparisonRow> run_comparison(const ComparisonSpec& spec, ThreadPool& pool) {
  const int n_alg = static_cast<int>(spec.algorithms.size());
  const int n_seed = static_cast<int>(spec.seeds.size());
  std::vector<ComparisonRow> rows(static_cast<std::size_t>(n_alg) * n_seed);
  pool.run_indexed(n_alg * n_seed, [&](int i) {
    const std::string& alg = spec.algorithms[i / n_seed];
    std::uint64_t seed = spec.seeds[i % n_seed];
    env::Scenario scn = env::make_scenario(spec.preset, seed, spec.config_dir);
    auto planner = make_named_planner(alg, spec, seed, nullptr);
    plan::EpisodeMetrics m = plan::run_episode(scn, *planner);
    rows[i] = {alg,       seed,
               m.fitness, m.arrived,
               m.arrived ? m.travel_distance : 0.0,
               m.mean_plan_time_s, m.std_plan_time_s};
  });
  return rows;
}

}  // namespace okayplan::baselines
