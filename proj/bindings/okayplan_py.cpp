#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "okayplan/baselines.hpp"
#include "okayplan/hsef.hpp"
#include "okayplan/render.hpp"

namespace py = pybind11;
using namespace okayplan;

namespace {

using PyPoint = std::pair<double, double>;
using PyPath = std::vector<PyPoint>;

geom::Point to_point(const PyPoint& p) { return {p.first, p.second}; }
PyPoint from_point(const geom::Point& p) { return {p.x, p.y}; }

geom::Path to_path(const PyPath& pts) {
  geom::Path out;
  for (const auto& p : pts) out.push_back(to_point(p));
  return out;
}

PyPath from_path(const geom::Path& pts) {
  PyPath out;
  for (const auto& p : pts) out.push_back(from_point(p));
  return out;
}

py::dict metrics_dict(const plan::EpisodeMetrics& m) {
  py::dict d;
  d["fitness"] = m.fitness;
  d["travel_distance"] = m.travel_distance;
  d["arrived"] = m.arrived;
  d["status"] = std::string(env::status_name(m.status));
  d["ticks"] = m.ticks;
  d["mean_plan_time_s"] = m.mean_plan_time_s;
  d["std_plan_time_s"] = m.std_plan_time_s;
  return d;
}

}  // namespace

PYBIND11_MODULE(_okayplan, m) {
  m.doc() = "real-time global path planning in dynamic 2D worlds";

  m.def(
      "segments_intersect",
      [](PyPoint a, PyPoint b, PyPoint c, PyPoint d) {
        return geom::segments_intersect({to_point(a), to_point(b)},
                                        {to_point(c), to_point(d)});
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"));

  m.def(
      "path_length",
      [](PyPath waypoints, PyPoint start, PyPoint target) {
        return geom::path_length(to_path(waypoints), to_point(start),
                                 to_point(target));
      },
      py::arg("waypoints"), py::arg("start"), py::arg("target"));

  py::class_<env::Scenario>(m, "Scenario")
      .def_readonly("width", &env::Scenario::width)
      .def_readonly("height", &env::Scenario::height)
      .def_readonly("max_ticks", &env::Scenario::max_ticks)
      .def_property_readonly(
          "start", [](const env::Scenario& s) { return from_point(s.start); })
      .def_property_readonly(
          "target", [](const env::Scenario& s) { return from_point(s.target); })
      .def_property_readonly("n_obstacles", [](const env::Scenario& s) {
        return s.obstacles.size();
      })
      .def("to_json", [](const env::Scenario& s) { return env::scenario_to_json(s); });

  m.def("make_scenario", &env::make_scenario, py::arg("preset"), py::arg("seed"),
        py::arg("config_dir") = std::string());
  m.def("load_scenario_file", &env::load_scenario_file, py::arg("path"),
        py::arg("seed"));
  m.def("default_config_dir", &env::default_config_dir);

  py::class_<env::Episode>(m, "Episode")
      .def(py::init<env::Scenario>(), py::arg("scenario"))
      .def("step",
           [](env::Episode& e, PyPath waypoints) {
             geom::Path p = to_path(waypoints);
             e.step(p);
           },
           py::arg("waypoints"))
      .def_property_readonly("status",
                             [](const env::Episode& e) {
                               return std::string(env::status_name(e.status()));
                             })
      .def_property_readonly("tick", &env::Episode::tick)
      .def_property_readonly("travel_distance", &env::Episode::travel_distance)
      .def_property_readonly(
          "usv", [](const env::Episode& e) { return from_point(e.usv()); })
      .def_property_readonly(
          "target", [](const env::Episode& e) { return from_point(e.target()); });

  py::class_<plan::PlannerConfig>(m, "PlannerConfig")
      .def(py::init(&plan::PlannerConfig::defaults))
      .def_readwrite("groups", &plan::PlannerConfig::groups)
      .def_readwrite("particles", &plan::PlannerConfig::particles)
      .def_readwrite("dims", &plan::PlannerConfig::dims)
      .def_readwrite("max_iterations", &plan::PlannerConfig::max_iterations)
      .def_readwrite("min_iterations", &plan::PlannerConfig::min_iterations);

  m.def(
      "load_planner_config",
      [](const std::string& path) {
        params::HyperParams p = params::load_file(path);
        plan::PlannerConfig cfg = plan::PlannerConfig::defaults();
        cfg.gpp = p.gpp;
        cfg.group_params = p.theta;
        cfg.groups = static_cast<int>(p.theta.size());
        return cfg;
      },
      py::arg("path"));

  m.def(
      "run_episode",
      [](const env::Scenario& scn, const plan::PlannerConfig& cfg,
         std::uint64_t planner_seed) {
        plan::OkayPlanner planner(cfg, planner_seed);
        return metrics_dict(plan::run_episode(scn, planner));
      },
      py::arg("scenario"), py::arg("config"), py::arg("planner_seed") = 0,
      "Runs one full episode with the OkayPlan planner and returns its metrics.");

  m.def(
      "plan_once",
      [](const env::Scenario& scn, const plan::PlannerConfig& cfg,
         std::uint64_t planner_seed) {
        plan::OkayPlanner planner(cfg, planner_seed);
        env::Episode ep(scn);
        plan::PlanResult r = planner.plan(ep.observe());
        py::dict d;
        d["path"] = from_path(r.path);
        d["fitness"] = r.fitness;
        d["iterations"] = r.iterations;
        d["wall_time_s"] = r.wall_time_s;
        return d;
      },
      py::arg("scenario"), py::arg("config"), py::arg("planner_seed") = 0,
      "Plans a single path from the scenario's initial state.");

  m.def(
      "run_baseline_episode",
      [](const env::Scenario& scn, const std::string& algorithm,
         std::uint64_t planner_seed) {
        auto planner =
            baselines::make_baseline(algorithm, baselines::BaselineConfig{}, planner_seed);
        return metrics_dict(plan::run_episode(scn, *planner));
      },
      py::arg("scenario"), py::arg("algorithm"), py::arg("planner_seed") = 0);
}
