"""Real-time global path planning in dynamic 2D worlds."""

from ._okayplan import (
    Episode,
    PlannerConfig,
    Scenario,
    default_config_dir,
    load_planner_config,
    load_scenario_file,
    make_scenario,
    path_length,
    plan_once,
    run_baseline_episode,
    run_episode,
    segments_intersect,
)

__all__ = [
    "Episode",
    "PlannerConfig",
    "Scenario",
    "default_config_dir",
    "load_planner_config",
    "load_scenario_file",
    "make_scenario",
    "path_length",
    "plan_once",
    "run_baseline_episode",
    "run_episode",
    "segments_intersect",
]

__version__ = "0.1.0"
