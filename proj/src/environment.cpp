#include "okayplan/environment.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace okayplan::env {

using nlohmann::json;

const char* status_name(Status s) {
  switch (s) {
    case Status::running: return "running";
    case Status::arrived: return "arrived";
    case Status::collided: return "collided";
    case Status::timeout: return "timeout";
  }
  return "unknown";
}

std::vector<geom::Segment> Observation::obstacle_segments() const {
  std::vector<geom::Segment> segs;
  for (const auto& ob : obstacles) {
    const std::size_t n = ob.vertices.size();
    for (std::size_t i = 0; i < n; ++i)
      segs.push_back({ob.vertices[i], ob.vertices[(i + 1) % n]});
  }
  return segs;
}

std::string default_config_dir() {
  if (const char* env = std::getenv("OKAYPLAN_CONFIG_DIR")) return env;
#ifdef OKAYPLAN_DEFAULT_CONFIG_DIR
  return OKAYPLAN_DEFAULT_CONFIG_DIR;
#else
  return "configs";
#endif
}

namespace {

geom::Point parse_point(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json point_to_json(const geom::Point& p) { return json::array({p.x, p.y}); }

}  // namespace

Scenario load_scenario_json(const std::string& json_text, std::uint64_t seed) {
  json j = json::parse(json_text);
  Scenario s;
  s.width = j.at("width").get<double>();
  s.height = j.at("height").get<double>();
  s.start = parse_point(j.at("start"));
  s.target = parse_point(j.at("target"));
  s.usv_velocity = j.at("usv_velocity").get<double>();
  s.target_velocity = j.at("target_velocity").get<double>();
  s.max_ticks = j.value("max_ticks", 500);
  s.arrival_radius = j.value("arrival_radius", 6.0);
  s.seed = seed;

  Rng rng(Rng::derive(seed, 0x5ce4a110));
  for (const json& jo : j.at("obstacles")) {
    Obstacle ob;
    for (const json& v : jo.at("vertices")) ob.vertices.push_back(parse_point(v));
    if (ob.vertices.size() < 3)
      throw std::invalid_argument("scenario: obstacle polygon needs >= 3 vertices");
    double lo = 0.0, hi = 0.0;
    if (jo.contains("speed_range")) {
      lo = jo.at("speed_range").at(0).get<double>();
      hi = jo.at("speed_range").at(1).get<double>();
    }
    std::string mode = jo.value("motion_mode", "consistent");
    ob.motion_mode = mode == "random" ? MotionMode::random : MotionMode::consistent;
    ob.dynamic = hi > 0.0;
    ob.speed_cap = hi;
    if (ob.dynamic) {
      double speed = rng.uniform(lo, hi);
      double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
      ob.velocity = {speed * std::cos(heading), speed * std::sin(heading)};
    }
    s.obstacles.push_back(std::move(ob));
  }
  return s;
}

Scenario load_scenario_file(const std::string& path, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("scenario file not found: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_scenario_json(ss.str(), seed);
}

Scenario make_scenario(const std::string& preset, std::uint64_t seed,
                       const std::string& config_dir) {
  if (preset != "simple" && preset != "complex")
    throw std::invalid_argument("unknown preset: " + preset);
  std::string dir = config_dir.empty() ? default_config_dir() : config_dir;
  return load_scenario_file(dir + "/" + preset + ".json", seed);
}

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["width"] = s.width;
  j["height"] = s.height;
  j["start"] = point_to_json(s.start);
  j["target"] = point_to_json(s.target);
  j["usv_velocity"] = s.usv_velocity;
  j["target_velocity"] = s.target_velocity;
  j["max_ticks"] = s.max_ticks;
  j["arrival_radius"] = s.arrival_radius;
  j["seed"] = s.seed;
  json obs = json::array();
  for (const Obstacle& ob : s.obstacles) {
    json jo;
    json verts = json::array();
    for (const geom::Point& v : ob.vertices) verts.push_back(point_to_json(v));
    jo["vertices"] = verts;
    jo["velocity"] = point_to_json(ob.velocity);
    jo["motion_mode"] = ob.motion_mode == MotionMode::random ? "random" : "consistent";
    jo["dynamic"] = ob.dynamic;
    jo["speed_cap"] = ob.speed_cap;
    obs.push_back(jo);
  }
  j["obstacles"] = obs;
  return j.dump();
}

Episode::Episode(Scenario scenario)
    : scn_(std::move(scenario)),
      usv_(scn_.start),
      target_(scn_.target),
      rng_(Rng::derive(scn_.seed, 0xeb150de)) {
  target_heading_ = rng_.uniform(0.0, 2.0 * std::numbers::pi);
}

Observation Episode::observe() const {
  Observation obs;
  obs.start = usv_;
  obs.target = target_;
  obs.width = scn_.width;
  obs.height = scn_.height;
  obs.obstacles.reserve(scn_.obstacles.size());
  for (const Obstacle& ob : scn_.obstacles)
    obs.obstacles.push_back({ob.vertices, ob.velocity});
  return obs;
}

namespace {

// Advances `pos` along the polyline pos -> waypoints -> goal by `budget`
// meters of arc length; stops at the polyline end.
geom::Point advance_along(const geom::Point& pos, std::span<const geom::Point> waypoints,
                          const geom::Point& goal, double budget) {
  geom::Point cur = pos;
  auto node = [&](std::size_t i) -> geom::Point {
    return i < waypoints.size() ? waypoints[i] : goal;
  };
  for (std::size_t i = 0; i <= waypoints.size(); ++i) {
    geom::Point next = node(i);
    double hop = geom::dist(cur, next);
    if (hop >= budget) {
      if (hop == 0.0) continue;
      double t = budget / hop;
      return {cur.x + t * (next.x - cur.x), cur.y + t * (next.y - cur.y)};
    }
    budget -= hop;
    cur = next;
  }
  return cur;
}

struct Box {
  double lox, loy, hix, hiy;
  bool contains(const geom::Point& p) const {
    return p.x >= lox && p.x <= hix && p.y >= loy && p.y <= hiy;
  }
};

// Obstacle bounding box inflated by its one-tick sweep plus a margin; the
// target treats this as off-limits so it is never overrun standing still.
Box keepout_box(const Obstacle& ob) {
  Box b{ob.vertices[0].x, ob.vertices[0].y, ob.vertices[0].x, ob.vertices[0].y};
  for (const geom::Point& v : ob.vertices) {
    b.lox = std::min(b.lox, v.x); b.hix = std::max(b.hix, v.x);
    b.loy = std::min(b.loy, v.y); b.hiy = std::max(b.hiy, v.y);
  }
  double m = 1.0 + 2.0 * std::hypot(ob.velocity.x, ob.velocity.y);
  b.lox -= m; b.loy -= m; b.hix += m; b.hiy += m;
  return b;
}

}  // namespace

void Episode::step(std::span<const geom::Point> path_waypoints) {
  if (status_ != Status::running)
    throw std::logic_error("Episode::step on terminal state");

  usv_ = advance_along(usv_, path_waypoints, target_, scn_.usv_velocity);
  travel_ += scn_.usv_velocity;

  // target: correlated random walk, reflected at the world bounds; a move
  // that would land inside an obstacle reverses heading instead (a reachable
  // target must stay outside the boxes, else arrival is impossible)
  target_heading_ += rng_.uniform(-0.5, 0.5);
  for (int attempt = 0; attempt < 2; ++attempt) {
    double heading = target_heading_ + attempt * std::numbers::pi;
    double nx = target_.x + scn_.target_velocity * std::cos(heading);
    double ny = target_.y + scn_.target_velocity * std::sin(heading);
    if (nx < 0.0) { nx = -nx; heading = std::numbers::pi - heading; }
    if (nx > scn_.width) { nx = 2.0 * scn_.width - nx; heading = std::numbers::pi - heading; }
    if (ny < 0.0) { ny = -ny; heading = -heading; }
    if (ny > scn_.height) { ny = 2.0 * scn_.height - ny; heading = -heading; }
    geom::Point cand{std::clamp(nx, 0.0, scn_.width), std::clamp(ny, 0.0, scn_.height)};
    bool blocked = false;
    for (const Obstacle& ob : scn_.obstacles)
      if (keepout_box(ob).contains(cand)) { blocked = true; break; }
    if (!blocked) {
      target_ = cand;
      target_heading_ = heading;
      break;
    }
  }

  for (Obstacle& ob : scn_.obstacles) {
    if (!ob.dynamic) continue;
    double lox = ob.vertices[0].x, hix = lox, loy = ob.vertices[0].y, hiy = loy;
    for (const geom::Point& v : ob.vertices) {
      lox = std::min(lox, v.x); hix = std::max(hix, v.x);
      loy = std::min(loy, v.y); hiy = std::max(hiy, v.y);
    }
    // reflect so the polygon stays inside [0,W]x[0,H]
    if (lox + ob.velocity.x < 0.0 || hix + ob.velocity.x > scn_.width)
      ob.velocity.x = -ob.velocity.x;
    if (loy + ob.velocity.y < 0.0 || hiy + ob.velocity.y > scn_.height)
      ob.velocity.y = -ob.velocity.y;
    double dx = std::clamp(ob.velocity.x, -lox, scn_.width - hix);
    double dy = std::clamp(ob.velocity.y, -loy, scn_.height - hiy);
    for (geom::Point& v : ob.vertices) { v.x += dx; v.y += dy; }
    if (ob.motion_mode == MotionMode::random) {
      double speed = rng_.uniform(0.0, ob.speed_cap);
      double heading = rng_.uniform(0.0, 2.0 * std::numbers::pi);
      ob.velocity = {speed * std::cos(heading), speed * std::sin(heading)};
    }
  }

  // a box whose keep-out zone swept over the target pushes it out ahead of
  // the box's motion so the target never rides a leading face
  for (const Obstacle& ob : scn_.obstacles) {
    Box b = keepout_box(ob);
    if (!b.contains(target_)) continue;
    double exit_left = target_.x - b.lox, exit_right = b.hix - target_.x;
    double exit_down = target_.y - b.loy, exit_up = b.hiy - target_.y;
    // prefer the exit the box is moving away from; break ties by distance.
    // toward_exit is the box's velocity component pointing at that face:
    // positive means the box would chase the target out of it
    auto score = [&](double d, double toward_exit) {
      return d + 6.0 * std::max(0.0, toward_exit);
    };
    double sl = score(exit_left, -ob.velocity.x), sr = score(exit_right, ob.velocity.x);
    double sd = score(exit_down, -ob.velocity.y), su = score(exit_up, ob.velocity.y);
    double best = std::min({sl, sr, sd, su});
    geom::Point p = target_;
    if (best == sl) p.x = b.lox - 1e-3;
    else if (best == sr) p.x = b.hix + 1e-3;
    else if (best == sd) p.y = b.loy - 1e-3;
    else p.y = b.hiy + 1e-3;
    target_ = {std::clamp(p.x, 0.0, scn_.width), std::clamp(p.y, 0.0, scn_.height)};
  }

  ++tick_;
  for (const Obstacle& ob : scn_.obstacles) {
    if (geom::point_in_polygon(usv_, ob.vertices)) {
      status_ = Status::collided;
      return;
    }
  }
  if (geom::dist(usv_, target_) <= scn_.arrival_radius) {
    status_ = Status::arrived;
    return;
  }
  if (tick_ >= scn_.max_ticks) status_ = Status::timeout;
}

}  // namespace okayplan::env
