#include "okayplan/render.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace okayplan::render {

using nlohmann::json;

namespace {

json point_to_json(const geom::Point& p) { return json::array({p.x, p.y}); }

geom::Point parse_point(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

env::Status parse_status(const std::string& s) {
  if (s == "running") return env::Status::running;
  if (s == "arrived") return env::Status::arrived;
  if (s == "collided") return env::Status::collided;
  if (s == "timeout") return env::Status::timeout;
  throw std::invalid_argument("trace: unknown status " + s);
}

}  // namespace

std::string record_to_jsonl(const plan::TickRecord& rec) {
  json j;
  j["tick"] = rec.tick;
  j["usv"] = point_to_json(rec.usv);
  j["target"] = point_to_json(rec.target);
  json path = json::array();
  for (const geom::Point& p : rec.path) path.push_back(point_to_json(p));
  j["path"] = path;
  json obs = json::array();
  for (const geom::MovingPolygon& ob : rec.obstacles) {
    json verts = json::array();
    for (const geom::Point& v : ob.vertices) verts.push_back(point_to_json(v));
    obs.push_back({{"vertices", verts}, {"velocity", point_to_json(ob.velocity)}});
  }
  j["obstacles"] = obs;
  j["fitness"] = rec.fitness;
  j["status"] = env::status_name(rec.status_after);
  return j.dump();
}

plan::TickRecord record_from_jsonl(const std::string& line) {
  json j = json::parse(line);
  plan::TickRecord rec;
  rec.tick = j.at("tick").get<int>();
  rec.usv = parse_point(j.at("usv"));
  rec.target = parse_point(j.at("target"));
  for (const json& p : j.at("path")) rec.path.push_back(parse_point(p));
  for (const json& ob : j.at("obstacles")) {
    geom::MovingPolygon poly;
    for (const json& v : ob.at("vertices")) poly.vertices.push_back(parse_point(v));
    poly.velocity = parse_point(ob.at("velocity"));
    rec.obstacles.push_back(std::move(poly));
  }
  rec.fitness = j.value("fitness", 0.0);
  rec.status_after = parse_status(j.at("status").get<std::string>());
  return rec;
}

std::vector<plan::TickRecord> load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("trace file not found: " + path);
  std::vector<plan::TickRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(record_from_jsonl(line));
  }
  return records;
}

std::string frame_svg(const plan::TickRecord& rec, double width, double height,
                      const RenderOptions& opt) {
  ViewTransform tf{opt.view_px / std::max(width, height), height};
  std::ostringstream svg;
  auto px = [&](const geom::Point& p) {
    std::ostringstream s;
    s << tf.to_px_x(p.x) << "," << tf.to_px_y(p.y);
    return s.str();
  };
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << tf.to_px_x(width)
      << "\" height=\"" << opt.view_px << "\" viewBox=\"0 0 " << tf.to_px_x(width)
      << " " << opt.view_px << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#f4f7fa\"/>\n";

  for (const geom::MovingPolygon& ob : rec.obstacles) {
    bool moving = ob.velocity.x != 0.0 || ob.velocity.y != 0.0;
    svg << "<polygon points=\"";
    for (const geom::Point& v : ob.vertices) svg << px(v) << " ";
    svg << "\" fill=\"" << (moving ? "#303030" : "#e69138") << "\"/>\n";
    if (moving) {
      for (const geom::Point& v : ob.vertices) {
        geom::Point tip{v.x + opt.kinematic_iota * ob.velocity.x,
                        v.y + opt.kinematic_iota * ob.velocity.y};
        svg << "<line x1=\"" << tf.to_px_x(v.x) << "\" y1=\"" << tf.to_px_y(v.y)
            << "\" x2=\"" << tf.to_px_x(tip.x) << "\" y2=\"" << tf.to_px_y(tip.y)
            << "\" stroke=\"#9b59b6\" stroke-width=\"1.5\"/>\n";
      }
    }
  }

  svg << "<polyline points=\"" << px(rec.usv) << " ";
  for (const geom::Point& p : rec.path) svg << px(p) << " ";
  svg << px(rec.target)
      << "\" fill=\"none\" stroke=\"#2e8b57\" stroke-width=\"2\"/>\n";
  svg << "<circle cx=\"" << tf.to_px_x(rec.usv.x) << "\" cy=\"" << tf.to_px_y(rec.usv.y)
      << "\" r=\"4\" fill=\"#1f77b4\"/>\n";
  svg << "<circle cx=\"" << tf.to_px_x(rec.target.x) << "\" cy=\""
      << tf.to_px_y(rec.target.y) << "\" r=\"4\" fill=\"#d62728\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

int render_trace(const std::string& trace_path, const std::string& out_dir,
                 double width, double height, const RenderOptions& opt) {
  auto records = load_trace(trace_path);
  std::filesystem::create_directories(out_dir);
  std::ofstream csv(out_dir + "/summary.csv");
  csv << "# schema: okayplan/render-summary v1\n";
  csv << "tick,path_length_m,fitness\n";
  int count = 0;
  for (const plan::TickRecord& rec : records) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%06d.svg", rec.tick);
    std::ofstream f(out_dir + "/" + name);
    f << frame_svg(rec, width, height, opt);
    double len = geom::path_length(rec.path, rec.usv, rec.target);
    char line[128];
    std::snprintf(line, sizeof(line), "%d,%.10g,%.10g\n", rec.tick, len, rec.fitness);
    csv << line;
    ++count;
  }
  return count;
}

}  // namespace okayplan::render
