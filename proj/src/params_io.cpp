#include "okayplan/params_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace okayplan::params {

using nlohmann::json;

std::vector<double> HyperParams::to_flat() const {
  std::vector<double> flat;
  flat.reserve(flat_size());
  flat.insert(flat.end(), {gpp.alpha, gpp.beta, gpp.mu, gpp.nu, gpp.iota});
  for (const swarm::GroupParams& g : theta)
    flat.insert(flat.end(),
                {g.c1, g.c2, g.c3, g.omega_init, g.omega_end, g.v_limit});
  return flat;
}

HyperParams HyperParams::from_flat(std::span<const double> flat, int groups) {
  if (flat.size() != static_cast<std::size_t>(5 + groups * 6))
    throw std::invalid_argument("HyperParams::from_flat: wrong length");
  HyperParams p;
  p.gpp = {flat[0], flat[1], flat[2], flat[3], flat[4]};
  p.theta.resize(groups);
  for (int g = 0; g < groups; ++g) {
    const double* t = &flat[5 + g * 6];
    p.theta[g] = {t[0], t[1], t[2], t[3], t[4], t[5]};
  }
  return p;
}

HyperParams default_params() {
  HyperParams p;
  p.gpp = {4.0, 1.0, 3.9827, 6.0, 5.2032};
  p.theta = {
      // c1,     c2,     c3,     omega_init, omega_end, v_limit
      {1.0000, 2.0000, 1.0000, 0.9000, 0.9000, 0.1000},
      {1.4853, 1.0000, 1.0000, 0.2000, 0.1000, 0.1000},
      {1.0000, 1.0000, 2.0000, 0.7434, 0.9000, 0.1389},
      {1.0756, 1.0000, 1.2968, 0.9000, 0.9000, 0.1000},
      {2.0000, 2.0000, 2.0000, 0.2000, 0.9000, 0.8000},
      {1.0000, 1.3316, 2.0000, 0.6094, 0.1000, 0.1000},
      {2.0000, 2.0000, 1.0000, 0.8271, 0.1000, 0.8000},
      {1.9968, 1.9253, 1.0000, 0.9000, 0.7743, 0.8000},
  };
  return p;
}

std::string to_json(const HyperParams& p) {
  json j;
  j["schema"] = "okayplan/params v1";
  j["gpp"] = {{"alpha", p.gpp.alpha},
              {"beta", p.gpp.beta},
              {"mu", p.gpp.mu},
              {"nu", p.gpp.nu},
              {"iota", p.gpp.iota}};
  json groups = json::array();
  for (const swarm::GroupParams& g : p.theta)
    groups.push_back({{"c1", g.c1},
                      {"c2", g.c2},
                      {"c3", g.c3},
                      {"omega_init", g.omega_init},
                      {"omega_end", g.omega_end},
                      {"v_limit", g.v_limit}});
  j["groups"] = groups;
  return j.dump(2);
}

HyperParams from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  HyperParams p;
  const json& g = j.at("gpp");
  p.gpp = {g.at("alpha").get<double>(), g.at("beta").get<double>(),
           g.at("mu").get<double>(), g.at("nu").get<double>(),
           g.at("iota").get<double>()};
  for (const json& jg : j.at("groups"))
    p.theta.push_back({jg.at("c1").get<double>(), jg.at("c2").get<double>(),
                       jg.at("c3").get<double>(), jg.at("omega_init").get<double>(),
                       jg.at("omega_end").get<double>(), jg.at("v_limit").get<double>()});
  if (p.flat_size() != 5 + p.theta.size() * 6 || p.theta.empty())
    throw std::invalid_argument("params file: bad group list");
  return p;
}

HyperParams load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("params file not found: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

void save_file(const HyperParams& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write params file: " + path);
  out << to_json(p) << "\n";
}

}  // namespace okayplan::params
