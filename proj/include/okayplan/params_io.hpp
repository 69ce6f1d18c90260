#pragma once

#include <string>
#include <vector>

#include "okayplan/fitness.hpp"
#include "okayplan/swarm.hpp"

namespace okayplan::params {

/// The assembled hyperparameter vector: 5 GPP scalars plus 6 search
/// parameters for each of the 8 groups (53 components total).
struct HyperParams {
  fitness::GppParams gpp;
  std::vector<swarm::GroupParams> theta;

  std::size_t flat_size() const { return 5 + theta.size() * 6; }
  std::vector<double> to_flat() const;
  static HyperParams from_flat(std::span<const double> flat, int groups);
};

/// Shipped defaults (the published evolved values).
HyperParams default_params();

std::string to_json(const HyperParams& p);
HyperParams from_json(const std::string& json_text);
HyperParams load_file(const std::string& path);
void save_file(const HyperParams& p, const std::string& path);

}  // namespace okayplan::params
