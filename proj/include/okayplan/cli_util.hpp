#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace okayplan::cli {

/// Parses "a..b" (inclusive) or a comma list like "0,3,7" into seeds.
inline std::vector<std::uint64_t> parse_seed_range(const std::string& spec) {
  std::vector<std::uint64_t> seeds;
  auto pos = spec.find("..");
  if (pos != std::string::npos) {
    std::uint64_t a = std::stoull(spec.substr(0, pos));
    std::uint64_t b = std::stoull(spec.substr(pos + 2));
    if (b < a) throw std::invalid_argument("seed range: b < a in " + spec);
    for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) seeds.push_back(std::stoull(tok));
  if (seeds.empty()) throw std::invalid_argument("empty seed spec: " + spec);
  return seeds;
}

inline std::vector<std::string> split_list(const std::string& spec) {
  std::vector<std::string> items;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) items.push_back(tok);
  return items;
}

inline std::vector<double> parse_double_list(const std::string& spec) {
  std::vector<double> out;
  for (const std::string& s : split_list(spec)) out.push_back(std::stod(s));
  return out;
}

}  // namespace okayplan::cli
