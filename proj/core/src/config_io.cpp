// SPDX-License-Identifier: Apache-2.0
//
// Presets and the flat key = value experiment config format.
#include <cctype>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>

#include "beamcoord/simrunner.hpp"

namespace beamcoord {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (!s.empty()) {
    const std::size_t comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

double parse_double(std::string_view key, std::string_view v) {
  try {
    std::size_t used = 0;
    const double value = std::stod(std::string(v), &used);
    if (used != v.size()) throw std::invalid_argument("");
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad numeric value for '" + std::string(key) +
                                "': " + std::string(v));
  }
}

std::uint64_t parse_u64(std::string_view key, std::string_view v) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument("bad integer value for '" + std::string(key) +
                                "': " + std::string(v));
  }
  return value;
}

std::vector<double> parse_double_list(std::string_view key,
                                      std::string_view v) {
  std::vector<double> out;
  for (std::string_view item : split_list(v)) {
    out.push_back(parse_double(key, item));
  }
  return out;
}

Vec2 parse_vec2(std::string_view key, std::string_view v) {
  const std::vector<double> values = parse_double_list(key, v);
  if (values.size() != 2) {
    throw std::invalid_argument("'" + std::string(key) +
                                "' needs exactly two coordinates");
  }
  return {values[0], values[1]};
}

}  // namespace

const char* sweep_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::kClusterRadius:
      return "cluster_radius";
    case SweepVariable::kErrorRadiusLessInformed:
      return "error_radius_less_informed";
    case SweepVariable::kErrorRadiusAll:
      return "error_radius_all";
  }
  return "unknown";
}

SweepVariable sweep_from_name(std::string_view name) {
  for (SweepVariable v :
       {SweepVariable::kClusterRadius, SweepVariable::kErrorRadiusLessInformed,
        SweepVariable::kErrorRadiusAll}) {
    if (name == sweep_name(v)) return v;
  }
  throw std::invalid_argument("unknown sweep variable: " + std::string(name));
}

ExperimentConfig paper_preset() {
  return {};  // the defaults are the paper-scale setup
}

ExperimentConfig desk_preset() {
  ExperimentConfig cfg;
  cfg.scenario.n_ue = 16;
  cfg.scenario.n_bs = 16;
  cfg.scenario.m_ue = 16;
  cfg.scenario.m_bs = 16;
  // Scale every scenario distance with the codebook size (1/4) so that
  // lengths in meters keep their size in beamwidths: cluster spread and
  // positioning-error sweeps then behave as at full scale.
  cfg.scenario.cluster_center = {22.5, 10.897247358851686};
  cfg.scenario.reflector_region = {{0.0, -10.0}, {22.5, 21.25}};
  // Keep the aligned single-beam SNR at 30 dB at the smaller array size.
  cfg.scenario.noise_power = 16.0 * 16.0 / 1000.0;
  cfg.trials = 500;
  cfg.monte_carlo_iterations = 32;
  return cfg;
}

void apply_config_entry(ExperimentConfig& cfg, std::string_view key,
                        std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "num_ues") {
    cfg.scenario.num_ues = parse_u64(key, value);
  } else if (key == "num_paths") {
    cfg.scenario.num_paths = parse_u64(key, value);
  } else if (key == "cluster_center") {
    cfg.scenario.cluster_center = parse_vec2(key, value);
  } else if (key == "cluster_radius") {
    cfg.scenario.cluster_radius = parse_double(key, value);
  } else if (key == "bs_position") {
    cfg.scenario.bs_position = parse_vec2(key, value);
  } else if (key == "reflector_region") {
    const std::vector<double> v = parse_double_list(key, value);
    if (v.size() != 4) {
      throw std::invalid_argument(
          "'reflector_region' needs xmin, ymin, xmax, ymax");
    }
    cfg.scenario.reflector_region = {{v[0], v[1]}, {v[2], v[3]}};
  } else if (key == "path_power_profile") {
    cfg.scenario.path_power_profile = parse_double_list(key, value);
  } else if (key == "noise_power") {
    cfg.scenario.noise_power = parse_double(key, value);
  } else if (key == "n_ue") {
    cfg.scenario.n_ue = parse_u64(key, value);
  } else if (key == "n_bs") {
    cfg.scenario.n_bs = parse_u64(key, value);
  } else if (key == "m_ue") {
    cfg.scenario.m_ue = parse_u64(key, value);
  } else if (key == "m_bs") {
    cfg.scenario.m_bs = parse_u64(key, value);
  } else if (key == "strategies") {
    cfg.strategies.clear();
    for (std::string_view name : split_list(value)) {
      cfg.strategies.push_back(strategy_from_name(name));
    }
  } else if (key == "sweep") {
    cfg.sweep = sweep_from_name(value);
  } else if (key == "sweep_values") {
    cfg.sweep_values = parse_double_list(key, value);
  } else if (key == "error_radii") {
    cfg.error_radii = parse_double_list(key, value);
  } else if (key == "trials") {
    cfg.trials = parse_u64(key, value);
  } else if (key == "monte_carlo_iterations") {
    cfg.monte_carlo_iterations = parse_u64(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_u64(key, value);
  } else if (key == "threads") {
    cfg.threads = parse_u64(key, value);
  } else {
    throw std::invalid_argument("unknown config key: " + std::string(key));
  }
}

ExperimentConfig load_experiment_config(const std::string& path,
                                        ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = line;
    const std::size_t hash = s.find('#');
    if (hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const std::size_t eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected key = value");
    }
    try {
      apply_config_entry(base, s.substr(0, eq), s.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " +
                               e.what());
    }
  }
  return base;
}

}  // namespace beamcoord
