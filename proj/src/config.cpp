#include "beamsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

namespace beamsim {
namespace {

struct Key {
  const char* section;
  const char* name;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || v.empty())
    throw ConfigError(key, "invalid number for '" + key + "': '" + v + "'");
  return out;
}

long long to_integer(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || v.empty())
    throw ConfigError(key, "invalid integer for '" + key + "': '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key, "invalid boolean for '" + key + "': '" + v + "'");
}

// Shortest text that reads back to the same double.
std::string fmt(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

#define BEAMSIM_REAL(section, name, expr)                                           \
  Key {                                                                             \
    section, name,                                                                  \
        [](ExperimentConfig& c, const std::string& v) { c.expr = to_double(name, v); }, \
        [](const ExperimentConfig& c) { return fmt(c.expr); }                       \
  }
#define BEAMSIM_INT(section, name, expr, type)                                         \
  Key {                                                                                \
    section, name,                                                                     \
        [](ExperimentConfig& c, const std::string& v) {                                \
          c.expr = static_cast<type>(to_integer(name, v));                             \
        },                                                                             \
        [](const ExperimentConfig& c) { return std::to_string(c.expr); }               \
  }

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      BEAMSIM_REAL("arena", "width", mobility.area_width),
      BEAMSIM_REAL("arena", "height", mobility.area_height),
      BEAMSIM_REAL("network", "rho", rho),
      BEAMSIM_INT("network", "n_nodes", n_nodes, int),
      BEAMSIM_REAL("network", "r", r),
      BEAMSIM_INT("network", "T", T, int),
      BEAMSIM_INT("network", "n_topologies", n_topologies, int),
      BEAMSIM_INT("network", "seed", seed, std::uint64_t),
      BEAMSIM_INT("network", "workers", workers, int),
      Key{"network", "freeze_mobility",
          [](ExperimentConfig& c, const std::string& v) {
            c.freeze_mobility = to_bool("freeze_mobility", v);
          },
          [](const ExperimentConfig& c) { return std::string(c.freeze_mobility ? "true" : "false"); }},
      BEAMSIM_REAL("mobility", "alpha", mobility.alpha),
      BEAMSIM_REAL("mobility", "beta", mobility.beta),
      BEAMSIM_REAL("mobility", "x_max", mobility.x_max),
      Key{"antenna", "antenna",
          [](ExperimentConfig& c, const std::string& v) {
            try {
              c.antenna = parse_antenna(v);
            } catch (const std::invalid_argument& e) {
              throw ConfigError("antenna", e.what());
            }
          },
          [](const ExperimentConfig& c) { return to_string(c.antenna); }},
      BEAMSIM_INT("antenna", "M", M, int),
      BEAMSIM_REAL("antenna", "frequency", antenna_cfg.frequency),
      BEAMSIM_REAL("antenna", "element_spacing", antenna_cfg.element_spacing),
      BEAMSIM_REAL("antenna", "path_loss_exponent", antenna_cfg.path_loss_exponent),
      Key{"policy", "policy",
          [](ExperimentConfig& c, const std::string& v) {
            try {
              c.policy = parse_policy(v);
            } catch (const std::invalid_argument& e) {
              throw ConfigError("policy", e.what());
            }
          },
          [](const ExperimentConfig& c) { return to_string(c.policy); }},
      BEAMSIM_REAL("policy", "S_min", S_min),
      BEAMSIM_REAL("policy", "S_max", S_max),
      BEAMSIM_REAL("policy", "degree_threshold", degree_threshold),
      Key{"scenario", "scenario",
          [](ExperimentConfig& c, const std::string& v) {
            try {
              c.scenario.kind = parse_scenario(v);
            } catch (const std::invalid_argument& e) {
              throw ConfigError("scenario", e.what());
            }
          },
          [](const ExperimentConfig& c) { return to_string(c.scenario.kind); }},
      BEAMSIM_INT("scenario", "n_sources", scenario.n_sources, int),
      BEAMSIM_INT("scenario", "packet_gen_horizon", scenario.packet_gen_horizon, int),
      BEAMSIM_INT("scenario", "source_join_horizon", scenario.source_join_horizon, int),
      BEAMSIM_INT("scenario", "update_horizon", scenario.update_horizon, int),
      BEAMSIM_REAL("scenario", "gen_prob", scenario.gen_prob),
      BEAMSIM_REAL("quadrature", "rel_tol", quadrature.rel_tol),
      BEAMSIM_REAL("quadrature", "abs_tol", quadrature.abs_tol),
      BEAMSIM_INT("quadrature", "max_subdivisions", quadrature.max_subdivisions, int),
  };
  return table;
}

#undef BEAMSIM_REAL
#undef BEAMSIM_INT

const Key* find_key(const std::string& section, const std::string& name) {
  std::string bare = name;
  if (bare == "antenna_kind") bare = "antenna";
  for (const auto& k : keys())
    if (bare == k.name && (section.empty() || section == k.section)) return &k;
  return nullptr;
}

}  // namespace

void set_config_value(ExperimentConfig& cfg, const std::string& key,
                      const std::string& value) {
  std::string section;
  std::string name = trim(key);
  if (const auto dot = name.find('.'); dot != std::string::npos) {
    section = name.substr(0, dot);
    name = name.substr(dot + 1);
  }
  const Key* k = find_key(section, name);
  if (!k) throw ConfigError(key, "unknown config key '" + key + "'");
  k->set(cfg, trim(value));
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError(assignment, "override must look like key=value: '" + assignment + "'");
  set_config_value(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

ExperimentConfig parse_config(std::istream& is) {
  ExperimentConfig cfg;
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find_first_of("#;"); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(line, "line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line, "line " + std::to_string(lineno) + ": expected key = value");
    const std::string name = trim(line.substr(0, eq));
    const std::string qualified = section.empty() ? name : section + "." + name;
    const Key* k = find_key(section, name);
    if (!k)
      throw ConfigError(qualified, "line " + std::to_string(lineno) + ": unknown config key '" +
                                       qualified + "'");
    try {
      k->set(cfg, trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(qualified, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& k : keys())
    out.emplace_back(std::string(k.section) + "." + k.name, k.get(cfg));
  return out;
}

void write_config(std::ostream& os, const ExperimentConfig& cfg) {
  std::string section;
  for (const auto& k : keys()) {
    if (section != k.section) {
      if (!section.empty()) os << '\n';
      section = k.section;
      os << '[' << section << "]\n";
    }
    os << k.name << " = " << k.get(cfg) << '\n';
  }
}

}  // namespace beamsim
