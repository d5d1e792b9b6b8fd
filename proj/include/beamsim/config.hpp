#pragma once

#include "beamsim/engine.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace beamsim {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Sets one key. Accepts the bare key ("alpha") or the sectioned form
// ("mobility.alpha"). Throws ConfigError for unknown keys or bad values.
void set_config_value(ExperimentConfig& cfg, const std::string& key,
                      const std::string& value);

// Parses "key=value".
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

// Sectioned key = value text:
//
//   [mobility]
//   alpha = 1.6   # comment
//
// Keys may also appear before any section. Missing keys keep their defaults.
ExperimentConfig parse_config(std::istream& is);
ExperimentConfig load_config_file(const std::string& path);

// Every key with its current value, in a stable order, as "section.key".
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg);

void write_config(std::ostream& os, const ExperimentConfig& cfg);

}  // namespace beamsim
