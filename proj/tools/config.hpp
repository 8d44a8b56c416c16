#pragma once

#include <json.hpp>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "isotherm/geometry.hpp"
#include "isotherm/medium.hpp"

namespace cli {

using nlohmann::json;

/// Raised for anything that makes a configuration unusable; maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Read-only view of one JSON object that rejects unknown keys and records every value it hands
 * out (defaults included) into the resolved configuration.
 */
class Section {
 public:
  Section(const json& node, std::string path, std::set<std::string> allowed, json* resolved);

  bool has(const std::string& key) const;
  double number(const std::string& key, double fallback);
  double number(const std::string& key);
  int integer(const std::string& key, int fallback);
  std::uint64_t u64(const std::string& key, std::uint64_t fallback);
  bool boolean(const std::string& key, bool fallback);
  std::string text(const std::string& key, const std::string& fallback);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
  std::vector<std::vector<double>> points(const std::string& key, const std::vector<std::vector<double>>& fallback);
  Section child(const std::string& key, std::set<std::string> allowed);
  const std::string& path() const { return path_; }

 private:
  const json* raw(const std::string& key) const;
  json& slot(const std::string& key);

  json node_;
  std::string path_;
  std::set<std::string> allowed_;
  json* resolved_;
};

/// A range {"min", "max", "count"} with logarithmic spacing, or an explicit list.
std::vector<double> log_grid(Section& parent, const std::string& key, double lo, double hi, int count);

isotherm::TwoPhaseMedium read_medium(Section& root);

struct SurfaceSpec {
  std::string type;
  double R = 1.0;
  int N = 3;
  double c = 1.0;
};
SurfaceSpec read_surface(Section& root, const std::string& fallback_type, const std::set<std::string>& permitted);
isotherm::geometry::SurfacePtr make_surface(const SurfaceSpec& spec);

}  // namespace cli
