#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "config.hpp"

namespace cli {

struct Record {
  std::string name;
  std::string expected;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct Context {
  std::uint64_t seed = 20240611;
  int jobs = 0;
  double tolerance_scale = 1.0;
  std::filesystem::path out;
  std::vector<std::string> artifacts;
  std::vector<Record> records;

  void write(const std::string& name, const std::string& content);
  void add(Record r) { records.push_back(std::move(r)); }
};

/// Shortest round-trip text for a double.
std::string num(double v);

struct Command {
  std::string name;
  std::string help;
  std::set<std::string> keys;  ///< accepted top-level config keys besides the common ones
  void (*run)(Context&, Section&);
};

const std::vector<Command>& commands();

}  // namespace cli
