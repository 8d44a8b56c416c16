#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace isotherm::acceptance {

struct Record {
  int id = 0;
  std::string name;
  std::string expected;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double seconds = 0.0;
  double time_limit = 0.0;
  std::string detail;
};

struct Options {
  std::uint64_t seed = 20240611;
  int jobs = 0;
  /// Multiplies every numeric tolerance; 1 reproduces the documented thresholds.
  double tolerance_scale = 1.0;
};

/// Criterion ids 1..11.
Record run_criterion(int id, const Options& options = {});
std::vector<Record> run_all(const Options& options = {}, const std::function<void(const Record&)>& on_record = nullptr);
std::string format_line(const Record& r);

}  // namespace isotherm::acceptance
