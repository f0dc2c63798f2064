#pragma once

#include "plateau/domain.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace plateau {

enum class RunMode { solve, verify, cap, report };

std::string to_string(RunMode mode);

struct RunConfig {
  RunMode mode = RunMode::solve;
  DomainSpec domain = DomainSpec::ball(2, 1.0);
  double sigma = 0.6;
  std::vector<double> eps_schedule{0.1, 0.03, 0.01, 0.003, 0.001};
  int grid_resolution = 64;
  std::uint64_t seed = 20240601;
  std::string output_dir = "plateau-run";
  std::int64_t n_samples = 100000;
  std::vector<int> dims_to_sweep{2, 3, 4, 5, 6, 7, 8};
  double N = 3.0 + 2.0 * 1.7320508075688772;
  double fault_eps_scale = 1.0;
};

bool operator==(const RunConfig& a, const RunConfig& b);

/// Parses and validates a JSON run configuration, filling defaults.
/// Throws ConfigError naming the offending field.
RunConfig parse_config(const std::string& document);
RunConfig load_config(const std::string& path);

/// Canonical JSON form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Throws ConfigError if a field is out of range.
void validate_config(const RunConfig& config);

}  // namespace plateau
