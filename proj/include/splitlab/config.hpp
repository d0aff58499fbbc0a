#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "splitlab/families.hpp"

namespace splitlab {

/// Raised for anything the user has to fix in the invocation (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string command;
  std::string law = "gaussian:1";
  std::string family = "argmin:identity";
  std::string rule = "ladder-desc";
  std::vector<double> p = {0.1, 0.3};
  std::vector<double> v = {0.5, 0.9, 1.0};
  std::size_t horizon = 12;
  std::size_t n = 10;  // arcsine walk length
  std::size_t trials = 10000;
  std::size_t buffer = 4;
  std::size_t depth = 4;
  double alpha = 0.01;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string ties = "auto";  // auto | flag | earliest
  std::size_t perm_b = 999;
  std::size_t perm_sample = 1000;
  std::size_t max_witnesses = 8;
  std::string out;           // report path, stdout when empty
  std::string dump_samples;  // split-stats CSV path
  bool timing = false;

  // replay
  std::string report;
  std::string check;
  std::vector<double> window;
  std::int64_t start_index = 0;
  std::optional<std::int64_t> m, k, l;  // witness indices; n is reused
};

/// The subcommands run_suite understands.
const std::vector<std::string>& known_commands();

/// Throws ConfigError on any out-of-domain field.
void validate(const ExperimentConfig& cfg);

/// "auto" resolves to flag for diffuse laws and earliest otherwise.
TiePolicy resolve_ties(const ExperimentConfig& cfg);

}  // namespace splitlab
