#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "splitlab/config.hpp"
#include "splitlab/verify.hpp"

namespace splitlab {

inline constexpr const char* kVersion = "0.1.0";

struct CheckResult {
  std::string name;
  Status status = Status::pass;
  std::size_t n_paths = 0;
  std::size_t n_ties = 0;
  std::size_t n_violations = 0;
  std::optional<double> statistic;
  std::optional<double> p_value;
  std::optional<double> alpha;
  std::vector<ViolationWitness> witnesses;
  nlohmann::json details = nlohmann::json::object();
};

struct RunReport {
  ExperimentConfig config;
  std::vector<CheckResult> checks;
  std::optional<double> wall_time_ms;
};

/// 2 for an empty check list, 1 if any check failed, else 0.
int exit_code(const RunReport& r);

nlohmann::json config_to_json(const ExperimentConfig& cfg);
nlohmann::json witness_to_json(const ViolationWitness& w);
/// Throws std::invalid_argument on a malformed witness block.
ViolationWitness witness_from_json(const nlohmann::json& j);
nlohmann::json report_to_json(const RunReport& r);

/// Canonical text: sorted keys, shortest round-trip numbers, one trailing
/// newline.
std::string render_report(const RunReport& r);

/// Writes render_report to path; throws std::runtime_error on I/O failure.
void emit_report(const RunReport& r, const std::string& path);

}  // namespace splitlab
