#pragma once

#include "splitlab/config.hpp"
#include "splitlab/report.hpp"

namespace splitlab {

/// Validates the config and runs the named suite. Throws ConfigError for
/// invalid input (unknown family, law, rule, out-of-domain numbers) and
/// std::runtime_error for I/O failures.
RunReport run_suite(const ExperimentConfig& cfg);

}  // namespace splitlab
