#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"

namespace cbolab::cli {

struct RunContext {
  const Config& config;
  std::filesystem::path output;
  int workers = 1;
};

struct Outcome {
  std::vector<std::string> summary;  // lines for summary.txt
  bool assertions_hold = true;
};

// Runs the configured experiment, writing its CSVs into ctx.output.
Outcome run_experiment(const RunContext& ctx);

}  // namespace cbolab::cli
