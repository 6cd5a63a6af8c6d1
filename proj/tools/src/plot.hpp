#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cbolab::cli {

// Converts the standard CSVs of a run directory into whitespace separated
// data files plus a gnuplot script (plot.gp); returns the files written.
// decay.csv -> decay.dat (t, W2^2), scaling.csv -> scaling.dat (log N, log err).
// Throws std::runtime_error when neither CSV exists or one is empty.
std::vector<std::filesystem::path> emit_plot_data(const std::filesystem::path& run_dir);

}  // namespace cbolab::cli
