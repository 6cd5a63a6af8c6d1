#include "plot.hpp"

#include <fmt/format.h>
#include <fmt/os.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "report.hpp"

namespace cbolab::cli {

namespace {

double cell(const std::string& text, const std::filesystem::path& path) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) throw std::runtime_error(fmt::format("{}: bad number '{}'", path.string(), text));
  return x;
}

CsvTable nonempty(const std::filesystem::path& path) {
  auto table = read_csv(path);
  if (table.rows.empty()) throw std::runtime_error(path.string() + " has no rows");
  return table;
}

}  // namespace

std::vector<std::filesystem::path> emit_plot_data(const std::filesystem::path& run_dir) {
  const auto decay_csv = run_dir / "decay.csv";
  const auto scaling_csv = run_dir / "scaling.csv";
  const bool has_decay = std::filesystem::exists(decay_csv);
  const bool has_scaling = std::filesystem::exists(scaling_csv);
  if (!has_decay && !has_scaling)
    throw std::runtime_error(fmt::format("{}: no decay.csv or scaling.csv", run_dir.string()));

  std::vector<std::filesystem::path> written;
  std::string script = "set terminal pngcairo size 900,600\n";

  if (has_decay) {
    const auto table = nonempty(decay_csv);
    const auto t = table.column("t");
    const auto w = table.column("w2_sq");
    const auto out_path = run_dir / "decay.dat";
    auto out = fmt::output_file(out_path.string());
    out.print("# t w2_sq\n");
    for (const auto& row : table.rows) out.print("{} {}\n", num(cell(row.at(t), decay_csv)), num(cell(row.at(w), decay_csv)));
    out.close();
    written.push_back(out_path);
    script +=
        "set output 'decay.png'\n"
        "set logscale y\nset xlabel 't'\nset ylabel 'W2^2'\n"
        "plot 'decay.dat' using 1:2 with lines title 'W2^2 to v*'\n"
        "unset logscale\n";
  }

  if (has_scaling) {
    const auto table = nonempty(scaling_csv);
    const auto n = table.column("N");
    const auto e = table.column("error");
    const auto out_path = run_dir / "scaling.dat";
    auto out = fmt::output_file(out_path.string());
    out.print("# log_N log_error\n");
    for (const auto& row : table.rows) {
      const double size = cell(row.at(n), scaling_csv);
      const double err = cell(row.at(e), scaling_csv);
      if (size > 0.0 && err > 0.0) out.print("{} {}\n", num(std::log(size)), num(std::log(err)));
    }
    out.close();
    written.push_back(out_path);
    script +=
        "set output 'scaling.png'\n"
        "set xlabel 'log N'\nset ylabel 'log error'\n"
        "f(x) = a + b * x\nfit f(x) 'scaling.dat' using 1:2 via a, b\n"
        "plot 'scaling.dat' using 1:2 with linespoints title 'coupling error', "
        "f(x) title sprintf('slope %.3f', b)\n";
  }

  const auto script_path = run_dir / "plot.gp";
  auto out = fmt::output_file(script_path.string());
  out.print("{}", script);
  out.close();
  written.push_back(script_path);
  return written;
}

}  // namespace cbolab::cli
