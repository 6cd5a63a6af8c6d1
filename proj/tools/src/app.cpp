#include "app.hpp"

#include <CLI11.hpp>
#include <fmt/chrono.h>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <chrono>
#include <filesystem>
#include <fstream>

#include "cbolab/error.hpp"
#include "config.hpp"
#include "experiments.hpp"
#include "plot.hpp"

namespace cbolab::cli {

namespace {

struct RunArgs {
  std::string positional;
  std::string config;
  std::vector<std::string> overrides;
  std::string output;
  int workers = 1;
  bool check = false;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << text;
}

int run(const RunArgs& args, std::ostream& out, std::ostream& err) {
  if (!args.positional.empty() && !args.config.empty() && args.positional != args.config) {
    err << "error: config given both as argument and --config\n";
    return exit_error;
  }
  const auto& path = args.config.empty() ? args.positional : args.config;
  if (path.empty()) {
    err << "error: no config file (cbolab run <config> or --config <path>)\n";
    return exit_error;
  }
  if (args.workers < 1) {
    err << "error: --workers must be >= 1\n";
    return exit_error;
  }
  try {
    auto config = Config::load(path, args.overrides);
    if (!args.output.empty()) config.set("output_dir", args.output);
    const std::filesystem::path dir = config.text("output_dir");
    if (dir.empty()) throw ConfigError("output_dir must not be empty");
    std::filesystem::create_directories(dir);

    const auto stamp = fmt::format("{:%Y-%m-%dT%H:%M:%SZ}",
                                   std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()));
    write_text(dir / "manifest.cfg", "# written " + stamp + "\n" + config.resolved());

    const auto outcome = run_experiment({config, dir, args.workers});
    std::string summary = fmt::format("experiment {}\nseed {}\n", to_string(config.experiment()), config.seed());
    for (const auto& line : outcome.summary) summary += line + "\n";
    summary += outcome.assertions_hold ? "assertions hold\n" : "assertions FAILED\n";
    write_text(dir / "summary.txt", summary);
    out << summary;
    return args.check && !outcome.assertions_hold ? exit_assertion : exit_ok;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_error;
  }
}

int plot(const std::string& dir, std::ostream& out, std::ostream& err) {
  try {
    for (const auto& p : emit_plot_data(dir)) out << p.string() << '\n';
    return exit_ok;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_error;
  }
}

}  // namespace

int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"consensus-based optimization lab"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "run the experiment described by a config file");
  run_cmd->add_option("config_file", run_args.positional, "config file");
  run_cmd->add_option("--config", run_args.config, "config file");
  run_cmd->add_option("--set", run_args.overrides, "override key=value (repeatable)")->allow_extra_args(false);
  run_cmd->add_option("--output", run_args.output, "output directory (overrides output_dir)");
  run_cmd->add_option("--workers", run_args.workers, "worker threads; results do not depend on it");
  run_cmd->add_flag("--check", run_args.check, "exit 2 when the experiment's assertions fail");

  std::string plot_dir;
  auto* plot_cmd = app.add_subcommand("plot", "emit gnuplot data and script for a run directory");
  plot_cmd->add_option("run_dir", plot_dir, "run directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_error;
  }
  if (run_cmd->parsed()) return run(run_args, out, err);
  return plot(plot_dir, out, err);
}

}  // namespace cbolab::cli
