#include "config.hpp"

#include <boost/program_options.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cbolab/error.hpp"

namespace po = boost::program_options;

namespace cbolab::cli {

namespace {

struct Key {
  const char* name;
  const char* fallback;
};

// Every accepted key and its default.
constexpr Key kKeys[] = {
    {"experiment", "optimize"},
    {"output_dir", "out"},
    {"seed", "0"},

    {"objective.name", "quadratic"},
    {"objective.dim", "2"},

    {"cbo.lambda", "1"},
    {"cbo.sigma", "1"},
    {"cbo.alpha", "10"},
    {"cbo.dt", "0.01"},
    {"cbo.particles", "200"},
    {"cbo.steps", "400"},

    {"initial.kind", "gaussian"},
    {"initial.center", ""},
    {"initial.scale", "1"},

    {"pde.dim", "2"},
    {"pde.L", "8"},
    {"pde.K", "32"},
    {"pde.M", "0"},
    {"pde.center", ""},
    {"pde.form", "cbo_form"},
    {"pde.valpha_mode", "self_consistent"},
    {"pde.frozen_valpha", ""},
    {"pde.horizon", "0.5"},
    {"pde.dt", "0"},
    {"pde.dt_scale", "0.9"},
    {"pde.truncate", "true"},
    {"pde.c_cfl", "2"},
    {"pde.record_every", "10"},
    {"pde.bump_center", ""},
    {"pde.bump_radius", "1"},
    {"pde.bump_edge", "1"},
    {"pde.bump_width", "inf"},

    {"cutoff.R", "0"},
    {"cutoff.n", "0"},
    {"cutoff.h_table", "1e-3"},
    {"cutoff.h_fd", "1e-5"},

    {"coefficients.name", "cbo"},
    {"coefficients.center", ""},

    {"diagnostics.w2_tolerance", "1e-6"},
    {"diagnostics.fit_t0", "-1"},
    {"diagnostics.fit_t1", "-1"},
    {"diagnostics.rate_min", "1"},
    {"diagnostics.rate_max", "2"},
    {"diagnostics.r2_min", "0.95"},
    {"diagnostics.sizes", "64,256,1024,4096"},
    {"diagnostics.reference_size", "16384"},
    {"diagnostics.replicates", "1"},
    {"diagnostics.horizon", "1"},
    {"diagnostics.slope_min", "-1.3"},
    {"diagnostics.slope_max", "-0.7"},
    {"diagnostics.r_exclude", "0.25"},
    {"diagnostics.r_outer", "5"},
    {"diagnostics.positivity_threshold", "1e-12"},
    {"diagnostics.v_star", "0"},
    {"diagnostics.confinement_tolerance", "1e-8"},
    {"diagnostics.samples", "10000"},
    {"diagnostics.radius", "3"},
    {"diagnostics.max_order", "2"},
    {"diagnostics.bound", "inf"},
    {"diagnostics.refine_tolerance", "0.05"},
    {"diagnostics.runs", "100"},
    {"diagnostics.epsilon", "0.25"},
    {"diagnostics.success_min", "0"},
};

const po::options_description& description() {
  static const po::options_description desc = [] {
    po::options_description d;
    for (const auto& k : kKeys) d.add_options()(k.name, po::value<std::string>()->default_value(k.fallback));
    return d;
  }();
  return desc;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

Config parse(std::istream& file, const std::vector<std::string>& overrides) {
  po::variables_map vm;
  try {
    if (!overrides.empty()) {
      std::stringstream lines;
      for (const auto& o : overrides) {
        if (o.find('=') == std::string::npos)
          throw ConfigError("--set expects key=value, got '" + o + "'");
        lines << o << '\n';
      }
      po::store(po::parse_config_file(lines, description(), false), vm);
    }
    po::store(po::parse_config_file(file, description(), false), vm);
    po::notify(vm);
  } catch (const po::error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  Config cfg;
  for (const auto& k : kKeys) cfg.set(k.name, trim(vm[k.name].as<std::string>()));
  cfg.experiment();
  return cfg;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* what) {
  throw ConfigError(key + ": expected " + what + ", got '" + value + "'");
}

double to_real(const std::string& key, const std::string& s) {
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double x = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(x)) bad_value(key, s, "a number");
  return x;
}

long long to_integer(const std::string& key, const std::string& s) {
  long long x = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size()) bad_value(key, s, "an integer");
  return x;
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::optimize: return "optimize";
    case Experiment::pde_run: return "pde-run";
    case Experiment::positivity: return "positivity";
    case Experiment::confinement_1d: return "confinement-1d";
    case Experiment::mfl_scaling: return "mfl-scaling";
    case Experiment::decay_fit: return "decay-fit";
    case Experiment::assumptions_check: return "assumptions-check";
    case Experiment::lemma_check: return "lemma-check";
    case Experiment::success_prob: return "success-prob";
  }
  return "?";
}

Config Config::load(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream file(path);
  if (!file) throw ConfigError("config: cannot open '" + path + "'");
  return parse(file, overrides);
}

Config Config::from_text(const std::string& text, const std::vector<std::string>& overrides) {
  std::istringstream in(text);
  return parse(in, overrides);
}

Experiment Config::experiment() const {
  const auto& name = text("experiment");
  for (auto e : {Experiment::optimize, Experiment::pde_run, Experiment::positivity,
                 Experiment::confinement_1d, Experiment::mfl_scaling, Experiment::decay_fit,
                 Experiment::assumptions_check, Experiment::lemma_check, Experiment::success_prob})
    if (to_string(e) == name) return e;
  bad_value("experiment", name,
            "one of optimize, pde-run, positivity, confinement-1d, mfl-scaling, decay-fit, "
            "assumptions-check, lemma-check, success-prob");
}

const std::string& Config::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("config: unknown key '" + key + "'");
  return it->second;
}

double Config::real(const std::string& key) const { return to_real(key, text(key)); }

long long Config::integer(const std::string& key) const { return to_integer(key, text(key)); }

std::size_t Config::count(const std::string& key) const {
  const long long x = integer(key);
  if (x < 0) bad_value(key, text(key), "a nonnegative integer");
  return static_cast<std::size_t>(x);
}

std::uint64_t Config::seed() const {
  const auto& s = text("seed");
  std::uint64_t x = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size()) bad_value("seed", s, "an unsigned integer");
  return x;
}

bool Config::flag(const std::string& key) const {
  const auto& s = text(key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  bad_value(key, s, "true or false");
}

std::vector<double> Config::reals(const std::string& key) const {
  std::vector<double> out;
  const auto& s = text(key);
  if (s.empty()) return out;
  for (const auto& item : split(s)) out.push_back(to_real(key, item));
  return out;
}

std::vector<std::size_t> Config::counts(const std::string& key) const {
  std::vector<std::size_t> out;
  const auto& s = text(key);
  if (s.empty()) return out;
  for (const auto& item : split(s)) {
    const long long x = to_integer(key, item);
    if (x < 0) bad_value(key, item, "a nonnegative integer");
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}

void Config::set(const std::string& key, const std::string& value) {
  bool known = false;
  for (const auto& k : kKeys) known = known || key == k.name;
  if (!known) throw ConfigError("config: unknown key '" + key + "'");
  values_[key] = value;
}

std::string Config::resolved() const {
  std::ostringstream out;
  // top-level keys first, then one [section] per prefix
  for (const auto& [key, value] : values_)
    if (key.find('.') == std::string::npos) out << key << " = " << value << '\n';
  std::string section;
  for (const auto& [key, value] : values_) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) continue;
    const auto head = key.substr(0, dot);
    if (head != section) {
      section = head;
      out << "\n[" << section << "]\n";
    }
    out << key.substr(dot + 1) << " = " << value << '\n';
  }
  return out.str();
}

}  // namespace cbolab::cli
