#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cbolab::cli {

enum class Experiment {
  optimize,
  pde_run,
  positivity,
  confinement_1d,
  mfl_scaling,
  decay_fit,
  assumptions_check,
  lemma_check,
  success_prob,
};

std::string to_string(Experiment e);

// Fully resolved key -> value map. Every known key is present (defaults
// filled in); lookups convert on demand and throw ConfigError naming the key.
class Config {
 public:
  // Reads an INI file, then applies `overrides` ("key=value"), which win over
  // the file. Unknown keys, malformed lines and bad values are ConfigErrors.
  static Config load(const std::string& path, const std::vector<std::string>& overrides = {});
  static Config from_text(const std::string& text, const std::vector<std::string>& overrides = {});

  Experiment experiment() const;

  const std::string& text(const std::string& key) const;
  double real(const std::string& key) const;
  long long integer(const std::string& key) const;
  std::size_t count(const std::string& key) const;  // integer >= 0
  std::uint64_t seed() const;
  bool flag(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;  // comma separated
  std::vector<std::size_t> counts(const std::string& key) const;

  void set(const std::string& key, const std::string& value);  // key must exist

  // INI text of all keys, grouped by section, sorted.
  std::string resolved() const;

  const std::map<std::string, std::string>& entries() const noexcept { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace cbolab::cli
