#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nsac/coupling.hpp"
#include "nsac/params.hpp"

namespace nsac {

enum class Scenario { mms, quiescent };
std::string_view to_string(Scenario s);

/// Everything a run needs. Built from a preset, then a key=value file, then
/// command-line overrides, later sources winning.
struct RunConfig {
  MixtureParams params;
  SolverConfig solver;
  int mesh_n = 32;
  Scenario scenario = Scenario::mms;
  MmsForcing mms_forcing = MmsForcing::time_discrete;
  Vec2 gravity{0.0, 0.0};  // G(phi) = phi * gravity; ignored by the mms scenario
  std::string output_dir = "nsac_out";
  int snapshot_every = 0;  // 0 disables snapshots
  std::vector<double> beta_sweep;
  std::vector<AcMethod> sweep_methods{AcMethod::newton, AcMethod::picard};

  bool operator==(const RunConfig&) const = default;
};

/// Bad key, value or missing key. `line` is 0 for command-line overrides.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Keys that must be set by some source: method, dt, mesh_n, t_final.
const std::vector<std::string>& required_keys();

/// Key, default value and one-line description of every accepted key.
struct KeyInfo {
  std::string key;
  std::string default_value;
  std::string description;
};
std::vector<KeyInfo> config_keys();

/// Named presets; the Table 1 rows and the quiescent-interface scenario.
std::vector<std::string> preset_names();
/// Throws ConfigError for unknown names. Returns the preset's key=value lines.
std::map<std::string, std::string> preset_values(std::string_view name);

/// Incremental resolution: apply() any number of sources, then finish().
class ConfigBuilder {
 public:
  ConfigBuilder();
  void apply_preset(std::string_view name);
  /// Parses key=value lines. Blank lines and '#' comments are ignored.
  /// Numbers may be written as fractions a/b.
  void apply_text(std::string_view text, const std::string& source = "config");
  void apply_file(const std::string& path);
  void apply_override(const std::string& key, const std::string& value);
  /// Checks required keys and cross-field constraints.
  RunConfig finish() const;

 private:
  void set(const std::string& key, const std::string& value, int line, const std::string& source);
  RunConfig config_;
  std::map<std::string, bool> seen_;
};

/// Convenience wrapper: preset (may be empty), then file (may be empty), then overrides.
RunConfig parse_config(const std::string& preset, const std::string& file,
                       const std::map<std::string, std::string>& overrides);

/// Writes every key so that parsing the output reproduces `config`.
void write_config(std::ostream& out, const RunConfig& config);

/// Parses "a", "a/b" or "a.bc" style reals; throws std::invalid_argument.
double parse_real(std::string_view text);
/// Comma separated list of reals.
std::vector<double> parse_real_list(std::string_view text);

/// Shortest decimal text that reads back to exactly `v`; "nan" for NaN.
std::string format_exact(double v);
/// 17 significant digits, locale independent; "nan" for NaN.
std::string format_17(double v);

}  // namespace nsac
