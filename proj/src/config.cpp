#include "nsac/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace nsac {

std::string_view to_string(Scenario s) { return s == Scenario::mms ? "mms" : "quiescent"; }

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_plain(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  return v;
}

int parse_int(std::string_view s) {
  s = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  return v;
}

bool parse_bool(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw std::invalid_argument("not a boolean: '" + std::string(s) + "'");
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> parts;
  s = trim(s);
  if (s.empty()) return parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    parts.push_back(trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

struct Key {
  std::string name;
  std::string description;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

Key real_key(std::string name, std::string description, double MixtureParams::*member) {
  return {std::move(name), std::move(description),
          [member](RunConfig& c, std::string_view v) { c.params.*member = parse_real(v); },
          [member](const RunConfig& c) { return format_exact(c.params.*member); }};
}

const std::vector<Key>& keys() {
  static const std::vector<Key> table = [] {
    std::vector<Key> k;
    k.push_back({"scenario", "mms or quiescent",
                 [](RunConfig& c, std::string_view v) {
                   v = trim(v);
                   if (v == "mms")
                     c.scenario = Scenario::mms;
                   else if (v == "quiescent")
                     c.scenario = Scenario::quiescent;
                   else
                     throw std::invalid_argument("unknown scenario '" + std::string(v) + "'");
                 },
                 [](const RunConfig& c) { return std::string(to_string(c.scenario)); }});
    k.push_back({"method", "Allen-Cahn linearization: fin, fip or sce",
                 [](RunConfig& c, std::string_view v) { c.solver.method = parse_ac_method(trim(v)); },
                 [](const RunConfig& c) { return std::string(to_string(c.solver.method)); }});
    k.push_back(real_key("beta", "stabilization beta >= 0", &MixtureParams::beta));
    k.push_back(real_key("dt", "time step", &MixtureParams::dt));
    k.push_back({"t_final", "end time; the run starts at t = 0",
                 [](RunConfig& c, std::string_view v) { c.solver.t_final = parse_real(v); },
                 [](const RunConfig& c) { return format_exact(c.solver.t_final); }});
    k.push_back({"mesh_n", "cells per side of the uniform mesh",
                 [](RunConfig& c, std::string_view v) { c.mesh_n = parse_int(v); },
                 [](const RunConfig& c) { return std::to_string(c.mesh_n); }});
    k.push_back({"tol_fixed_point", "stopping tolerance on ||dphi|| + ||du||",
                 [](RunConfig& c, std::string_view v) { c.solver.tol_fixed_point = parse_real(v); },
                 [](const RunConfig& c) { return format_exact(c.solver.tol_fixed_point); }});
    k.push_back({"max_fixed_point_iters", "iteration cap per time step",
                 [](RunConfig& c, std::string_view v) { c.solver.max_fixed_point_iters = parse_int(v); },
                 [](const RunConfig& c) { return std::to_string(c.solver.max_fixed_point_iters); }});
    k.push_back(real_key("rho_a", "density of the phi = 1 fluid", &MixtureParams::rho_a));
    k.push_back(real_key("rho_b", "density of the phi = -1 fluid", &MixtureParams::rho_b));
    k.push_back(real_key("mu_a", "viscosity of the phi = 1 fluid", &MixtureParams::mu_a));
    k.push_back(real_key("mu_b", "viscosity of the phi = -1 fluid", &MixtureParams::mu_b));
    k.push_back(real_key("gamma", "mobility", &MixtureParams::gamma));
    k.push_back(real_key("eta", "interface thickness", &MixtureParams::eta));
    k.push_back(real_key("sigma", "mixing-energy density", &MixtureParams::sigma));
    k.push_back(real_key("eps_pressure", "pressure penalization", &MixtureParams::eps_pressure));
    k.push_back({"mms_forcing", "time_discrete or continuous momentum forcing",
                 [](RunConfig& c, std::string_view v) {
                   v = trim(v);
                   if (v == "time_discrete")
                     c.mms_forcing = MmsForcing::time_discrete;
                   else if (v == "continuous")
                     c.mms_forcing = MmsForcing::continuous;
                   else
                     throw std::invalid_argument("unknown mms_forcing '" + std::string(v) + "'");
                 },
                 [](const RunConfig& c) {
                   return std::string(c.mms_forcing == MmsForcing::continuous ? "continuous" : "time_discrete");
                 }});
    for (int c = 0; c < 2; ++c)
      k.push_back({c == 0 ? "gravity_x" : "gravity_y", "body force G(phi) = phi * g, component of g (quiescent only)",
                   [c](RunConfig& r, std::string_view v) { r.gravity[c] = parse_real(v); },
                   [c](const RunConfig& r) { return format_exact(r.gravity[c]); }});
    k.push_back({"output_dir", "directory for reports and snapshots",
                 [](RunConfig& c, std::string_view v) {
                   v = trim(v);
                   if (v.empty()) throw std::invalid_argument("output_dir is empty");
                   c.output_dir = std::string(v);
                 },
                 [](const RunConfig& c) { return c.output_dir; }});
    k.push_back({"snapshot_every", "write a VTK snapshot every N steps (0: never)",
                 [](RunConfig& c, std::string_view v) { c.snapshot_every = parse_int(v); },
                 [](const RunConfig& c) { return std::to_string(c.snapshot_every); }});
    k.push_back({"beta_sweep", "comma separated beta values for the sweep command",
                 [](RunConfig& c, std::string_view v) { c.beta_sweep = parse_real_list(v); },
                 [](const RunConfig& c) {
                   std::string s;
                   for (std::size_t i = 0; i < c.beta_sweep.size(); ++i)
                     s += (i ? "," : "") + format_exact(c.beta_sweep[i]);
                   return s;
                 }});
    k.push_back({"sweep_methods", "comma separated methods for the sweep command",
                 [](RunConfig& c, std::string_view v) {
                   c.sweep_methods.clear();
                   for (auto part : split_commas(v)) c.sweep_methods.push_back(parse_ac_method(part));
                 },
                 [](const RunConfig& c) {
                   std::string s;
                   for (std::size_t i = 0; i < c.sweep_methods.size(); ++i)
                     s += (i ? "," : "") + std::string(to_string(c.sweep_methods[i]));
                   return s;
                 }});
    auto bool_key = [&](std::string name, std::string description, bool MonitorConfig::*member) {
      k.push_back({std::move(name), std::move(description),
                   [member](RunConfig& c, std::string_view v) { c.solver.monitors.*member = parse_bool(v); },
                   [member](const RunConfig& c) { return bool_text(c.solver.monitors.*member); }});
    };
    bool_key("monitor_max_principle", "check max|phi| <= 1 + max_principle_tol", &MonitorConfig::max_principle);
    bool_key("monitor_phase_bounds", "check ||phi|| and ||grad phi|| bounds (unforced runs)",
             &MonitorConfig::phase_bounds);
    bool_key("monitor_velocity_bounds", "check ||u||, ||D(u)||, ||u.grad phi|| bounds (unforced runs)",
             &MonitorConfig::velocity_bounds);
    bool_key("monitor_strict", "abort the run when a monitor fails", &MonitorConfig::strict);
    k.push_back({"max_principle_tol", "tolerance of the max|phi| monitor",
                 [](RunConfig& c, std::string_view v) { c.solver.monitors.max_principle_tol = parse_real(v); },
                 [](const RunConfig& c) { return format_exact(c.solver.monitors.max_principle_tol); }});
    k.push_back({"monitor_slack", "multiplicative slack of the bound monitors (1 + 1e-8 when strict)",
                 [](RunConfig& c, std::string_view v) { c.solver.monitors.slack = parse_real(v); },
                 [](const RunConfig& c) { return format_exact(c.solver.monitors.slack); }});
    return k;
  }();
  return table;
}

const Key* find_key(std::string_view name) {
  for (const auto& k : keys())
    if (k.name == name) return &k;
  return nullptr;
}

}  // namespace

double parse_real(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_plain(text);
  const double num = parse_plain(text.substr(0, slash));
  const double den = parse_plain(text.substr(slash + 1));
  if (den == 0.0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (auto part : split_commas(text)) out.push_back(parse_real(part));
  return out;
}

std::string format_exact(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

const std::vector<std::string>& required_keys() {
  static const std::vector<std::string> req{"method", "dt", "mesh_n", "t_final"};
  return req;
}

std::vector<KeyInfo> config_keys() {
  const RunConfig defaults;
  std::vector<KeyInfo> out;
  for (const auto& k : keys()) {
    const bool required = std::find(required_keys().begin(), required_keys().end(), k.name) != required_keys().end();
    out.push_back({k.name, required ? "(required)" : k.get(defaults), k.description});
  }
  return out;
}

std::vector<std::string> preset_names() {
  return {"paper-table1-fin0", "paper-table1-fin98", "paper-table1-fip0", "paper-table1-fip2",
          "paper-table1-sce",  "paper-table1-sce-fine", "quiescent-fin", "quiescent-fip"};
}

std::map<std::string, std::string> preset_values(std::string_view name) {
  // Table 1: 100x100 mesh, phase parameters of the manufactured problem, end time 10/1300.
  std::map<std::string, std::string> base{{"scenario", "mms"}, {"mesh_n", "100"}, {"dt", "1/1300"},
                                          {"t_final", "10/1300"}, {"rho_a", "3"},  {"rho_b", "1"},
                                          {"mu_a", "1"},          {"mu_b", "1"},   {"gamma", "1"},
                                          {"eta", "0.1"},         {"sigma", "1"},  {"eps_pressure", "1e-8"},
                                          {"tol_fixed_point", "1e-9"}};
  auto with = [&](std::initializer_list<std::pair<const std::string, std::string>> extra) {
    auto m = base;
    for (const auto& [k, v] : extra) m[k] = v;
    return m;
  };
  if (name == "paper-table1-fin0") return with({{"method", "fin"}, {"beta", "0"}});
  if (name == "paper-table1-fin98") return with({{"method", "fin"}, {"beta", "9/8"}});
  if (name == "paper-table1-fip0") return with({{"method", "fip"}, {"beta", "0"}});
  if (name == "paper-table1-fip2") return with({{"method", "fip"}, {"beta", "2"}});
  if (name == "paper-table1-sce") return with({{"method", "sce"}, {"beta", "0"}});
  if (name == "paper-table1-sce-fine") return with({{"method", "sce"}, {"beta", "0"}, {"dt", "1/13000"}});
  // Quiescent interface: 20 steps at 0.9 eta^2 / (13 gamma).
  const std::map<std::string, std::string> quiet{{"scenario", "quiescent"}, {"mesh_n", "32"},
                                                 {"dt", "0.009/13"},        {"t_final", "0.18/13"},
                                                 {"eta", "0.1"},            {"gamma", "1"}};
  if (name == "quiescent-fin") {
    auto m = quiet;
    m["method"] = "fin";
    m["beta"] = "9/8";
    return m;
  }
  if (name == "quiescent-fip") {
    auto m = quiet;
    m["method"] = "fip";
    m["beta"] = "2";
    return m;
  }
  std::string known;
  for (const auto& n : preset_names()) known += " " + n;
  throw ConfigError("unknown preset '" + std::string(name) + "'; known:" + known, 0);
}

ConfigBuilder::ConfigBuilder() = default;

void ConfigBuilder::set(const std::string& key, const std::string& value, int line, const std::string& source) {
  const Key* k = find_key(key);
  const std::string where = line > 0 ? source + ":" + std::to_string(line) : source;
  if (!k) throw ConfigError(where + ": unknown key '" + key + "'", line);
  try {
    k->set(config_, value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": bad value for '" + key + "': " + e.what(), line);
  }
  seen_[key] = true;
}

void ConfigBuilder::apply_preset(std::string_view name) {
  for (const auto& [k, v] : preset_values(name)) set(k, v, 0, "preset " + std::string(name));
}

void ConfigBuilder::apply_text(std::string_view text, const std::string& source) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected key=value", line_no);
    set(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), line_no, source);
  }
}

void ConfigBuilder::apply_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'", 0);
  std::ostringstream text;
  text << in.rdbuf();
  apply_text(text.str(), path);
}

void ConfigBuilder::apply_override(const std::string& key, const std::string& value) {
  set(key, value, 0, "option " + key);
}

RunConfig ConfigBuilder::finish() const {
  for (const auto& key : required_keys())
    if (!seen_.count(key)) throw ConfigError("missing required key '" + key + "'", 0);
  RunConfig c = config_;
  if (c.solver.monitors.strict && !seen_.count("monitor_slack")) c.solver.monitors.slack = 1.0 + 1e-8;
  c.solver.mms_enabled = c.scenario == Scenario::mms;
  try {
    c.params.validate();
    c.solver.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), 0);
  }
  if (c.mesh_n < 1) throw ConfigError("mesh_n must be >= 1", 0);
  if (c.snapshot_every < 0) throw ConfigError("snapshot_every must be >= 0", 0);
  if (!(c.solver.monitors.max_principle_tol >= 0.0)) throw ConfigError("max_principle_tol must be >= 0", 0);
  return c;
}

RunConfig parse_config(const std::string& preset, const std::string& file,
                       const std::map<std::string, std::string>& overrides) {
  ConfigBuilder b;
  if (!preset.empty()) b.apply_preset(preset);
  if (!file.empty()) b.apply_file(file);
  for (const auto& [k, v] : overrides) b.apply_override(k, v);
  return b.finish();
}

void write_config(std::ostream& out, const RunConfig& config) {
  for (const auto& k : keys()) out << k.name << '=' << k.get(config) << '\n';
}

}  // namespace nsac
