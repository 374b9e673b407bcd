#include "rsma/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace rsma {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

double to_double(const std::string& v) {
  double x = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size() || !std::isfinite(x))
    throw DomainError("expected a number, got '" + v + "'");
  return x;
}

long long to_int(const std::string& v) {
  long long x = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) throw DomainError("expected an integer, got '" + v + "'");
  return x;
}

int to_small_int(const std::string& v) {
  const long long x = to_int(v);
  if (x < -1000000000LL || x > 1000000000LL) throw DomainError("integer out of range: '" + v + "'");
  return static_cast<int>(x);
}

std::vector<Scheme> to_schemes(const std::string& v) {
  std::vector<Scheme> out;
  for (const auto& s : split_list(v)) out.push_back(scheme_from_string(s));
  if (out.empty()) throw DomainError("scheme list is empty");
  return out;
}

using Setter = std::function<void(ScenarioConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"scenario.coverage_radius", [](ScenarioConfig& c, const std::string& v) { c.scenario.coverage_radius = to_double(v); }},
      {"scenario.altitude", [](ScenarioConfig& c, const std::string& v) { c.scenario.altitude = to_double(v); }},
      {"scenario.min_distance", [](ScenarioConfig& c, const std::string& v) { c.scenario.min_distance = to_double(v); }},
      {"scenario.clusters", [](ScenarioConfig& c, const std::string& v) { c.scenario.clusters = to_small_int(v); }},
      {"scenario.users", [](ScenarioConfig& c, const std::string& v) { c.scenario.users = to_small_int(v); }},
      {"scenario.eves", [](ScenarioConfig& c, const std::string& v) { c.scenario.eves = to_small_int(v); }},
      {"scenario.antennas", [](ScenarioConfig& c, const std::string& v) { c.scenario.antennas = to_small_int(v); }},
      {"scenario.eve_antennas", [](ScenarioConfig& c, const std::string& v) { c.scenario.eve_antennas = to_small_int(v); }},
      {"scenario.max_users_per_cluster",
       [](ScenarioConfig& c, const std::string& v) { c.scenario.max_users_per_cluster = to_small_int(v); }},
      {"scenario.path_loss.los_exponent",
       [](ScenarioConfig& c, const std::string& v) { c.scenario.path_loss.los_exponent = to_double(v); }},
      {"scenario.path_loss.nlos_exponent",
       [](ScenarioConfig& c, const std::string& v) { c.scenario.path_loss.nlos_exponent = to_double(v); }},
      {"scenario.path_loss.lambda1", [](ScenarioConfig& c, const std::string& v) { c.scenario.path_loss.lambda1 = to_double(v); }},
      {"scenario.path_loss.lambda2", [](ScenarioConfig& c, const std::string& v) { c.scenario.path_loss.lambda2 = to_double(v); }},
      {"outage.eps_cop", [](ScenarioConfig& c, const std::string& v) { c.outage.eps_cop = to_double(v); }},
      {"outage.eps_sop", [](ScenarioConfig& c, const std::string& v) { c.outage.eps_sop = to_double(v); }},
      {"outage.noise_db", [](ScenarioConfig& c, const std::string& v) { c.outage.sigma_m_sq = std::pow(10.0, to_double(v) / 10.0); }},
      {"outage.eve_noise_db",
       [](ScenarioConfig& c, const std::string& v) { c.outage.sigma_e_sq = std::pow(10.0, to_double(v) / 10.0); }},
      {"power.total_db", [](ScenarioConfig& c, const std::string& v) { c.power_db = to_double(v); }},
      {"solver.T_max", [](ScenarioConfig& c, const std::string& v) { c.solver.T_max = to_small_int(v); }},
      {"solver.Q_max", [](ScenarioConfig& c, const std::string& v) { c.solver.Q_max = to_small_int(v); }},
      {"solver.delta_I", [](ScenarioConfig& c, const std::string& v) { c.solver.delta_I = to_double(v); }},
      {"solver.epsilon", [](ScenarioConfig& c, const std::string& v) { c.solver.epsilon = to_double(v); }},
      {"solver.subproblem_tol", [](ScenarioConfig& c, const std::string& v) { c.solver.subproblem_tol = to_double(v); }},
      {"solver.max_step_halvings",
       [](ScenarioConfig& c, const std::string& v) { c.solver.max_step_halvings = to_small_int(v); }},
      {"solver.rate_rule", [](ScenarioConfig& c, const std::string& v) { c.solver.rate_rule = rate_rule_from_string(v); }},
      {"run.trials", [](ScenarioConfig& c, const std::string& v) { c.trials = to_small_int(v); }},
      {"run.seed",
       [](ScenarioConfig& c, const std::string& v) {
         const long long s = to_int(v);
         if (s < 0) throw DomainError("seed must be non-negative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"run.threads", [](ScenarioConfig& c, const std::string& v) { c.threads = to_small_int(v); }},
      {"run.schemes", [](ScenarioConfig& c, const std::string& v) { c.schemes = to_schemes(v); }},
      {"sweep.name", [](ScenarioConfig& c, const std::string& v) { c.sweep.value().name = v; }},
      {"sweep.parameter", [](ScenarioConfig& c, const std::string& v) { c.sweep.value().parameter = v; }},
      {"sweep.values",
       [](ScenarioConfig& c, const std::string& v) {
         auto& vals = c.sweep.value().values;
         vals.clear();
         for (const auto& x : split_list(v)) vals.push_back(to_double(x));
       }},
      {"sweep.schemes", [](ScenarioConfig& c, const std::string& v) { c.sweep.value().schemes = to_schemes(v); }},
      {"validate.scenarios", [](ScenarioConfig& c, const std::string& v) { c.check.scenarios = to_small_int(v); }},
      {"validate.trials", [](ScenarioConfig& c, const std::string& v) { c.check.trials = to_int(v); }},
      {"validate.resolution", [](ScenarioConfig& c, const std::string& v) { c.check.resolution = to_double(v); }},
  };
  return table;
}

const std::set<std::string>& sections() {
  static const std::set<std::string> s = {"scenario", "scenario.path_loss", "outage", "power", "solver",
                                          "run",      "sweep",              "validate"};
  return s;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_schemes(const std::vector<Scheme>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + to_string(s[i]);
  return out;
}

}  // namespace

bool is_sweep_parameter(const std::string& name) {
  return name == "P" || name == "eps_cop" || name == "eps_sop" || name == "J" || name == "N_e";
}

void SweepSpec::validate() const {
  if (!is_sweep_parameter(parameter)) throw DomainError("sweep parameter must be one of P, eps_cop, eps_sop, J, N_e");
  if (values.empty()) throw DomainError("sweep value list is empty");
  if (schemes.empty()) throw DomainError("sweep scheme list is empty");
  if (parameter == "J" || parameter == "N_e")
    for (double v : values)
      if (v != std::floor(v) || v < (parameter == "J" ? 0 : 1)) throw DomainError("sweep over " + parameter + " needs integer values");
}

void ScenarioConfig::validate() const {
  scenario.validate();
  outage.validate();
  solver.validate();
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (threads < 1) throw DomainError("threads must be >= 1");
  if (schemes.empty()) throw DomainError("scheme list is empty");
  if (!std::isfinite(power_db)) throw DomainError("power must be finite");
  if (check.scenarios < 1 || check.trials < 1) throw DomainError("validate scenarios and trials must be >= 1");
  if (!(check.resolution > 0.0)) throw DomainError("validate resolution must be positive");
  if (sweep) sweep->validate();
  if (scenario.max_users_per_cluster > 4) throw DomainError("max_users_per_cluster above 4 makes the order search intractable");
}

double ScenarioConfig::total_power() const { return std::pow(10.0, power_db / 10.0); }

std::string ScenarioConfig::to_text() const {
  std::ostringstream os;
  os << "[scenario]\n"
     << "coverage_radius = " << fmt(scenario.coverage_radius) << "\n"
     << "altitude = " << fmt(scenario.altitude) << "\n"
     << "min_distance = " << fmt(scenario.min_distance) << "\n"
     << "clusters = " << scenario.clusters << "\n"
     << "users = " << scenario.users << "\n"
     << "eves = " << scenario.eves << "\n"
     << "antennas = " << scenario.antennas << "\n"
     << "eve_antennas = " << scenario.eve_antennas << "\n"
     << "max_users_per_cluster = " << scenario.max_users_per_cluster << "\n\n"
     << "[scenario.path_loss]\n"
     << "los_exponent = " << fmt(scenario.path_loss.los_exponent) << "\n"
     << "nlos_exponent = " << fmt(scenario.path_loss.nlos_exponent) << "\n"
     << "lambda1 = " << fmt(scenario.path_loss.lambda1) << "\n"
     << "lambda2 = " << fmt(scenario.path_loss.lambda2) << "\n\n"
     << "[outage]\n"
     << "eps_cop = " << fmt(outage.eps_cop) << "\n"
     << "eps_sop = " << fmt(outage.eps_sop) << "\n"
     << "noise_db = " << fmt(10.0 * std::log10(outage.sigma_m_sq)) << "\n"
     << "eve_noise_db = " << fmt(10.0 * std::log10(outage.sigma_e_sq)) << "\n\n"
     << "[power]\n"
     << "total_db = " << fmt(power_db) << "\n\n"
     << "[solver]\n"
     << "T_max = " << solver.T_max << "\n"
     << "Q_max = " << solver.Q_max << "\n"
     << "delta_I = " << fmt(solver.delta_I) << "\n"
     << "epsilon = " << fmt(solver.epsilon) << "\n"
     << "subproblem_tol = " << fmt(solver.subproblem_tol) << "\n"
     << "max_step_halvings = " << solver.max_step_halvings << "\n"
     << "rate_rule = " << to_string(solver.rate_rule) << "\n\n"
     << "[run]\n"
     << "trials = " << trials << "\n"
     << "seed = " << seed << "\n"
     << "threads = " << threads << "\n"
     << "schemes = " << join_schemes(schemes) << "\n\n"
     << "[validate]\n"
     << "scenarios = " << check.scenarios << "\n"
     << "trials = " << check.trials << "\n"
     << "resolution = " << fmt(check.resolution) << "\n";
  if (sweep) {
    os << "\n[sweep]\n";
    if (!sweep->name.empty()) os << "name = " << sweep->name << "\n";
    os << "parameter = " << sweep->parameter << "\nvalues = ";
    for (std::size_t i = 0; i < sweep->values.size(); ++i) os << (i ? ", " : "") << fmt(sweep->values[i]);
    os << "\nschemes = " << join_schemes(sweep->schemes) << "\n";
  }
  return os.str();
}

ScenarioConfig parse_config(const std::string& text, const std::string& source) {
  ScenarioConfig cfg;
  std::istringstream is(text);
  std::string raw, section;
  std::set<std::string> seen;
  int line = 0;
  bool sweep_schemes_set = false;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find_first_of("#;");
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(source, line, "malformed section header '" + s + "'");
      section = trim(s.substr(1, s.size() - 2));
      if (!sections().count(section)) throw ConfigError(source, line, "unknown section [" + section + "]");
      if (section == "sweep" && !cfg.sweep) cfg.sweep.emplace();
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(source, line, "expected 'key = value', got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (section.empty()) throw ConfigError(source, line, "key '" + key + "' outside of any section");
    const std::string full = section + "." + key;
    const auto it = setters().find(full);
    if (it == setters().end()) throw ConfigError(source, line, "unknown key '" + key + "' in [" + section + "]");
    if (!seen.insert(full).second) throw ConfigError(source, line, "duplicate key '" + key + "' in [" + section + "]");
    if (value.empty()) throw ConfigError(source, line, "empty value for '" + key + "'");
    try {
      it->second(cfg, value);
    } catch (const DomainError& e) {
      throw ConfigError(source, line, key + ": " + e.what());
    }
    if (full == "sweep.schemes") sweep_schemes_set = true;
  }
  if (cfg.sweep && !sweep_schemes_set) cfg.sweep->schemes = cfg.schemes;
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw ConfigError(source, 0, e.what());
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str(), path);
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& base, const std::string& parameter, double value) {
  ScenarioConfig c = base;
  if (parameter == "P") {
    c.power_db = value;
  } else if (parameter == "eps_cop") {
    c.outage.eps_cop = value;
  } else if (parameter == "eps_sop") {
    c.outage.eps_sop = value;
  } else if (parameter == "J") {
    c.scenario.eves = static_cast<int>(value);
  } else if (parameter == "N_e") {
    c.scenario.eve_antennas = static_cast<int>(value);
  } else {
    throw DomainError("unknown sweep parameter '" + parameter + "'");
  }
  c.sweep.reset();
  c.validate();
  return c;
}

namespace {

struct Preset {
  std::string name;
  std::string description;
  bool base;
  std::function<ScenarioConfig()> config;
  SweepSpec sweep;
};

const std::vector<Preset>& presets() {
  const std::vector<Scheme> all = all_schemes();
  static const std::vector<Preset> table = {
      {"desk", "2 clusters, 8 users (2 scheduled per cluster), 2 eves, N_t=4, 50 trials", true,
       [] { return ScenarioConfig{}; }, {}},
      {"paper", "3 clusters, 100 users (3 scheduled per cluster), 3 eves, N_t=5, 150 trials", true,
       [] {
         ScenarioConfig c;
         c.scenario.clusters = 3;
         c.scenario.users = 100;
         c.scenario.eves = 3;
         c.scenario.antennas = 5;
         c.scenario.max_users_per_cluster = 3;
         c.trials = 150;
         return c;
       },
       {}},
      {"fig4", "convergence: RSMA over total power (use run --convergence)", false, nullptr,
       {"fig4", "P", {80, 90, 100, 110}, {Scheme::RSMA}}},
      {"fig5", "ENST versus number of eves", false, nullptr, {"fig5", "J", {1, 2, 3, 4}, all}},
      {"fig6", "ENST versus COP threshold", false, nullptr, {"fig6", "eps_cop", {0.05, 0.1, 0.2, 0.4}, all}},
      {"fig7", "ENST versus SOP threshold", false, nullptr, {"fig7", "eps_sop", {0.05, 0.1, 0.2, 0.4}, all}},
      {"fig8", "ENST versus total power (dB)", false, nullptr, {"fig8", "P", {80, 90, 100, 110}, all}},
      {"fig9", "ENST versus eve antennas", false, nullptr, {"fig9", "N_e", {1, 2, 3, 4}, all}},
  };
  return table;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  throw ConfigError("preset", 0, "unknown preset '" + name + "'");
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& p : presets()) out.push_back(p.name);
  return out;
}

std::string preset_description(const std::string& name) { return find_preset(name).description; }

bool is_base_preset(const std::string& name) { return find_preset(name).base; }

ScenarioConfig preset_config(const std::string& name) {
  const auto& p = find_preset(name);
  if (!p.base) throw ConfigError("preset", 0, "'" + name + "' is a sweep preset");
  auto c = p.config();
  c.validate();
  return c;
}

SweepSpec preset_sweep(const std::string& name) {
  const auto& p = find_preset(name);
  if (p.base) throw ConfigError("preset", 0, "'" + name + "' is not a sweep preset");
  return p.sweep;
}

}  // namespace rsma
