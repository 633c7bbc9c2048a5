// SPDX-License-Identifier: Apache-2.0
#include "sdrkdg/config.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <sstream>

namespace sdrkdg {

const char* to_string(Command c) {
  switch (c) {
    case Command::accuracy: return "accuracy";
    case Command::regularity: return "regularity";
    case Command::stability: return "stability";
    case Command::cfl: return "cfl";
    case Command::prop_tests: return "prop-tests";
  }
  return "?";
}

Command parse_command(const std::string& text) {
  if (text == "accuracy") return Command::accuracy;
  if (text == "regularity") return Command::regularity;
  if (text == "stability") return Command::stability;
  if (text == "cfl") return Command::cfl;
  if (text == "prop-tests" || text == "prop_tests") return Command::prop_tests;
  throw ConfigError(ConfigIssue::bad_value, "command", "unknown command '" + text + "'");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& key, const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError(ConfigIssue::bad_value, key, "empty list entry for '" + key + "'");
    out.push_back(item);
  }
  if (out.empty()) throw ConfigError(ConfigIssue::bad_value, key, "empty value for '" + key + "'");
  return out;
}

[[noreturn]] void bad(const std::string& key, const std::string& value) {
  throw ConfigError(ConfigIssue::bad_value, key, "invalid value '" + value + "' for '" + key + "'");
}

long long to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &used);
  } catch (const std::exception&) {
    bad(key, v);
  }
  if (used != v.size()) bad(key, v);
  return x;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    bad(key, v);
  }
  if (used != v.size()) bad(key, v);
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad(key, v);
}

// Collapses one source into a map, rejecting repeated keys with different values.
std::map<std::string, std::string> collapse(const KeyValues& kv) {
  const auto& keys = config_keys();
  std::map<std::string, std::string> out;
  for (const auto& [key, value] : kv) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError(ConfigIssue::unknown_key, key, "unknown config key '" + key + "'");
    auto [it, inserted] = out.emplace(key, value);
    if (!inserted && it->second != value)
      throw ConfigError(ConfigIssue::conflict, key,
                        "conflicting values for '" + key + "': '" + it->second + "' vs '" + value + "'");
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "command", "r",  "k",    "variant", "dim",         "N",    "perturb", "seed", "T",   "tau_rule",
      "tau",     "cfl", "m",   "flat",    "output",      "quad_points", "form", "raw"};
  return keys;
}

KeyValues parse_key_values(const std::string& text) {
  static const std::regex key_re(R"((^|[,;\s])\s*([A-Za-z_][A-Za-z0-9_]*)\s*=)");
  KeyValues out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    std::vector<std::smatch> hits;
    for (auto it = std::sregex_iterator(line.begin(), line.end(), key_re); it != std::sregex_iterator(); ++it)
      hits.push_back(*it);
    if (hits.empty() || !trim(line.substr(0, static_cast<std::size_t>(hits[0].position(0)))).empty())
      throw ConfigError(ConfigIssue::bad_value, "", "expected key = value, got '" + trim(line) + "'");
    for (std::size_t i = 0; i < hits.size(); ++i) {
      const auto start = static_cast<std::size_t>(hits[i].position(0) + hits[i].length(0));
      const auto stop = i + 1 < hits.size() ? static_cast<std::size_t>(hits[i + 1].position(0)) : line.size();
      std::string value = trim(line.substr(start, stop - start));
      while (!value.empty() && (value.back() == ',' || value.back() == ';')) value = trim(value.substr(0, value.size() - 1));
      const std::string key = hits[i][2].str();
      if (value.empty()) throw ConfigError(ConfigIssue::bad_value, key, "empty value for '" + key + "'");
      out.emplace_back(key, value);
    }
  }
  return out;
}

RunConfig parse_config(const std::string& text, const KeyValues& overrides) {
  std::map<std::string, std::string> kv = collapse(parse_key_values(text));
  for (const auto& [key, value] : collapse(overrides)) kv[key] = value;

  if (!kv.count("command"))
    throw ConfigError(ConfigIssue::missing_command, "command", "no command given (accuracy, regularity, stability, cfl, prop-tests)");

  RunConfig c;
  for (const auto& [key, v] : kv) {
    if (key == "command") {
      c.command = parse_command(v);
    } else if (key == "r") {
      for (const auto& s : split_list(key, v)) c.r.push_back(static_cast<int>(to_int(key, s)));
    } else if (key == "k") {
      c.k = static_cast<int>(to_int(key, v));
    } else if (key == "variant") {
      if (v == "standard" || v == "rkdg") c.variant = VariantSelect::standard;
      else if (v == "sdA" || v == "sda") c.variant = VariantSelect::sdA;
      else if (v == "both") c.variant = VariantSelect::both;
      else bad(key, v);
    } else if (key == "dim") {
      c.dim = static_cast<int>(to_int(key, v));
      if (c.dim != 1 && c.dim != 2) bad(key, v);
    } else if (key == "N") {
      for (const auto& s : split_list(key, v)) {
        const long long n = to_int(key, s);
        if (n < 2) bad(key, s);
        c.N.push_back(static_cast<std::size_t>(n));
      }
    } else if (key == "perturb") {
      c.perturb = to_double(key, v);
      if (c.perturb < 0.0 || c.perturb >= 0.5) bad(key, v);
    } else if (key == "seed") {
      const long long s = to_int(key, v);
      if (s < 0) bad(key, v);
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "T") {
      c.T = to_double(key, v);
      if (c.T < 0.0) bad(key, v);
    } else if (key == "tau_rule") {
      if (v == "paper") c.tau_rule = TauRule::paper;
      else if (v == "fixed") c.tau_rule = TauRule::fixed;
      else if (v == "cfl") c.tau_rule = TauRule::cfl;
      else bad(key, v);
    } else if (key == "tau") {
      c.tau = to_double(key, v);
      if (!(c.tau > 0.0)) bad(key, v);
    } else if (key == "cfl") {
      for (const auto& s : split_list(key, v)) {
        const double x = to_double(key, s);
        if (x < 0.0) bad(key, s);
        c.cfl.push_back(x);
      }
    } else if (key == "m") {
      c.m = static_cast<int>(to_int(key, v));
      if (c.m < 1) bad(key, v);
    } else if (key == "flat") {
      if (v != "r" && v != "r+1" && to_int(key, v) < 2) bad(key, v);
      c.flat = v;
    } else if (key == "output") {
      c.output = v;
    } else if (key == "quad_points") {
      c.quad_points = static_cast<int>(to_int(key, v));
      if (c.quad_points < 0) bad(key, v);
    } else if (key == "form") {
      if (v == "compact") c.form = StepForm::compact;
      else if (v == "butcher") c.form = StepForm::butcher;
      else bad(key, v);
    } else if (key == "raw") {
      c.raw = to_bool(key, v);
    }
  }

  // Time-step rule: an explicit tau or cfl picks the rule unless it contradicts one given.
  const bool has_rule = kv.count("tau_rule") > 0;
  const bool timed = c.command == Command::accuracy || c.command == Command::regularity;
  if (timed) {
    if (kv.count("tau") && kv.count("cfl"))
      throw ConfigError(ConfigIssue::conflict, "tau", "tau and cfl both fix the time step");
    if (kv.count("tau")) {
      if (has_rule && c.tau_rule != TauRule::fixed)
        throw ConfigError(ConfigIssue::conflict, "tau", "tau given but tau_rule is not 'fixed'");
      c.tau_rule = TauRule::fixed;
    }
    if (kv.count("cfl")) {
      if (has_rule && c.tau_rule != TauRule::cfl)
        throw ConfigError(ConfigIssue::conflict, "cfl", "cfl given but tau_rule is not 'cfl'");
      if (c.cfl.size() != 1) throw ConfigError(ConfigIssue::bad_value, "cfl", "accuracy runs take a single cfl");
      c.tau_rule = TauRule::cfl;
    }
    if (c.tau_rule == TauRule::fixed && !kv.count("tau"))
      throw ConfigError(ConfigIssue::conflict, "tau_rule", "tau_rule=fixed needs tau");
    if (c.tau_rule == TauRule::cfl && !kv.count("cfl"))
      throw ConfigError(ConfigIssue::conflict, "tau_rule", "tau_rule=cfl needs cfl");
  }
  if (c.perturb > 0.0 && c.dim == 2)
    throw ConfigError(ConfigIssue::conflict, "perturb", "perturbed meshes are 1D only");
  if (c.command == Command::regularity && kv.count("perturb") && c.perturb > 0.0)
    throw ConfigError(ConfigIssue::conflict, "perturb", "regularity runs use uniform meshes");
  if (c.command == Command::cfl && kv.count("dim") && c.dim != 1)
    throw ConfigError(ConfigIssue::conflict, "dim", "the Fourier CFL analysis is 1D");
  return resolve(std::move(c));
}

RunConfig resolve(RunConfig c) {
  if (c.r.empty()) {
    if (c.command == Command::cfl) c.r = {2, 3, 4, 5, 6, 7, 8};
    else c.r = {2};
  }
  for (int r : c.r)
    if (r < 1) throw ConfigError(ConfigIssue::bad_value, "r", "r must be >= 1");
  if (c.k && *c.k < 0) throw ConfigError(ConfigIssue::bad_value, "k", "k must be >= 0");
  if (c.N.empty()) {
    switch (c.command) {
      case Command::accuracy: c.N = {20, 40, 80, 160, 320}; break;
      case Command::regularity: c.N = {80, 160, 320, 640, 1280}; break;
      case Command::stability: c.N = {c.dim == 1 ? std::size_t{32} : std::size_t{8}}; break;
      default: break;
    }
  }
  if (c.command == Command::stability && c.cfl.empty()) c.cfl = {0.05, 0.1, 0.15, 0.2};
  return c;
}

std::string RunConfig::echo() const {
  std::ostringstream os;
  os.precision(17);
  os << "command=" << to_string(command) << "; r=" << join(r);
  os << "; k=" << (k ? std::to_string(*k) : std::string("r-1"));
  os << "; variant=" << (variant == VariantSelect::standard ? "standard" : variant == VariantSelect::sdA ? "sdA" : "both");
  os << "; dim=" << dim << "; N=" << join(N) << "; perturb=" << perturb << "; seed=" << seed << "; T=" << T;
  os << "; tau_rule=" << (tau_rule == TauRule::paper ? "paper" : tau_rule == TauRule::fixed ? "fixed" : "cfl");
  os << "; tau=" << tau << "; cfl=" << join(cfl) << "; m=" << m << "; flat=" << flat;
  os << "; output=" << output << "; quad_points=" << quad_points;
  os << "; form=" << (form == StepForm::compact ? "compact" : "butcher") << "; raw=" << (raw ? "true" : "false");
  return os.str();
}

}  // namespace sdrkdg
