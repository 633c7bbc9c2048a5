// SPDX-License-Identifier: Apache-2.0
// sdlab: command-line front end for the accuracy, stability and CFL experiments.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sdrkdg/config.hpp"
#include "sdrkdg/harness.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sdrkdg::ConfigError(sdrkdg::ConfigIssue::bad_value, "config", "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sdlab: RKDG / sdA-RKDG numerical lab for linear advection"};
  app.set_version_flag("--version", std::string(sdrkdg::version()));

  std::string config_path;
  std::vector<std::string> settings;
  app.add_option("-c,--config", config_path, "config file of key = value lines");
  app.add_option("-s,--set", settings, "key=value override (repeatable)");
  app.allow_extras(false);

  std::string command;
  std::vector<std::string> positional;
  for (const char* name : {"accuracy", "regularity", "stability", "cfl", "prop-tests"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " command");
    sub->add_option("settings", positional, "key=value overrides");
    sub->add_option("-c,--config", config_path, "config file of key = value lines");
    sub->callback([&command, name] { command = name; });
  }
  app.require_subcommand(0, 1);

  CLI11_PARSE(app, argc, argv);

  try {
    sdrkdg::KeyValues overrides;
    settings.insert(settings.end(), positional.begin(), positional.end());
    for (const std::string& s : settings)
      for (auto& kv : sdrkdg::parse_key_values(s)) overrides.push_back(std::move(kv));

    const std::string text = config_path.empty() ? std::string() : read_file(config_path);
    if (!command.empty()) {
      for (const auto& [key, value] : sdrkdg::parse_key_values(text))
        if (key == "command" && sdrkdg::parse_command(value) != sdrkdg::parse_command(command))
          throw sdrkdg::ConfigError(sdrkdg::ConfigIssue::conflict, "command",
                                    "subcommand '" + command + "' contradicts command=" + value + " in the config file");
      overrides.emplace_back("command", command);
    }
    const sdrkdg::RunConfig cfg = sdrkdg::parse_config(text, overrides);
    return sdrkdg::run(cfg, std::cout, std::cerr).exit_code;
  } catch (const sdrkdg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
