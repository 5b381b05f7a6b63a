// Copyright 2026 The eymflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "eym/checks.hpp"
#include "eym/runner.hpp"
#include "eym/snapshot.hpp"

namespace {

int load_and_run(const std::string& path, const std::string& expected_system) {
  std::ifstream is(path);
  if (!is) {
    std::cerr << "cannot read config file: " << path << "\n";
    return eym::cli::kExitIo;
  }
  std::stringstream ss;
  ss << is.rdbuf();
  try {
    auto cfg = eym::cli::parse_config(ss.str());
    if (!expected_system.empty() && cfg.system != expected_system) {
      std::cerr << "config system is \"" << cfg.system << "\", expected \""
                << expected_system << "\"\n";
      return eym::cli::kExitConfig;
    }
    return eym::cli::run_scenario(cfg, std::cout);
  } catch (const eym::cli::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return eym::cli::kExitConfig;
  } catch (const eym::cli::IoError& e) {
    std::cerr << e.what() << "\n";
    return eym::cli::kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return eym::cli::kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eymflow: structure-verifying simulator for gauge-charged ideal fluids"};
  app.require_subcommand(1);

  std::string run_config, wong_config;
  auto* run_cmd = app.add_subcommand("run", "run a scenario from a JSON config");
  run_cmd->add_option("config", run_config, "path to the config file")->required();

  auto* wong_cmd =
      app.add_subcommand("wong", "integrate a charged particle in a background field");
  wong_cmd->add_option("config", wong_config, "path to the config file")->required();

  bool verbose = false, flip = false;
  auto* check_cmd = app.add_subcommand("check", "run the bundled invariant checks");
  check_cmd->add_flag("--verbose", verbose, "print residual magnitudes");
  check_cmd
      ->add_flag("--flip-codiff-sign", flip,
                 "test fixture: corrupt the codifferential sign")
      ->group("");  // hidden

  CLI11_PARSE(app, argc, argv);

  if (run_cmd->parsed()) return load_and_run(run_config, "");
  if (wong_cmd->parsed()) return load_and_run(wong_config, "wong");
  eym::cli::CheckOptions opts;
  opts.verbose = verbose;
  opts.flip_codiff_sign = flip;
  return eym::cli::check_main(opts, std::cout);
}
