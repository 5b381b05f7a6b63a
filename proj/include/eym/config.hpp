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

#ifndef EYM_CONFIG_HPP
#define EYM_CONFIG_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eym/eos.hpp"

namespace eym::cli {

/// Thrown by parse_config with every violation found, not just the first.
struct ConfigError : std::runtime_error {
  explicit ConfigError(std::vector<std::string> violations_);
  std::vector<std::string> violations;
};

struct ModeSpec {
  std::string field;  // rho | s | v | Q | A | A0 | E
  int component = 0;  // form component for v / A / E
  int lie = 0;
  std::array<int, 3> wavevector{0, 0, 0};
  double amplitude = 0.0;
  double phase = 0.0;
};

struct InitialConfig {
  std::string preset = "quiet";  // quiet|acoustic|taylor_green|charged_blob|random_smooth
  double rho0 = 1.0;
  double s0 = 0.0;
  double epsilon = 1e-4;              // acoustic
  std::array<int, 3> wavevector{1, 0, 0};
  double amplitude = 1.0;             // taylor_green / charged_blob
  double width = 1.0;                 // charged_blob
  int kmax = 2;                       // random_smooth
  double v_amp = 0.0, rho_amp = 0.0, s_amp = 0.0, q_amp = 0.0, a_amp = 0.0,
         e_amp = 0.0;                 // random_smooth
  std::vector<ModeSpec> modes;
};

struct LoopConfig {
  std::array<double, 3> center{0, 0, 0};
  double radius = 1.0;
  int points = 256;
};

struct WongConfig {
  double mass = 1.0;
  std::vector<double> charge;  // algebra coefficients; scalar accepted for u1
  std::array<double, 3> x0{0, 0, 0};
  std::array<double, 3> u0{0, 0, 0};
  std::string interpolation = "trig";  // trig | cubic
};

struct OutputConfig {
  std::string directory = "out";
  int cadence_diagnostics = 1;
  int cadence_snapshots = 0;  // 0 = never
};

struct ScenarioConfig {
  std::string system;  // euler|euler_maxwell|eym_compressible|eym_incompressible|ym_vacuum|wong
  std::string algebra = "u1";
  int dim = 2;
  std::array<int, 3> n{32, 32, 32};
  std::array<double, 3> lengths;  // defaults to 2*pi each
  std::optional<double> dt;
  std::optional<double> cfl;  // mutually exclusive with dt
  double cfl_constant = 0.4;
  int steps = 0;
  fluid::EquationOfState eos;
  bool dealias = true;
  std::uint64_t seed = 0;
  double q_over_m = 1.0;  // euler_maxwell
  InitialConfig initial;
  std::optional<LoopConfig> loop;
  std::optional<WongConfig> wong;
  OutputConfig output;
};

// Parse and validate one JSON document. Unknown keys are rejected at every
// level; all violations are collected before throwing.
ScenarioConfig parse_config(const std::string& text);

// Canonical re-emission; parse(canonical_json(c)) reproduces c.
std::string canonical_json(const ScenarioConfig& cfg);

}  // namespace eym::cli

#endif  // EYM_CONFIG_HPP
