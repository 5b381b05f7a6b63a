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

#ifndef EYM_RUNNER_HPP
#define EYM_RUNNER_HPP

#include <iosfwd>
#include <optional>

#include "eym/config.hpp"
#include "eym/diagnostics.hpp"
#include "eym/wong.hpp"

namespace eym::cli {

// Process exit codes shared by the library and the binary.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBlowup = 3;
inline constexpr int kExitIo = 4;

/// Everything a run needs, constructed and validated from a config:
/// constraint-consistent initial data, the resolved time step, and the
/// optional loop tracer / particle.
struct BuiltScenario {
  fluid::CoupledState state;
  fluid::SystemParams params;
  fluid::EquationOfState eos;
  double dt = 0.0;
  bool gauge_only = false;  // ym_vacuum: only (A, E) evolve
  std::optional<diag::LoopTracer> loop;
  std::optional<wong::WongState> particle;
  std::optional<wong::Background> background;
};

// Builds fields from the preset and mode list, solves the electric field
// against the constraint, resolves dt. Throws ConfigError on any violation.
BuiltScenario build_initial_state(const ScenarioConfig& cfg);

// Full scenario run with diagnostics/snapshot output. Returns an exit code;
// `log` receives the summary (and the blow-up report, if any).
int run_scenario(const ScenarioConfig& cfg, std::ostream& log);

}  // namespace eym::cli

#endif  // EYM_RUNNER_HPP
