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

#ifndef EYM_CHECKS_HPP
#define EYM_CHECKS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace eym::cli {

struct CheckResult {
  std::string name;
  double residual;
  double tolerance;
  bool pass;
};

struct CheckOptions {
  bool verbose = false;
  // Mutation fixture: corrupt the codifferential sign while the checks run,
  // to demonstrate the suite catches a broken adjoint.
  bool flip_codiff_sign = false;
  std::uint64_t seed = 0x5eed2026;
};

// The cross-module invariant suite: algebra identities, exactness and
// curvature identities, adjointness per degree, semidirect duality,
// abelian reductions, and short-run gauge energy conservation.
std::vector<CheckResult> run_invariant_checks(const CheckOptions& opts);

// Prints one pass/fail line per check; exit code 0 iff all pass.
int check_main(const CheckOptions& opts, std::ostream& os);

}  // namespace eym::cli

#endif  // EYM_CHECKS_HPP
