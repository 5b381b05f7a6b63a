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

#ifndef EYM_SNAPSHOT_HPP
#define EYM_SNAPSHOT_HPP

#include <string>

#include "eym/fluid.hpp"

namespace eym::cli {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Snapshot layout: one JSON header line terminated by '\n', then the raw
// little-endian float64 payload of every field in header order, each field
// stored component-major exactly as held in memory. Bit-exact round trip.
void write_snapshot(const std::string& path, const fluid::CoupledState& st);

fluid::CoupledState read_snapshot(const std::string& path, bool dealias = true);

}  // namespace eym::cli

#endif  // EYM_SNAPSHOT_HPP
