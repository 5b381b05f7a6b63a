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

#ifndef EYM_EOS_HPP
#define EYM_EOS_HPP

#include <cmath>
#include <stdexcept>

namespace eym::fluid {

/// Polytropic equation of state:
///   e(rho, s) = kappa0 exp(s/c_v) rho^(gamma-1) / (gamma-1),
///   p = rho^2 de/drho = (gamma-1) rho e,   T = de/ds = e / c_v.
struct EquationOfState {
  double gamma = 5.0 / 3.0;
  double kappa0 = 1.0;
  double c_v = 1.0;

  void validate() const {
    if (!(gamma > 1.0)) throw std::invalid_argument("eos: gamma must exceed 1");
    if (!(kappa0 > 0.0)) throw std::invalid_argument("eos: kappa0 must be positive");
    if (!(c_v > 0.0)) throw std::invalid_argument("eos: c_v must be positive");
  }

  double internal_energy(double rho, double s) const {
    return kappa0 * std::exp(s / c_v) * std::pow(rho, gamma - 1.0) / (gamma - 1.0);
  }
  double pressure(double rho, double s) const {
    return (gamma - 1.0) * rho * internal_energy(rho, s);
  }
  double temperature(double rho, double s) const {
    return internal_energy(rho, s) / c_v;
  }
  double sound_speed(double rho, double s) const {
    return std::sqrt(gamma * pressure(rho, s) / rho);
  }
};

}  // namespace eym::fluid

#endif  // EYM_EOS_HPP
